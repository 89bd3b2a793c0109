#include "sfs/slices.hpp"

#include <cmath>

namespace sfs {

SliceMatrices slice_matrices(const Mask& m, int n) {
    const auto c = m.centered();
    if (n <= c.ell + 1)
        throw Error("slice_matrices: n must exceed l+1 = " + std::to_string(c.ell + 1));
    const int min_n = c.odd ? 2 * c.ell - 1 : 2 * c.ell - 2;
    if (n < min_n)
        throw Error("slice_matrices: n too small for the mask stencil (need n >= " +
                    std::to_string(min_n) + ")");

    SliceMatrices out;
    out.n = n;
    out.odd_mask = c.odd;
    out.ell = c.ell;
    out.s1 = Mat(n, n);
    out.s2 = Mat(n, n);
    const int s1_start = c.ell + 1;                        // 1-based row index i
    const int s2_start = c.odd ? n - c.ell + 2 : n - c.ell + 3;
    for (int r = 0; r < n; ++r) {
        for (int j = 1; j <= n; ++j) {
            out.s1(r, j - 1) = m.at(s1_start + r - 2 * j + c.shift);
            out.s2(r, j - 1) = m.at(s2_start + r - 2 * j + c.shift);
        }
    }
    return out;
}

PointSet subdivide_levels(const MaskSequence& masks, const PointSet& p0, int levels) {
    p0.validate();
    if (levels < 0) throw Error("subdivide_levels: levels must be >= 0");
    PointSet cur = p0;
    for (int k = 1; k <= levels; ++k) cur = refine(masks.mask(k), cur);
    return cur;
}

namespace {

double max_adjacent_difference(const PointSet& p) {
    double best = 0.0;
    for (int i = 0; i + 1 < p.size(); ++i)
        best = std::max(best, point_distance(p.point(i), p.point(i + 1)));
    return best;
}

}  // namespace

ConvergenceEstimate c0_convergence_estimate(const MaskSequence& masks, const PointSet& p0,
                                            int levels) {
    if (levels < 2) throw Error("c0_convergence_estimate: need at least 2 levels");
    p0.validate();

    ConvergenceEstimate est;
    std::vector<PointSet> polys;
    polys.push_back(p0);
    for (int k = 1; k <= levels; ++k) polys.push_back(refine(masks.mask(k), polys.back()));

    for (const auto& p : polys) est.max_adjacent_diff.push_back(max_adjacent_difference(p));
    for (size_t k = 0; k + 1 < polys.size(); ++k) {
        est.hausdorff_steps.push_back(hausdorff(polys[k], polys[k + 1]));
        const double prev = est.max_adjacent_diff[k];
        est.delta_ratios.push_back(prev > 0.0 ? est.max_adjacent_diff[k + 1] / prev
                                              : 0.0);
    }

    const size_t nr = est.delta_ratios.size();
    const size_t tail = std::max<size_t>(1, nr / 2);
    double acc = 0.0;
    for (size_t i = nr - tail; i < nr; ++i) acc += est.delta_ratios[i];
    est.mean_tail_delta_ratio = acc / tail;

    const double d_first = est.max_adjacent_diff.front();
    const double d_last = est.max_adjacent_diff.back();
    const double h_first = est.hausdorff_steps.front();
    const double h_last = est.hausdorff_steps.back();

    if (est.mean_tail_delta_ratio < 0.95 && d_last < 0.5 * std::max(d_first, 1e-300)) {
        est.classification = ConvergenceEstimate::Class::C0Like;
    } else if (h_first > 0.0 && h_last < 0.5 * h_first) {
        est.classification = ConvergenceEstimate::Class::HLike;
    } else {
        est.classification = ConvergenceEstimate::Class::Inconclusive;
    }
    return est;
}

const char* to_string(ConvergenceEstimate::Class c) {
    switch (c) {
        case ConvergenceEstimate::Class::C0Like: return "c0-like";
        case ConvergenceEstimate::Class::HLike: return "h-like";
        case ConvergenceEstimate::Class::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

}  // namespace sfs
