#include "sfs/lift.hpp"

#include <cmath>

#include "sfs/rng.hpp"

namespace sfs {

namespace {

void check_nonsingular(const Mat& m, const char* what) {
    const Lu f = lu_factor(m);
    const double scale = hadamard_scale(m);
    if (f.singular || std::fabs(f.det) <= 1e-12 * scale)
        throw Error(std::string(what) + ": singular basis matrix (|det| = " +
                    std::to_string(std::fabs(f.det)) + ", scale = " + std::to_string(scale) + ")");
}

}  // namespace

LiftMatrix LiftMatrix::build_p(const PointSet& p0) {
    p0.validate();
    const int n = p0.size();
    const int m = p0.dim();
    if (n <= m + 1)
        throw Error("build_p: need n > m+1 control points (got n = " + std::to_string(n) +
                    ", m = " + std::to_string(m) + ")");
    Mat p(n, n);
    for (int r = 0; r < n; ++r) {
        auto pt = p0.point(r);
        for (int c = 0; c < m; ++c) p(r, c) = pt[c];
        p(r, n - 1) = 1.0;
    }
    // middle columns: shifted identity, same fill pattern as H
    for (int t = 0; t < n - 1 - m; ++t) p(t, m + t) = 1.0;
    check_nonsingular(p, "build_p (control points degenerate?)");
    return LiftMatrix(std::move(p), n, m, Kind::P);
}

LiftMatrix LiftMatrix::build_h(int n) {
    if (n < 2) throw Error("build_h: need n >= 2");
    Mat h(n, n);
    for (int i = 0; i < n - 1; ++i) h(i, i) = 1.0;
    for (int i = 0; i < n; ++i) h(i, n - 1) = 1.0;
    return LiftMatrix(std::move(h), n, 0, Kind::H);
}

LiftedMap lift(const Mat& s_r, const LiftMatrix& l) {
    if (s_r.rows() != l.n() || s_r.cols() != l.n()) throw Error("lift: dimension mismatch");
    LiftedMap out;
    out.m = conjugate_by(s_r, l.matrix());
    out.reproduces_constants = true;
    for (int r = 0; r < s_r.rows(); ++r) {
        double sum = 0.0;
        for (int c = 0; c < s_r.cols(); ++c) sum += s_r(r, c);
        if (std::fabs(sum - 1.0) > 1e-12) {
            out.reproduces_constants = false;
            break;
        }
    }
    return out;
}

BlockStructure block_structure(const LiftedMap& m) {
    if (!m.reproduces_constants)
        throw Error("block_structure: slice does not reproduce constants; the map has no "
                    "(G 0; v 1) form");
    const int n = m.m.rows();
    BlockStructure b;
    b.g = Mat(n - 1, n - 1);
    for (int r = 0; r < n - 1; ++r)
        for (int c = 0; c < n - 1; ++c) b.g(r, c) = m.m(r, c);
    b.v = Vec(n - 1);
    for (int c = 0; c < n - 1; ++c) b.v[c] = m.m(n - 1, c);
    b.g_spectral_norm = spectral_norm(b.g);
    return b;
}

SfsSchedule sfs_from_subdivision(const MaskSequence& masks, const LiftMatrix& l, int n) {
    if (l.n() != n) throw Error("sfs_from_subdivision: lift matrix size != n");
    // probe the first mask so obvious size errors surface here, not lazily
    slice_matrices(masks.mask(1), n);

    auto lifted_pair = [masks, l, n](int k) {
        const SliceMatrices s = slice_matrices(masks.mask(k), n);
        return std::pair<LiftedMap, LiftedMap>{lift(s.s1, l), lift(s.s2, l)};
    };

    auto gen = [lifted_pair, n, masks](int k) {
        auto [m1, m2] = lifted_pair(k);
        std::vector<AffineMap> maps;
        maps.push_back(AffineMap::linear(m1.m.transposed()));
        maps.push_back(AffineMap::linear(m2.m.transposed()));
        return FunctionSystem(n, std::move(maps), masks.description() + "[" + std::to_string(k) + "]");
    };

    // Per-level factor: the largest non-unit eigenvalue modulus of the
    // slices (spectral radius of the G blocks), the paper's mu(S_{a^[k]}).
    // The norm |G|_2 is the honest Lipschitz constant on Q^{n-1} but is
    // useless as a product diagnostic here (it sits well above 1 for every
    // tension of the 4-point family); block_structure still reports it.
    auto factor_fn = [lifted_pair](int k) {
        auto [m1, m2] = lifted_pair(k);
        if (m1.reproduces_constants && m2.reproduces_constants)
            return std::max(spectral_radius(block_structure(m1).g),
                            spectral_radius(block_structure(m2).g));
        return std::max(spectral_norm(m1.m), spectral_norm(m2.m));
    };

    SfsSchedule sched(n, masks.description(), gen);
    sched.set_factor_fn(factor_fn);

    auto ctx = std::make_shared<LiftedContext>();
    ctx->basis = l.matrix();
    ctx->n = n;
    ctx->m = l.embedded_dim();
    ctx->masks = masks;
    ctx->start = l.rows_as_points();
    ctx->constants_reproduced = true;
    for (int k = 1; k <= 4; ++k)
        if (!check_constant_reproduction(masks.mask(k)).ok) ctx->constants_reproduced = false;
    sched.set_lifted(std::move(ctx));
    return sched;
}

IndexWord::IndexWord(std::vector<int> d) : digits(std::move(d)) {
    for (int v : digits)
        if (v != 1 && v != 2) throw Error("IndexWord: digits must be 1 or 2");
}

double word_parameter(const IndexWord& w) {
    double x = 0.0;
    double scale = 0.5;
    for (int d : w.digits) {
        x += (d - 1) * scale;
        scale *= 0.5;
    }
    return x;
}

WordLimitResult word_limit(const MaskSequence& masks, const IndexWord& w, const LiftMatrix& l,
                           const PointSet& p0) {
    if (w.digits.empty()) throw Error("word_limit: need at least one digit");
    p0.validate();
    if (p0.size() != l.n()) throw Error("word_limit: control polygon size != n");
    const int n = l.n();
    const int m = p0.dim();
    Mat cur(n, m);
    for (int r = 0; r < n; ++r) {
        auto pt = p0.point(r);
        for (int c = 0; c < m; ++c) cur(r, c) = pt[c];
    }
    for (size_t k = 0; k < w.digits.size(); ++k) {
        const SliceMatrices s = slice_matrices(masks.mask(static_cast<int>(k) + 1), n);
        cur = (w.digits[k] == 1 ? s.s1 : s.s2) * cur;
    }
    WordLimitResult out;
    out.rows = cur;
    out.point = Vec(m, 0.0);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < m; ++c) out.point[c] += cur(r, c) / n;
    out.spread = diameter(PointSet::from_matrix_rows(cur));
    return out;
}

PointSet project(const PointSet& a, int m) {
    if (m < 1 || m > a.dim()) throw Error("project: need 1 <= m <= dim");
    if (m == a.dim()) return dedup(a, 1e-12);
    PointSet out(m);
    out.reserve(a.size());
    for (int i = 0; i < a.size(); ++i) out.append(a.point(i).subspan(0, static_cast<size_t>(m)));
    return dedup(out, 1e-12);
}

PointSet attractor_from_basis(const PointSet& h_inf, const LiftMatrix& h, const PointSet& p0) {
    h_inf.validate();
    p0.validate();
    const int n = h.n();
    if (h_inf.dim() != n) throw Error("attractor_from_basis: basis attractor dim != n");
    if (p0.size() != n) throw Error("attractor_from_basis: control polygon size != n");
    const int m = p0.dim();
    Mat p0_mat(n, m);
    for (int r = 0; r < n; ++r) {
        auto pt = p0.point(r);
        for (int c = 0; c < m; ++c) p0_mat(r, c) = pt[c];
    }
    const Lu f = lu_factor(h.matrix());
    if (f.singular) throw Error("attractor_from_basis: singular H");
    const Mat w = lu_solve_mat(f, p0_mat);  // H^{-1} p0

    PointSet out(m);
    out.reserve(h_inf.size());
    for (int i = 0; i < h_inf.size(); ++i) {
        auto row = h_inf.point(i);
        Vec y(m, 0.0);
        for (int j = 0; j < n; ++j) {
            const double v = row[j];
            if (v == 0.0) continue;
            for (int c = 0; c < m; ++c) y[c] += v * w(j, c);
        }
        out.append({y.data(), y.size()});
    }
    return dedup(out, 1e-12);
}

CompositionSearch composition_contractivity_search(const std::function<Mat(int, int)>& blocks,
                                                   int start, int max_ell) {
    if (max_ell < 1) throw Error("composition search: max_ell must be >= 1");
    CompositionSearch out;
    std::vector<std::pair<Mat, Mat>> level_blocks;
    for (int t = 0; t < max_ell; ++t)
        level_blocks.emplace_back(blocks(start + t, 1), blocks(start + t, 2));

    constexpr long long enumeration_cap = 1 << 14;
    for (int ell = 1; ell <= max_ell; ++ell) {
        const long long total = 1LL << ell;
        const bool sample = total > enumeration_cap;
        const long long count = sample ? enumeration_cap : total;
        double worst = 0.0;
        for (long long w = 0; w < count; ++w) {
            Mat prod;
            for (int t = 0; t < ell; ++t) {
                int digit;
                if (sample)
                    digit = 1 + static_cast<int>((splitmix64_at(0xC0FFEEULL + w, t) >> 17) & 1);
                else
                    digit = 1 + static_cast<int>((w >> t) & 1);
                const Mat& g = digit == 1 ? level_blocks[t].first : level_blocks[t].second;
                prod = (t == 0) ? g : g * prod;  // level order: later levels multiply on the left
            }
            worst = std::max(worst, spectral_norm(prod));
        }
        out.per_length.push_back(worst);
        if (worst < 1.0) {
            out.found = true;
            out.ell = ell;
            out.max_word_norm = worst;
            return out;
        }
    }
    out.max_word_norm = out.per_length.back();
    out.ell = max_ell;
    return out;
}

}  // namespace sfs
