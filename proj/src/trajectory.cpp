#include "sfs/trajectory.hpp"

#include <cmath>
#include <limits>

namespace sfs {

AttractorResult ifs_attractor(const FunctionSystem& f, const PointSet& b0, double tol,
                              int max_iter, double eps, bool assume_contractive) {
    b0.validate();
    if (f.dim() != b0.dim()) throw Error("ifs_attractor: dimension mismatch");
    if (max_iter < 1) throw Error("ifs_attractor: max_iter must be >= 1");

    AttractorResult r;
    r.contraction = contraction_factor(f);
    if (r.contraction >= 1.0 && !assume_contractive)
        throw Error("ifs_attractor: system is not contractive (L = " +
                    std::to_string(r.contraction) + "); pass assume_contractive after "
                    "certifying an l-term composition");

    PointSet cur = eps > 0.0 ? decimate(b0, eps) : b0;
    double first_step = 0.0;
    for (int k = 0; k < max_iter; ++k) {
        PointSet next = hutchinson_apply(f, cur, eps);
        const double step = hausdorff(cur, next);
        r.h_steps.push_back(step);
        if (k == 0) first_step = step;
        cur = std::move(next);
        r.iterations = k + 1;
        r.final_step = step;
        if (tol > 0.0 && step < tol) {
            r.converged = true;
            break;
        }
    }
    if (tol <= 0.0) r.converged = true;  // fixed-iteration mode
    r.apriori_bound = r.contraction < 1.0 ? first_step / (1.0 - r.contraction)
                                          : std::numeric_limits<double>::quiet_NaN();
    r.set = std::move(cur);
    return r;
}

namespace {

void check_depths(const std::vector<int>& depths) {
    if (depths.empty()) throw Error("trajectory: no depths requested");
    for (size_t i = 0; i < depths.size(); ++i) {
        if (depths[i] < 0) throw Error("trajectory: depths must be >= 0");
        if (i > 0 && depths[i] <= depths[i - 1])
            throw Error("trajectory: depths must be strictly increasing");
    }
}

void push_step(TrajectoryResult& r) {
    const size_t n = r.sets.size();
    if (n >= 2) r.step_hausdorff.push_back(hausdorff(r.sets[n - 2], r.sets[n - 1]));
}

}  // namespace

TrajectoryResult forward_trajectory(const SfsSchedule& s, const PointSet& a,
                                    const std::vector<int>& depths, double eps) {
    a.validate();
    if (s.dim() != a.dim()) throw Error("forward_trajectory: dimension mismatch");
    check_depths(depths);
    if (eps < 0.0) throw Error("forward_trajectory: eps must be >= 0");

    TrajectoryResult r;
    r.depths = depths;
    PointSet cur = a;
    int level = 0;
    for (int want : depths) {
        while (level < want) {
            ++level;
            cur = hutchinson_apply(s.system(level), cur, eps);
        }
        r.sets.push_back(cur);
        push_step(r);
    }
    return r;
}

TrajectoryResult backward_trajectory(const SfsSchedule& s, const PointSet& a,
                                     const std::vector<int>& depths, double eps) {
    a.validate();
    if (s.dim() != a.dim()) throw Error("backward_trajectory: dimension mismatch");
    check_depths(depths);
    if (eps < 0.0) throw Error("backward_trajectory: eps must be >= 0");

    TrajectoryResult r;
    r.depths = depths;
    for (int want : depths) {
        PointSet cur = a;
        for (int level = want; level >= 1; --level)
            cur = hutchinson_apply(s.system(level), cur, eps);
        r.sets.push_back(std::move(cur));
        push_step(r);
    }
    return r;
}

InvariantBall invariant_ball(Vec q, double mu, double m_bound) {
    if (!(mu >= 0.0 && mu < 1.0)) throw Error("invariant_ball: need 0 <= mu < 1");
    if (m_bound < 0.0) throw Error("invariant_ball: need M >= 0");
    InvariantBall b;
    b.center = std::move(q);
    b.mu = mu;
    b.m_bound = m_bound;
    b.radius = m_bound / (1.0 - mu);
    return b;
}

double similarity_bound(std::span<const double> s, double d_xy) {
    if (d_xy < 0.0) throw Error("similarity_bound: distance must be >= 0");
    double prod = 1.0;
    for (double v : s) {
        if (v < 0.0) throw Error("similarity_bound: factors must be >= 0");
        prod *= v;
    }
    return prod * d_xy;
}

ProductDiagnostic product_diagnostic(std::span<const double> factors) {
    ProductDiagnostic d;
    if (factors.empty()) return d;

    double prod = 1.0;
    double sum = 0.0;
    for (double s : factors) {
        if (s < 0.0) throw Error("product_diagnostic: factors must be >= 0");
        prod *= s;
        sum += prod;
        d.partial_products.push_back(prod);
        d.partial_sums.push_back(sum);
    }

    // geometric mean of the last-quarter ratios: the decay rate of the
    // products themselves (an arithmetic mean overshoots 1 whenever the
    // factors fluctuate, even while the products fall)
    const size_t k = factors.size();
    const size_t tail = std::max<size_t>(1, k / 4);
    double log_sum = 0.0;
    bool hit_zero = false;
    for (size_t i = k - tail; i < k; ++i) {
        const double prev = i == 0 ? 1.0 : d.partial_products[i - 1];
        const double ratio = prev > 0.0 ? d.partial_products[i] / prev : 0.0;
        if (ratio <= 0.0) {
            hit_zero = true;
            break;
        }
        log_sum += std::log(ratio);
    }
    d.tail_ratio = hit_zero ? 0.0 : std::exp(log_sum / static_cast<double>(tail));

    const double last = d.partial_products.back();
    double peak = 0.0;
    for (double p : d.partial_products) peak = std::max(peak, p);

    // Pinned empirical thresholds. SumConverges: decaying tail whose
    // extrapolated geometric remainder last*r/(1-r) is under 5% of the
    // accumulated sum. ProductVanishes: products decayed well below their
    // peak with a non-increasing tail.
    const bool tail_decaying = d.tail_ratio < 1.0;
    if (tail_decaying && std::isfinite(sum)) {
        const double remainder = last * d.tail_ratio / (1.0 - d.tail_ratio);
        if (remainder <= 0.05 * sum) {
            d.classification = ProductDiagnostic::Class::SumConverges;
            return d;
        }
    }
    if (d.tail_ratio <= 1.0 && last <= 0.1 * peak) {
        d.classification = ProductDiagnostic::Class::ProductVanishes;
        return d;
    }
    d.classification = ProductDiagnostic::Class::Inconclusive;
    return d;
}

const char* to_string(ProductDiagnostic::Class c) {
    switch (c) {
        case ProductDiagnostic::Class::SumConverges: return "sum-converges";
        case ProductDiagnostic::Class::ProductVanishes: return "product-vanishes";
        case ProductDiagnostic::Class::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

}  // namespace sfs
