#pragma once

#include <span>
#include <vector>

#include "sfs/schedule.hpp"

namespace sfs {

struct AttractorResult {
    PointSet set = PointSet(1);
    int iterations = 0;
    bool converged = false;
    double final_step = 0.0;            // h(B_{k-1}, B_k) at the last step
    std::vector<double> h_steps;        // h between consecutive iterates
    double contraction = 0.0;           // L_F (spectral norms on R^m)
    double apriori_bound = 0.0;         // h(B0,B1)/(1-L_F), NaN when L_F >= 1
};

/// Iterates B_{k+1} = F(B_k) until h(B_k, B_{k+1}) < tol or max_iter.
/// Requires L_F < 1 unless assume_contractive is set (the caller asserting
/// some l-term composition of F is a contraction). Never throws on slow
/// convergence: the result carries the step sizes and a converged flag.
AttractorResult ifs_attractor(const FunctionSystem& f, const PointSet& b0, double tol,
                              int max_iter, double eps, bool assume_contractive = false);

struct TrajectoryResult {
    std::vector<int> depths;
    std::vector<PointSet> sets;
    std::vector<double> step_hausdorff;  // h between consecutive returned sets
};

/// Phi_k(A) = F_k(F_{k-1}(...F_1(A))), reported at the requested depths
/// (strictly increasing, depth 0 = A itself). Incremental left-to-right,
/// decimating each step with eps.
TrajectoryResult forward_trajectory(const SfsSchedule& s, const PointSet& a,
                                    const std::vector<int>& depths, double eps);

/// Psi_K(A) = F_1(F_2(...F_K(A))). Each requested depth is recomputed from
/// scratch: the new system enters innermost, so Psi_{K+1} cannot extend
/// Psi_K.
TrajectoryResult backward_trajectory(const SfsSchedule& s, const PointSet& a,
                                     const std::vector<int>& depths, double eps);

struct InvariantBall {
    Vec center;
    double radius;
    double mu;
    double m_bound;
};

/// Ball of radius M/(1-mu) at q; every T with d(T(x),q) <= mu d(x,q) + M
/// maps it into itself.
InvariantBall invariant_ball(Vec q, double mu, double m_bound);

/// prod(s_i) * d_xy, the asymptotic-similarity bound for trajectories of
/// maps with Lipschitz constants s_i.
double similarity_bound(std::span<const double> s, double d_xy);

struct ProductDiagnostic {
    enum class Class { SumConverges, ProductVanishes, Inconclusive };

    std::vector<double> partial_products;  // P_k
    std::vector<double> partial_sums;      // sum of P_1..P_k
    double tail_ratio = 1.0;               // mean of P_k/P_{k-1} over the last quarter
    Class classification = Class::Inconclusive;

    bool sum_converges() const { return classification == Class::SumConverges; }
};

/// Empirical truncation test of sum_k prod_{i<=k} s_i < infinity and of
/// prod s_i -> 0. SumConverges when the tail ratio is below 1 and the
/// extrapolated geometric remainder is a small fraction of the accumulated
/// sum; ProductVanishes when the products merely decay. Heuristic by
/// nature; thresholds are pinned in the implementation.
ProductDiagnostic product_diagnostic(std::span<const double> factors);

const char* to_string(ProductDiagnostic::Class c);

}  // namespace sfs
