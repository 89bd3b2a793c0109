#pragma once

#include "sfs/linalg.hpp"
#include "sfs/mask.hpp"

namespace sfs {

/// The two n x n two-slanted sub-matrices of the refinement operator:
/// S1 maps n control points to the first n refined points, S2 to the
/// last n.
struct SliceMatrices {
    Mat s1;
    Mat s2;
    int n = 0;
    bool odd_mask = false;
    int ell = 0;
};

/// Rows are (S_r)_{i,j} = a_{i-2j} over the centered mask. S1 covers rows
/// i = l+1..l+n for both parities; S2 starts at i = n-l+2 for odd-sized
/// masks and n-l+3 for even-sized ones. These windows are exactly the first
/// and last n fully-supported outputs of one refinement step, so S1 p and
/// S2 p are the prefix and suffix of refine(mask, p) and word products tile
/// every deeper level.
SliceMatrices slice_matrices(const Mask& m, int n);

/// p^K after refining with a^[1], ..., a^[K]. K = 0 returns p0.
PointSet subdivide_levels(const MaskSequence& masks, const PointSet& p0, int levels);

struct ConvergenceEstimate {
    enum class Class { C0Like, HLike, Inconclusive };

    std::vector<double> max_adjacent_diff;  // Delta_k for k = 0..K
    std::vector<double> delta_ratios;       // Delta_{k+1} / Delta_k
    std::vector<double> hausdorff_steps;    // h(p^k, p^{k+1}) for k = 0..K-1
    double mean_tail_delta_ratio = 1.0;
    Class classification = Class::Inconclusive;
};

/// Runs K levels and reports the max-adjacent-difference sequence, the
/// Hausdorff steps, and a heuristic classification: C0-like when the
/// differences decay geometrically, h-like when only the set distances
/// shrink (nontrivially), inconclusive otherwise. Requires K >= 2.
ConvergenceEstimate c0_convergence_estimate(const MaskSequence& masks, const PointSet& p0,
                                            int levels);

const char* to_string(ConvergenceEstimate::Class c);

}  // namespace sfs
