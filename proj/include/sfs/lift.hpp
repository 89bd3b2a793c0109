#pragma once

#include "sfs/schedule.hpp"
#include "sfs/slices.hpp"

namespace sfs {

/// The n x n basis matrix conjugating slice matrices into affine maps:
/// either P (control points in the first m columns, shifted-identity fill,
/// ones column last) or H (identity block with a ones column). Nonsingular
/// by construction or by check.
class LiftMatrix {
public:
    enum class Kind { P, H };

    static LiftMatrix build_p(const PointSet& p0);
    static LiftMatrix build_h(int n);

    const Mat& matrix() const { return m_; }
    int n() const { return n_; }
    int embedded_dim() const { return m_dim_; }
    Kind kind() const { return kind_; }

    /// Rows of the matrix as a point set in R^n, the canonical trajectory
    /// start (PSSP reduces products against it to raw slice products).
    PointSet rows_as_points() const { return PointSet::from_matrix_rows(m_); }

private:
    LiftMatrix(Mat m, int n, int m_dim, Kind kind)
        : m_(std::move(m)), n_(n), m_dim_(m_dim), kind_(kind) {}

    Mat m_;
    int n_;
    int m_dim_;
    Kind kind_;
};

/// M_r = L^{-1} S_r L acting on row vectors from the right. When S_r
/// reproduces constants the last column of M_r is e_n, so the flat
/// Q^{n-1} = {(x, 1)} maps to itself.
struct LiftedMap {
    Mat m;
    bool reproduces_constants = false;
};

LiftedMap lift(const Mat& s_r, const LiftMatrix& l);

struct BlockStructure {
    Mat g;                  // (n-1) x (n-1) top-left block
    Vec v;                  // bottom-left row
    double g_spectral_norm; // Lipschitz constant of the map restricted to Q^{n-1}
};

/// Requires reproduces_constants; extracts the (G 0; v 1) block form.
BlockStructure block_structure(const LiftedMap& m);

/// The SFS k |-> {x -> M_1^[k]t x, x -> M_2^[k]t x} on R^n (row action
/// transposed into the column convention). Contraction factors use the
/// G-block norms when every mask reproduces constants, full norms
/// otherwise. The schedule carries a LiftedContext for projection and
/// canonical starts.
SfsSchedule sfs_from_subdivision(const MaskSequence& masks, const LiftMatrix& l, int n);

/// Finite word over {1,2}: a truncated binary parametrization index.
struct IndexWord {
    std::vector<int> digits;

    IndexWord() = default;
    explicit IndexWord(std::vector<int> d);
};

/// x_eta = sum (i_k - 1) 2^{-k} in [0,1].
double word_parameter(const IndexWord& w);

struct WordLimitResult {
    Vec point;       // mean row, in R^m
    double spread;   // max pairwise distance among the n rows
    Mat rows;        // S^[K]_{i_K} ... S^[1]_{i_1} p0  (n x m)
};

/// Applies the word's slice matrices to the control matrix; for
/// C0-convergent schemes the rows collapse to a single curve point as the
/// word grows.
WordLimitResult word_limit(const MaskSequence& masks, const IndexWord& w, const LiftMatrix& l,
                           const PointSet& p0);

/// First-m-coordinates truncation, deduplicated.
PointSet project(const PointSet& a, int m);

/// p_inf = H_inf H^{-1} p0: reuse one basis attractor for any control
/// polygon.
PointSet attractor_from_basis(const PointSet& h_inf, const LiftMatrix& h, const PointSet& p0);

struct CompositionSearch {
    bool found = false;
    int ell = 0;                     // shortest certified composition length
    double max_word_norm = 0.0;      // max over words at that length
    std::vector<double> per_length;  // max word norm for l = 1..searched
};

/// Searches l = 1..max_ell for max over the 2^l words of
/// |G_{i_l} ... G_{i_1}|_2 < 1, levels taken from `blocks` starting at
/// level `start`. Word enumeration caps at 2^14 products; beyond that the
/// longer lengths sample seeded random words.
CompositionSearch composition_contractivity_search(const std::function<Mat(int, int)>& blocks,
                                                   int start, int max_ell);

}  // namespace sfs
