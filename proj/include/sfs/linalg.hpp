#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sfs {

/// Library-wide error type; thrown on precondition violations and bad input.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Vec = std::vector<double>;

/// Small dense row-major matrix. Everything in this project is tiny
/// (n rarely exceeds 8), so no blocking or views, just plain loops.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}

    static Mat identity(int n);
    static Mat from_rows(const std::vector<Vec>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    double operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    const std::vector<double>& data() const { return a_; }
    std::vector<double>& data() { return a_; }

    Mat transposed() const;
    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat scaled(double s) const;

    /// y = M x (column-vector action).
    Vec apply(const Vec& x) const;
    /// y = x M (row-vector action).
    Vec apply_left(const Vec& x) const;

    Vec row(int r) const;
    Vec col(int c) const;

    double max_abs() const;

    bool operator==(const Mat& o) const = default;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);
Vec sub(const Vec& a, const Vec& b);

/// LU factorization with partial pivoting.
struct Lu {
    Mat lu;
    std::vector<int> piv;
    double det = 0.0;
    bool singular = false;
};

Lu lu_factor(const Mat& a);
Vec lu_solve(const Lu& f, Vec b);
/// Solves A X = B column by column.
Mat lu_solve_mat(const Lu& f, const Mat& b);

/// X = L^{-1} (S L) with one step of iterative refinement. The refinement
/// matters: trajectory/product identity tests compare this path against raw
/// S-products at 1e-12, so the L·L^{-1} cancellation must be tight.
Mat conjugate_by(const Mat& s, const Mat& l);

/// Largest singular value via power iteration on AᵗA, relative tolerance
/// on the Rayleigh quotient. Deterministic start vector, basis restarts
/// if the iteration lands in the kernel.
double spectral_norm(const Mat& a, double rel_tol = 1e-10);

/// All eigenvalues of a small dense matrix: characteristic polynomial by
/// Faddeev-LeVerrier, roots by Durand-Kerner. Fine for the n <= 10 sizes
/// this project uses.
std::vector<std::complex<double>> eigenvalues(const Mat& a);

/// max |eigenvalue|.
double spectral_radius(const Mat& a);

/// Hadamard-style scale for singularity checks: product of column norms.
double hadamard_scale(const Mat& a);

}  // namespace sfs
