#include "sfs/linalg.hpp"

#include <cmath>
#include <cstdlib>

namespace sfs {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) throw Error("Mat::from_rows: no rows");
    Mat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int r = 0; r < m.rows(); ++r) {
        if (static_cast<int>(rows[r].size()) != m.cols())
            throw Error("Mat::from_rows: ragged rows");
        for (int c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Mat Mat::transposed() const {
    Mat t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw Error("Mat::operator*: dimension mismatch");
    Mat out(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            const double v = (*this)(r, k);
            if (v == 0.0) continue;
            for (int c = 0; c < o.cols_; ++c) out(r, c) += v * o(k, c);
        }
    return out;
}

Mat Mat::operator+(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("Mat::operator+: shape mismatch");
    Mat out = *this;
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] += o.a_[i];
    return out;
}

Mat Mat::operator-(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("Mat::operator-: shape mismatch");
    Mat out = *this;
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] -= o.a_[i];
    return out;
}

Mat Mat::scaled(double s) const {
    Mat out = *this;
    for (auto& v : out.a_) v *= s;
    return out;
}

Vec Mat::apply(const Vec& x) const {
    if (static_cast<int>(x.size()) != cols_) throw Error("Mat::apply: dimension mismatch");
    Vec y(rows_, 0.0);
    for (int r = 0; r < rows_; ++r) {
        double acc = 0.0;
        for (int c = 0; c < cols_; ++c) acc += (*this)(r, c) * x[c];
        y[r] = acc;
    }
    return y;
}

Vec Mat::apply_left(const Vec& x) const {
    if (static_cast<int>(x.size()) != rows_) throw Error("Mat::apply_left: dimension mismatch");
    Vec y(cols_, 0.0);
    for (int r = 0; r < rows_; ++r) {
        const double v = x[r];
        if (v == 0.0) continue;
        for (int c = 0; c < cols_; ++c) y[c] += v * (*this)(r, c);
    }
    return y;
}

Vec Mat::row(int r) const {
    Vec out(cols_);
    for (int c = 0; c < cols_; ++c) out[c] = (*this)(r, c);
    return out;
}

Vec Mat::col(int c) const {
    Vec out(rows_);
    for (int r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

double Mat::max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::fabs(v));
    return m;
}

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec sub(const Vec& a, const Vec& b) {
    Vec o(a.size());
    for (size_t i = 0; i < a.size(); ++i) o[i] = a[i] - b[i];
    return o;
}

Lu lu_factor(const Mat& a) {
    if (a.rows() != a.cols()) throw Error("lu_factor: matrix not square");
    const int n = a.rows();
    Lu f;
    f.lu = a;
    f.piv.resize(n);
    double parity = 1.0;
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::fabs(f.lu(k, k));
        for (int r = k + 1; r < n; ++r) {
            const double v = std::fabs(f.lu(r, k));
            if (v > best) { best = v; p = r; }
        }
        f.piv[k] = p;
        if (p != k) {
            parity = -parity;
            for (int c = 0; c < n; ++c) std::swap(f.lu(k, c), f.lu(p, c));
        }
        const double pivot = f.lu(k, k);
        if (pivot == 0.0) {
            f.singular = true;
            f.det = 0.0;
            return f;
        }
        for (int r = k + 1; r < n; ++r) {
            const double m = f.lu(r, k) / pivot;
            f.lu(r, k) = m;
            if (m == 0.0) continue;
            for (int c = k + 1; c < n; ++c) f.lu(r, c) -= m * f.lu(k, c);
        }
    }
    f.det = parity;
    for (int k = 0; k < n; ++k) f.det *= f.lu(k, k);
    return f;
}

Vec lu_solve(const Lu& f, Vec b) {
    if (f.singular) throw Error("lu_solve: singular matrix");
    const int n = f.lu.rows();
    // multipliers are stored in final row positions, so permute fully first
    for (int k = 0; k < n; ++k)
        if (f.piv[k] != k) std::swap(b[k], b[f.piv[k]]);
    for (int k = 0; k < n; ++k)
        for (int r = k + 1; r < n; ++r) b[r] -= f.lu(r, k) * b[k];
    for (int k = n - 1; k >= 0; --k) {
        for (int c = k + 1; c < n; ++c) b[k] -= f.lu(k, c) * b[c];
        b[k] /= f.lu(k, k);
    }
    return b;
}

Mat lu_solve_mat(const Lu& f, const Mat& b) {
    Mat x(b.rows(), b.cols());
    for (int c = 0; c < b.cols(); ++c) {
        Vec col = lu_solve(f, b.col(c));
        for (int r = 0; r < b.rows(); ++r) x(r, c) = col[r];
    }
    return x;
}

Mat conjugate_by(const Mat& s, const Mat& l) {
    const Mat rhs = s * l;
    const Lu f = lu_factor(l);
    if (f.singular) throw Error("conjugate_by: singular basis matrix");
    Mat x = lu_solve_mat(f, rhs);
    const Mat resid = rhs - l * x;
    x = x + lu_solve_mat(f, resid);
    return x;
}

double spectral_norm(const Mat& a, double rel_tol) {
    const int n = a.cols();
    if (n == 0 || a.rows() == 0) return 0.0;
    const Mat b = a.transposed() * a;

    double frob2 = 0.0;
    for (double v : b.data()) frob2 += v * v;
    if (frob2 == 0.0) return 0.0;

    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = 1.0 + static_cast<double>(i + 1) / (n + 1);
    double nv = norm2(v);
    for (auto& x : v) x /= nv;

    double lambda = 0.0;
    int restarts = 0;
    const int max_iter = 200000;
    for (int it = 0; it < max_iter; ++it) {
        Vec w = b.apply(v);
        const double nw = norm2(w);
        if (nw <= 1e-154) {
            // landed in the kernel; restart from a basis vector
            if (restarts >= n) break;
            v.assign(n, 0.0);
            v[restarts++] = 1.0;
            continue;
        }
        const double rq = dot(v, w);
        for (int i = 0; i < n; ++i) v[i] = w[i] / nw;
        if (it > 0 && std::fabs(rq - lambda) <= rel_tol * std::max(std::fabs(rq), 1e-300)) {
            lambda = rq;
            break;
        }
        lambda = rq;
    }
    return std::sqrt(std::max(lambda, 0.0));
}

std::vector<std::complex<double>> eigenvalues(const Mat& a) {
    if (a.rows() != a.cols()) throw Error("eigenvalues: matrix not square");
    const int n = a.rows();
    std::vector<std::complex<double>> roots;
    if (n == 0) return roots;

    // scale to unit size, restore at the end
    double scale = a.max_abs();
    if (scale == 0.0) return std::vector<std::complex<double>>(n, 0.0);
    const Mat b = a.scaled(1.0 / scale);

    // Faddeev-LeVerrier: p(x) = x^n + c[1] x^{n-1} + ... + c[n]
    std::vector<double> c(n + 1, 0.0);
    Mat m = b;
    for (int k = 1; k <= n; ++k) {
        double trace = 0.0;
        for (int i = 0; i < n; ++i) trace += m(i, i);
        c[k] = -trace / k;
        if (k < n) {
            Mat shifted = m;
            for (int i = 0; i < n; ++i) shifted(i, i) += c[k];
            m = b * shifted;
        }
    }

    auto poly = [&](std::complex<double> z) {
        std::complex<double> v = 1.0;
        for (int k = 1; k <= n; ++k) v = v * z + c[k];
        return v;
    };

    // Durand-Kerner from a slightly irrational starting circle
    double radius = 0.0;
    for (int k = 1; k <= n; ++k) radius = std::max(radius, std::pow(std::fabs(c[k]), 1.0 / k));
    radius = std::max(radius * 2.0, 0.5);
    roots.resize(n);
    for (int i = 0; i < n; ++i) {
        const double th = 6.283185307179586 * i / n + 0.3972;
        roots[i] = std::polar(radius, th);
    }
    for (int it = 0; it < 500; ++it) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> denom = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= roots[i] - roots[j];
            if (denom == std::complex<double>(0.0, 0.0)) {
                roots[i] += std::complex<double>(1e-8, 1e-8);
                worst = 1.0;
                continue;
            }
            const std::complex<double> delta = poly(roots[i]) / denom;
            roots[i] -= delta;
            worst = std::max(worst, std::abs(delta));
        }
        if (worst < 1e-14 * std::max(1.0, radius)) break;
    }
    for (auto& r : roots) r *= scale;
    return roots;
}

double spectral_radius(const Mat& a) {
    double rho = 0.0;
    for (const auto& z : eigenvalues(a)) rho = std::max(rho, std::abs(z));
    return rho;
}

double hadamard_scale(const Mat& a) {
    double s = 1.0;
    for (int c = 0; c < a.cols(); ++c) {
        double nc = norm2(a.col(c));
        s *= (nc > 0.0 ? nc : 1.0);
    }
    return s;
}

}  // namespace sfs
