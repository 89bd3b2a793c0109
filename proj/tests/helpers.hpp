#pragma once

#include <cmath>

#include "sfs/affine_system.hpp"
#include "sfs/point_set.hpp"
#include "sfs/rng.hpp"

namespace sfs::test {

// deterministic test randomness, one stream per (seed, index)
struct Rng {
    uint64_t seed;
    uint64_t counter = 0;

    explicit Rng(uint64_t s) : seed(s) {}
    double uniform01() { return uniform01_at(seed, ++counter); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(splitmix64_at(seed, ++counter) % static_cast<uint64_t>(hi - lo + 1));
    }
};

inline PointSet random_point_set(Rng& rng, int dim, int count, double lo = -2.0, double hi = 2.0) {
    PointSet s(dim);
    for (int i = 0; i < count; ++i) {
        Vec p(dim);
        for (int d = 0; d < dim; ++d) p[d] = rng.uniform(lo, hi);
        s.append({p.data(), p.size()});
    }
    return s;
}

inline Mat random_matrix(Rng& rng, int rows, int cols, double scale = 1.0) {
    Mat m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = rng.uniform(-scale, scale);
    return m;
}

// affine map with spectral norm exactly `norm`
inline AffineMap random_affine_with_norm(Rng& rng, int dim, double norm, double shift_scale = 1.0) {
    Mat a = random_matrix(rng, dim, dim);
    const double sn = spectral_norm(a);
    a = sn > 0 ? a.scaled(norm / sn) : a;
    Vec b(dim);
    for (int d = 0; d < dim; ++d) b[d] = rng.uniform(-shift_scale, shift_scale);
    return AffineMap(std::move(a), std::move(b));
}

inline bool sets_equal_within(const PointSet& a, const PointSet& b, double tol) {
    return hausdorff(a, b) <= tol;
}

}  // namespace sfs::test
