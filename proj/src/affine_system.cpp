#include "sfs/affine_system.hpp"

#include <cmath>

namespace sfs {

AffineMap::AffineMap(Mat a_, Vec b_) : a(std::move(a_)), b(std::move(b_)) {
    if (a.rows() != a.cols()) throw Error("AffineMap: A must be square");
    if (a.rows() != static_cast<int>(b.size())) throw Error("AffineMap: A/b size mismatch");
    for (double v : a.data())
        if (!std::isfinite(v)) throw Error("AffineMap: non-finite entry in A");
    for (double v : b)
        if (!std::isfinite(v)) throw Error("AffineMap: non-finite entry in b");
}

Vec AffineMap::apply(std::span<const double> x) const {
    const int n = dim();
    Vec y(b);
    for (int r = 0; r < n; ++r) {
        double acc = 0.0;
        for (int c = 0; c < n; ++c) acc += a(r, c) * x[c];
        y[r] += acc;
    }
    return y;
}

AffineMap AffineMap::scalar(double s, double t) {
    Mat a(1, 1);
    a(0, 0) = s;
    return AffineMap(a, Vec{t});
}

AffineMap AffineMap::linear(Mat a_) {
    Vec zero(a_.rows(), 0.0);
    return AffineMap(std::move(a_), std::move(zero));
}

double lipschitz(const AffineMap& f) { return spectral_norm(f.a); }

FunctionSystem::FunctionSystem(int dim, std::vector<AffineMap> maps, std::string label)
    : dim_(dim), maps_(std::move(maps)), label_(std::move(label)) {
    if (dim_ < 1) throw Error("FunctionSystem: dimension must be >= 1");
    if (maps_.empty()) throw Error("FunctionSystem: needs at least one map");
    for (const auto& m : maps_)
        if (m.dim() != dim_) throw Error("FunctionSystem: map dimension mismatch");
}

double contraction_factor(const FunctionSystem& f) {
    double best = 0.0;
    for (const auto& m : f.maps()) best = std::max(best, lipschitz(m));
    return best;
}

PointSet hutchinson_apply(const FunctionSystem& f, const PointSet& b, double eps) {
    if (f.dim() != b.dim()) throw Error("hutchinson_apply: dimension mismatch");
    if (b.empty()) throw Error("hutchinson_apply: empty input set");
    if (eps < 0.0) throw Error("hutchinson_apply: eps must be >= 0");
    PointSet out(b.dim());
    out.reserve(b.size() * f.count());
    for (int m = 0; m < f.count(); ++m) {
        const AffineMap& map = f.map(m);
        for (int i = 0; i < b.size(); ++i) {
            Vec y = map.apply(b.point(i));
            out.append({y.data(), y.size()});
        }
    }
    return eps > 0.0 ? decimate(out, eps) : dedup(out, 1e-12);
}

}  // namespace sfs
