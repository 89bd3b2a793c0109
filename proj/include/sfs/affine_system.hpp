#pragma once

#include <string>
#include <vector>

#include "sfs/linalg.hpp"
#include "sfs/point_set.hpp"

namespace sfs {

/// x -> A x + b on R^m.
struct AffineMap {
    Mat a;
    Vec b;

    AffineMap() = default;
    AffineMap(Mat a_, Vec b_);

    int dim() const { return static_cast<int>(b.size()); }
    Vec apply(std::span<const double> x) const;

    /// 1-D convenience: x -> s x + t.
    static AffineMap scalar(double s, double t);
    /// Pure linear map, zero translation.
    static AffineMap linear(Mat a_);
};

/// Exact Lipschitz constant of an affine map: the spectral norm of A.
double lipschitz(const AffineMap& f);

/// A finite family of affine maps sharing one dimension (an IFS once
/// contractive; one slot of an SFS otherwise).
class FunctionSystem {
public:
    FunctionSystem(int dim, std::vector<AffineMap> maps, std::string label = "");

    int dim() const { return dim_; }
    int count() const { return static_cast<int>(maps_.size()); }
    const AffineMap& map(int i) const { return maps_[i]; }
    const std::vector<AffineMap>& maps() const { return maps_; }
    const std::string& label() const { return label_; }

private:
    int dim_;
    std::vector<AffineMap> maps_;
    std::string label_;
};

/// max over maps of lipschitz: the contraction factor of the
/// Barnsley-Hutchinson operator on (H(X), h).
double contraction_factor(const FunctionSystem& f);

/// F(B) = union of f(B) over the family, then decimated with eps
/// (eps = 0 keeps exact points, collapsing duplicates at 1e-12).
PointSet hutchinson_apply(const FunctionSystem& f, const PointSet& b, double eps);

}  // namespace sfs
