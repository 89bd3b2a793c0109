#pragma once

#include <span>
#include <vector>

#include "sfs/linalg.hpp"

namespace sfs {

/// Finite point multiset in R^m, the carrier for every attractor and
/// trajectory in this library. Stored flattened; insertion order is kept,
/// so a PointSet doubles as an ordered polygon where the caller needs one.
class PointSet {
public:
    explicit PointSet(int dim);
    PointSet(int dim, std::vector<double> flat);

    static PointSet single(Vec p);
    static PointSet from_points(int dim, const std::vector<Vec>& pts);
    /// Rows of a matrix as points in R^cols.
    static PointSet from_matrix_rows(const Mat& m);

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(xs_.size()) / dim_; }
    bool empty() const { return xs_.empty(); }

    std::span<const double> point(int i) const {
        return {xs_.data() + static_cast<size_t>(i) * dim_, static_cast<size_t>(dim_)};
    }
    Vec point_vec(int i) const;

    void append(std::span<const double> p);
    void reserve(int n) { xs_.reserve(static_cast<size_t>(n) * dim_); }

    const std::vector<double>& flat() const { return xs_; }

    /// Throws unless nonempty and every coordinate is finite.
    void validate() const;

    bool operator==(const PointSet& o) const = default;

private:
    int dim_;
    std::vector<double> xs_;
};

double point_distance(std::span<const double> a, std::span<const double> b);

/// d(B,C) = max over b of min over c of |b-c|. Exact; the inner min bails
/// out once it cannot raise the running max.
double directed_distance(const PointSet& b, const PointSet& c);

/// h(B,C) = max{d(B,C), d(C,B)}.
double hausdorff(const PointSet& b, const PointSet& c);

/// Snap to a grid of cell size eps, keep the first point seen per cell.
/// Guarantees hausdorff(s, result) <= eps * sqrt(dim).
PointSet decimate(const PointSet& s, double eps);

/// Collapse points whose coordinates all agree within tol (keep-first).
PointSet dedup(const PointSet& s, double tol = 1e-12);

/// Max pairwise Euclidean distance.
double diameter(const PointSet& s);

}  // namespace sfs
