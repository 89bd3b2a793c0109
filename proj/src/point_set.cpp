#include "sfs/point_set.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "sfs/parallel.hpp"

namespace sfs {

PointSet::PointSet(int dim) : dim_(dim) {
    if (dim < 1) throw Error("PointSet: dimension must be >= 1");
}

PointSet::PointSet(int dim, std::vector<double> flat) : dim_(dim), xs_(std::move(flat)) {
    if (dim < 1) throw Error("PointSet: dimension must be >= 1");
    if (xs_.size() % dim_ != 0) throw Error("PointSet: flat size not a multiple of dim");
}

PointSet PointSet::single(Vec p) {
    const int dim = static_cast<int>(p.size());
    return PointSet(dim, std::move(p));
}

PointSet PointSet::from_points(int dim, const std::vector<Vec>& pts) {
    PointSet s(dim);
    s.reserve(static_cast<int>(pts.size()));
    for (const auto& p : pts) {
        if (static_cast<int>(p.size()) != dim) throw Error("PointSet: point dimension mismatch");
        s.append({p.data(), p.size()});
    }
    return s;
}

PointSet PointSet::from_matrix_rows(const Mat& m) {
    PointSet s(m.cols());
    s.reserve(m.rows());
    for (int r = 0; r < m.rows(); ++r) {
        Vec row = m.row(r);
        s.append({row.data(), row.size()});
    }
    return s;
}

Vec PointSet::point_vec(int i) const {
    auto p = point(i);
    return Vec(p.begin(), p.end());
}

void PointSet::append(std::span<const double> p) {
    if (static_cast<int>(p.size()) != dim_) throw Error("PointSet::append: dimension mismatch");
    xs_.insert(xs_.end(), p.begin(), p.end());
}

void PointSet::validate() const {
    if (empty()) throw Error("PointSet: empty set");
    for (double v : xs_)
        if (!std::isfinite(v)) throw Error("PointSet: non-finite coordinate");
}

double point_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

namespace {

void check_pair(const PointSet& b, const PointSet& c, const char* who) {
    if (b.dim() != c.dim()) throw Error(std::string(who) + ": dimension mismatch");
    if (b.empty() || c.empty()) throw Error(std::string(who) + ": empty set");
}

// Uniform grid over a target set, dim <= 3 only. Queries are exact nearest
// distances; a query may stop early once its running best cannot raise the
// caller's max (the bound), which does not change the final max.
class NearGrid {
public:
    NearGrid(const PointSet& pts) : pts_(&pts), dim_(pts.dim()) {
        lo_.assign(dim_, 0.0);
        Vec hi(dim_, 0.0);
        for (int d = 0; d < dim_; ++d) lo_[d] = hi[d] = pts.point(0)[d];
        for (int i = 1; i < pts.size(); ++i) {
            auto p = pts.point(i);
            for (int d = 0; d < dim_; ++d) {
                lo_[d] = std::min(lo_[d], p[d]);
                hi[d] = std::max(hi[d], p[d]);
            }
        }
        double extent = 0.0;
        for (int d = 0; d < dim_; ++d) extent = std::max(extent, hi[d] - lo_[d]);
        const double per_dim = std::floor(std::pow(static_cast<double>(pts.size()), 1.0 / dim_));
        const double cells = std::clamp(per_dim, 1.0, 1048576.0);
        cell_ = extent > 0.0 ? extent / cells : 1.0;
        cmin_.assign(dim_, 0);
        cmax_.assign(dim_, 0);
        for (int i = 0; i < pts.size(); ++i) {
            long long idx[3];
            cell_index(pts.point(i), idx);
            for (int d = 0; d < dim_; ++d) {
                if (i == 0 || idx[d] < cmin_[d]) cmin_[d] = idx[d];
                if (i == 0 || idx[d] > cmax_[d]) cmax_[d] = idx[d];
            }
            buckets_[pack(idx)].push_back(i);
        }
    }

    double nearest(std::span<const double> q, double bound) const {
        long long center[3];
        cell_index(q, center);
        long long max_ring = 0;
        for (int d = 0; d < dim_; ++d) {
            max_ring = std::max(max_ring, cmax_[d] - center[d]);
            max_ring = std::max(max_ring, center[d] - cmin_[d]);
        }
        double best = std::numeric_limits<double>::infinity();
        for (long long r = 0; r <= max_ring; ++r) {
            scan_ring(q, center, r, best);
            if (best <= bound) return best;
            if (best <= static_cast<double>(r) * cell_) return best;
        }
        return best;
    }

private:
    void cell_index(std::span<const double> q, long long* idx) const {
        for (int d = 0; d < dim_; ++d) idx[d] = static_cast<long long>(std::floor((q[d] - lo_[d]) / cell_));
    }

    uint64_t pack(const long long* idx) const {
        uint64_t k = 0;
        for (int d = 0; d < dim_; ++d) k = k * 0x40000007ULL + static_cast<uint64_t>(idx[d] + (1LL << 24));
        return k;
    }

    void scan_ring(std::span<const double> q, const long long* center, long long r, double& best) const {
        long long bounds[3][2] = {{0, -1}, {0, -1}, {0, -1}};
        for (int d = 0; d < dim_; ++d) {
            bounds[d][0] = std::max(center[d] - r, cmin_[d]);
            bounds[d][1] = std::min(center[d] + r, cmax_[d]);
            if (bounds[d][0] > bounds[d][1]) return;
        }
        auto on_edge = [&](int d, long long v) { return v == center[d] - r || v == center[d] + r; };
        long long idx[3];
        if (dim_ == 1) {
            for (idx[0] = bounds[0][0]; idx[0] <= bounds[0][1]; ++idx[0])
                if (on_edge(0, idx[0]) || r == 0) scan_cell(q, idx, best);
            return;
        }
        for (idx[0] = bounds[0][0]; idx[0] <= bounds[0][1]; ++idx[0]) {
            const bool e0 = on_edge(0, idx[0]);
            if (dim_ == 2) {
                for (idx[1] = bounds[1][0]; idx[1] <= bounds[1][1]; ++idx[1])
                    if (e0 || on_edge(1, idx[1]) || r == 0) scan_cell(q, idx, best);
            } else {
                for (idx[1] = bounds[1][0]; idx[1] <= bounds[1][1]; ++idx[1]) {
                    const bool e1 = on_edge(1, idx[1]);
                    for (idx[2] = bounds[2][0]; idx[2] <= bounds[2][1]; ++idx[2])
                        if (e0 || e1 || on_edge(2, idx[2]) || r == 0) scan_cell(q, idx, best);
                }
            }
        }
    }

    void scan_cell(std::span<const double> q, const long long* idx, double& best) const {
        auto it = buckets_.find(pack(idx));
        if (it == buckets_.end()) return;
        for (int i : it->second) best = std::min(best, point_distance(q, pts_->point(i)));
    }

    const PointSet* pts_;
    int dim_;
    Vec lo_;
    double cell_ = 1.0;
    std::vector<long long> cmin_, cmax_;
    std::unordered_map<uint64_t, std::vector<int>> buckets_;
};

}  // namespace

double directed_distance(const PointSet& b, const PointSet& c) {
    check_pair(b, c, "directed_distance");
    const int nb = b.size(), nc = c.size();
    std::atomic<double> bound{0.0};

    const bool grid_worthwhile =
        c.dim() <= 3 && nc >= 512 && static_cast<long long>(nb) * nc > (1LL << 20);

    if (grid_worthwhile) {
        NearGrid grid(c);
        auto per_point = [&](int i) {
            const double lb = bound.load(std::memory_order_relaxed);
            const double d = grid.nearest(b.point(i), lb);
            double cur = bound.load(std::memory_order_relaxed);
            while (d > cur && !bound.compare_exchange_weak(cur, d, std::memory_order_relaxed)) {}
            return d;
        };
        return parallel_max(nb, per_point);
    }

    auto per_point = [&](int i) {
        auto q = b.point(i);
        const double lb = bound.load(std::memory_order_relaxed);
        double best = std::numeric_limits<double>::infinity();
        for (int j = 0; j < nc; ++j) {
            best = std::min(best, point_distance(q, c.point(j)));
            if (best <= lb) return best;
        }
        double cur = bound.load(std::memory_order_relaxed);
        while (best > cur && !bound.compare_exchange_weak(cur, best, std::memory_order_relaxed)) {}
        return best;
    };
    return parallel_max(nb, per_point);
}

double hausdorff(const PointSet& b, const PointSet& c) {
    check_pair(b, c, "hausdorff");
    return std::max(directed_distance(b, c), directed_distance(c, b));
}

namespace {

// Keyed cell map with collision checks, for decimate/dedup in any dimension.
class CellMap {
public:
    explicit CellMap(int dim) : dim_(dim) {}

    std::vector<long long> cell_of(std::span<const double> p, double eps) const {
        std::vector<long long> c(dim_);
        for (int d = 0; d < dim_; ++d) c[d] = static_cast<long long>(std::floor(p[d] / eps));
        return c;
    }

    // Returns true if the cell was vacant (and claims it).
    bool claim(const std::vector<long long>& cell, int index) {
        auto& bucket = map_[hash(cell)];
        for (const auto& e : bucket)
            if (e.first == cell) return false;
        bucket.emplace_back(cell, index);
        return true;
    }

    const std::pair<std::vector<long long>, int>* find(const std::vector<long long>& cell) const {
        auto it = map_.find(hash(cell));
        if (it == map_.end()) return nullptr;
        for (const auto& e : it->second)
            if (e.first == cell) return &e;
        return nullptr;
    }

    template <typename Fn>
    void for_neighbors(const std::vector<long long>& cell, Fn&& fn) const {
        std::vector<long long> probe(cell);
        neighbor_rec(cell, probe, 0, fn);
    }

private:
    template <typename Fn>
    void neighbor_rec(const std::vector<long long>& cell, std::vector<long long>& probe, int d, Fn&& fn) const {
        if (d == dim_) {
            if (const auto* e = find(probe)) fn(*e);
            return;
        }
        for (long long off = -1; off <= 1; ++off) {
            probe[d] = cell[d] + off;
            neighbor_rec(cell, probe, d + 1, fn);
        }
        probe[d] = cell[d];
    }

    static uint64_t hash(const std::vector<long long>& cell) {
        uint64_t h = 0x9E3779B97F4A7C15ULL;
        for (long long v : cell) {
            h ^= static_cast<uint64_t>(v) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }

    int dim_;
    std::unordered_map<uint64_t, std::vector<std::pair<std::vector<long long>, int>>> map_;
};

}  // namespace

PointSet decimate(const PointSet& s, double eps) {
    if (!(eps > 0.0)) throw Error("decimate: eps must be > 0");
    if (s.empty()) return s;
    CellMap cells(s.dim());
    PointSet out(s.dim());
    for (int i = 0; i < s.size(); ++i) {
        auto p = s.point(i);
        if (cells.claim(cells.cell_of(p, eps), i)) out.append(p);
    }
    return out;
}

PointSet dedup(const PointSet& s, double tol) {
    if (s.empty()) return s;
    if (!(tol > 0.0)) return s;
    CellMap cells(s.dim());
    PointSet out(s.dim());
    for (int i = 0; i < s.size(); ++i) {
        auto p = s.point(i);
        const auto cell = cells.cell_of(p, tol);
        bool duplicate = false;
        cells.for_neighbors(cell, [&](const auto& entry) {
            if (duplicate) return;
            auto kept = out.point(entry.second);
            for (int d = 0; d < s.dim(); ++d)
                if (std::fabs(kept[d] - p[d]) > tol) return;
            duplicate = true;
        });
        if (!duplicate) {
            const int kept_index = out.size();
            out.append(p);
            cells.claim(cell, kept_index);
        }
    }
    return out;
}

double diameter(const PointSet& s) {
    if (s.empty()) throw Error("diameter: empty set");
    double best = 0.0;
    for (int i = 0; i < s.size(); ++i)
        for (int j = i + 1; j < s.size(); ++j)
            best = std::max(best, point_distance(s.point(i), s.point(j)));
    return best;
}

}  // namespace sfs
