#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "sfs/affine_system.hpp"
#include "sfs/mask.hpp"

namespace sfs {

/// Extra context carried by schedules built from a subdivision lift:
/// the basis matrix, dimensions, and source masks. Lets callers project
/// outputs back to R^m and pick the natural starting set (rows of the
/// basis matrix).
struct LiftedContext {
    Mat basis;                 // P or H, n x n, last column ones
    int n = 0;
    int m = 0;                 // embedded control-point dimension (0 for H)
    bool constants_reproduced = false;
    MaskSequence masks;
    PointSet start = PointSet(1);  // rows of basis as points in R^n
};

/// A sequence of function systems {F_k}, k >= 1, all of one dimension.
/// The generator must be deterministic in k; systems and contraction
/// factors are memoized behind a mutex.
class SfsSchedule {
public:
    SfsSchedule(int dim, std::string description, std::function<FunctionSystem(int)> gen,
                int period = 0);

    const FunctionSystem& system(int k) const;

    /// Contraction factor L_{F_k}. Defaults to contraction_factor(system(k));
    /// lifted schedules override it with the norm on the invariant flat.
    double factor(int k) const;
    void set_factor_fn(std::function<double(int)> fn);

    int dim() const { return dim_; }
    const std::string& description() const { return description_; }
    int period() const { return period_; }

    std::shared_ptr<const LiftedContext> lifted() const { return lifted_; }
    void set_lifted(std::shared_ptr<const LiftedContext> ctx) { lifted_ = std::move(ctx); }

    static SfsSchedule constant(FunctionSystem f, std::string description = "");

private:
    struct State {
        std::function<FunctionSystem(int)> gen;
        std::function<double(int)> factor_fn;
        mutable std::mutex mu;
        mutable std::map<int, FunctionSystem> systems;
        mutable std::map<int, double> factors;
    };
    int dim_;
    std::string description_;
    int period_;
    std::shared_ptr<State> state_;
    std::shared_ptr<const LiftedContext> lifted_;
};

}  // namespace sfs
