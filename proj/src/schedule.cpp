#include "sfs/schedule.hpp"

namespace sfs {

SfsSchedule::SfsSchedule(int dim, std::string description, std::function<FunctionSystem(int)> gen,
                         int period)
    : dim_(dim), description_(std::move(description)), period_(period),
      state_(std::make_shared<State>()) {
    if (dim_ < 1) throw Error("SfsSchedule: dimension must be >= 1");
    state_->gen = std::move(gen);
}

const FunctionSystem& SfsSchedule::system(int k) const {
    if (k < 1) throw Error("SfsSchedule: level must be >= 1");
    std::lock_guard<std::mutex> lock(state_->mu);
    auto it = state_->systems.find(k);
    if (it == state_->systems.end()) {
        FunctionSystem f = state_->gen(k);
        if (f.dim() != dim_) throw Error("SfsSchedule: generated system has wrong dimension");
        it = state_->systems.emplace(k, std::move(f)).first;
    }
    return it->second;
}

double SfsSchedule::factor(int k) const {
    std::function<double(int)> fn;
    {
        std::lock_guard<std::mutex> lock(state_->mu);
        auto it = state_->factors.find(k);
        if (it != state_->factors.end()) return it->second;
        fn = state_->factor_fn;
    }
    // computed outside the lock; deterministic generators make a duplicate
    // computation under a race identical, so first-write-wins is safe
    const double v = fn ? fn(k) : contraction_factor(system(k));
    std::lock_guard<std::mutex> lock(state_->mu);
    return state_->factors.emplace(k, v).first->second;
}

void SfsSchedule::set_factor_fn(std::function<double(int)> fn) {
    std::lock_guard<std::mutex> lock(state_->mu);
    state_->factor_fn = std::move(fn);
    state_->factors.clear();
}

SfsSchedule SfsSchedule::constant(FunctionSystem f, std::string description) {
    const int dim = f.dim();
    if (description.empty()) description = "constant:" + f.label();
    return SfsSchedule(dim, std::move(description),
                       [f = std::move(f)](int) { return f; }, 1);
}

}  // namespace sfs
