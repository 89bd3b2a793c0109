#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "sfs/point_set.hpp"

namespace sfs {

/// Binary subdivision mask with explicit integer support
/// {offset, ..., offset + size - 1}. Support is kept tight: construction
/// trims exact-zero ends and rejects all-zero masks.
class Mask {
public:
    Mask(int offset, std::vector<double> coeffs);

    int offset() const { return offset_; }
    int size() const { return static_cast<int>(coeffs_.size()); }
    int min_index() const { return offset_; }
    int max_index() const { return offset_ + size() - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    /// Coefficient at absolute index j, 0 outside the support.
    double at(int j) const {
        const int k = j - offset_;
        return (k >= 0 && k < size()) ? coeffs_[k] : 0.0;
    }

    /// Centered view: odd-sized masks sit on {-l..l}, even-sized on
    /// {-l+1..l}. Slice extraction and refinement windows use this
    /// normalization; shifting a mask never changes the refined sequence.
    struct Centered {
        bool odd;
        int ell;
        int shift;  // centered index = stored index - shift
    };
    Centered centered() const;

    bool operator==(const Mask& o) const = default;

private:
    int offset_;
    std::vector<double> coeffs_;
};

struct ConstantReproduction {
    bool ok;
    double even_sum;
    double odd_sum;
};

/// True iff both parity sums equal 1 within 1e-12 (Se = e).
ConstantReproduction check_constant_reproduction(const Mask& m);

/// One refinement step p_i' = sum_j a_{i-2j} p_j on finite data. Only
/// output indices whose centered stencil interval lies inside the data are
/// produced (no extrapolation, no periodization); this window is exactly
/// the one the slice matrices S1/S2 tile, so slice products and direct
/// refinement agree. Throws when no output index qualifies.
PointSet refine(const Mask& m, const PointSet& p);

/// Level-dependent masks a^[k], k >= 1, all with the same support size.
class MaskSequence {
public:
    MaskSequence() = default;
    MaskSequence(int support_size, std::string description, std::function<Mask(int)> gen);

    /// Mask at level k (1-based); memoized, thread-safe.
    const Mask& mask(int k) const;

    int support_size() const { return support_size_; }
    const std::string& description() const { return description_; }
    bool valid() const { return static_cast<bool>(state_); }

    static MaskSequence constant(const Mask& m, std::string description = "");

private:
    struct State {
        int support_size;
        std::string description;
        std::function<Mask(int)> gen;
        mutable std::mutex mu;
        mutable std::map<int, Mask> cache;
    };
    std::shared_ptr<State> state_;
    int support_size_ = 0;
    std::string description_;
};

/// Laurent text form, e.g. "a(z) = 1/8 + 1/2*z + 3/4*z^2 + 1/2*z^3 + 1/8*z^4"
/// or "-0.0625*z^-3 + 0.5625*z^-1 + 1 + ...". Integer exponents, optional
/// "name =" prefix, coefficients as decimals or simple fractions.
Mask parse_laurent_mask(const std::string& text);

}  // namespace sfs
