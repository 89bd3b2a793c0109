#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "sfs/lift.hpp"

namespace sfs {

/// Mask of the cubic B-spline scheme: (1+z)^4/8.
Mask cubic_bspline_mask();

/// Stationary 4-point mask with tension w: -w(z^-3+z^3)+(0.5+w)(z^-1+z)+1.
/// w = 1/16 is the classical interpolatory scheme.
Mask fourpoint_mask(double w);

/// Level-dependent masks a^[k](z) = b_k (1+z)(1+c_k z)^3 with
/// c_k = exp(lambda 2^{-k-1}), b_k = 1/(1+c_k)^3. Generates exponential
/// splines; converges to the cubic mask as k grows.
MaskSequence exponential_spline_masks(double lambda);

/// 4-point masks with w_k drawn uniformly from [-b, b] by the pinned
/// SplitMix64 stream (see rng.hpp); level k uses draw k.
MaskSequence random_fourpoint_masks(double b, uint64_t seed);

/// The four similitudes of ratio 1/3 mapping the unit segment onto the
/// Koch generator.
FunctionSystem koch_ifs();

/// {x/3, x/3 + 2/3} on R.
FunctionSystem cantor_ifs();

/// {x/2, x/2 + 1/2} on R; attractor [0,1].
FunctionSystem interval_ifs();

/// Default control polygons used by the lifted catalog schemes.
PointSet default_cubic_polygon(int n);
PointSet default_fourpoint_polygon();

/// The two-map lifted system on R^n from the cubic slices and the default
/// control polygon; its attractor projects to the cubic spline curve.
FunctionSystem cubic_spline_fs(int n);

/// The planar two-map system used for the cubic blocks of the hidden
/// fractal: the lifted cubic slice maps (default polygon, n = 5)
/// conjugated to R^2 through the section p -> (p_x, p_y, 0, 0, 1) and the
/// first-two-coordinates projection.
FunctionSystem cubic_plane_pair();

/// Alternating blocks of the planar cubic pair and the Koch system
/// (block levels each, period 2*block). Backward trajectories converge to
/// a set that is smooth at large scales and Koch-like at small ones.
SfsSchedule hidden_fractal_schedule(int block = 5);

/// T_odd = x/2, T_even = x/2 + c on R. Backward trajectories converge to
/// 2c/3; forward trajectories oscillate between 2c/3 and 4c/3.
SfsSchedule alternating_halves_schedule(double c);

/// SFS bridges of the mask families through the default lifts.
SfsSchedule exponential_spline_schedule(double lambda, int n = 5,
                                        const PointSet* polygon = nullptr);
SfsSchedule random_fourpoint_schedule(double b, uint64_t seed, int n = 6,
                                      const PointSet* polygon = nullptr);
SfsSchedule cubic_spline_schedule(int n = 5, const PointSet* polygon = nullptr);

// ---- registry ------------------------------------------------------------

struct CatalogParam {
    std::string name;
    double value;    // default
    bool required;
};

struct CatalogEntry {
    std::string name;
    std::string kind;  // mask | mask_sequence | function_system | schedule
    std::string doc;
    std::vector<CatalogParam> params;
    bool seeded;
};

const std::vector<CatalogEntry>& catalog_entries();

/// "name" or "name:key=val,key=val". seed is picked out of the params.
struct CatalogRef {
    std::string name;
    std::map<std::string, double> params;
    std::optional<uint64_t> seed;

    double get(const std::string& key, double fallback) const;
};

CatalogRef parse_catalog_ref(const std::string& text);

Mask catalog_mask(const CatalogRef& ref);
MaskSequence catalog_mask_sequence(const CatalogRef& ref);
FunctionSystem catalog_system(const CatalogRef& ref);
/// Schedules by name; mask-sequence names bridge through their default
/// lift (n and polygon overridable), function-system names become constant
/// schedules.
SfsSchedule catalog_schedule(const CatalogRef& ref, const PointSet* polygon = nullptr);

}  // namespace sfs
