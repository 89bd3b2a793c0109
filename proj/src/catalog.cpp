#include "sfs/catalog.hpp"

#include <cmath>

#include "sfs/rng.hpp"

namespace sfs {

Mask cubic_bspline_mask() {
    return Mask(0, {1.0 / 8, 1.0 / 2, 3.0 / 4, 1.0 / 2, 1.0 / 8});
}

Mask fourpoint_mask(double w) {
    if (w == 0.0) return Mask(-1, {0.5, 1.0, 0.5});
    return Mask(-3, {-w, 0.0, 0.5 + w, 1.0, 0.5 + w, 0.0, -w});
}

MaskSequence exponential_spline_masks(double lambda) {
    if (!std::isfinite(lambda)) throw Error("exponential_spline_masks: lambda must be finite");
    auto gen = [lambda](int k) {
        const double c = std::exp(lambda * std::pow(2.0, -k - 1));
        const double b = 1.0 / ((1.0 + c) * (1.0 + c) * (1.0 + c));
        // b (1+z)(1+cz)^3 expanded
        return Mask(0, {b, b * (1.0 + 3.0 * c), b * (3.0 * c + 3.0 * c * c),
                        b * (3.0 * c * c + c * c * c), b * c * c * c});
    };
    return MaskSequence(5, "expspline(lambda=" + std::to_string(lambda) + ")", gen);
}

MaskSequence random_fourpoint_masks(double b, uint64_t seed) {
    if (b < 0.0) throw Error("random_fourpoint_masks: b must be >= 0");
    const int support = b == 0.0 ? 3 : 7;
    auto gen = [b, seed](int k) {
        const double w = uniform_pm_at(b, seed, static_cast<uint64_t>(k));
        return fourpoint_mask(w);
    };
    return MaskSequence(support,
                        "random4pt(b=" + std::to_string(b) + ",seed=" + std::to_string(seed) + ")",
                        gen);
}

FunctionSystem koch_ifs() {
    const double s3 = std::sqrt(3.0);
    auto rot_scaled = [&](double cos_v, double sin_v) {
        Mat a(2, 2);
        a(0, 0) = cos_v / 3.0;
        a(0, 1) = -sin_v / 3.0;
        a(1, 0) = sin_v / 3.0;
        a(1, 1) = cos_v / 3.0;
        return a;
    };
    std::vector<AffineMap> maps;
    maps.emplace_back(rot_scaled(1.0, 0.0), Vec{0.0, 0.0});
    maps.emplace_back(rot_scaled(0.5, s3 / 2.0), Vec{1.0 / 3.0, 0.0});
    maps.emplace_back(rot_scaled(0.5, -s3 / 2.0), Vec{0.5, s3 / 6.0});
    maps.emplace_back(rot_scaled(1.0, 0.0), Vec{2.0 / 3.0, 0.0});
    return FunctionSystem(2, std::move(maps), "koch");
}

FunctionSystem cantor_ifs() {
    std::vector<AffineMap> maps;
    maps.push_back(AffineMap::scalar(1.0 / 3.0, 0.0));
    maps.push_back(AffineMap::scalar(1.0 / 3.0, 2.0 / 3.0));
    return FunctionSystem(1, std::move(maps), "cantor");
}

FunctionSystem interval_ifs() {
    std::vector<AffineMap> maps;
    maps.push_back(AffineMap::scalar(0.5, 0.0));
    maps.push_back(AffineMap::scalar(0.5, 0.5));
    return FunctionSystem(1, std::move(maps), "interval");
}

PointSet default_cubic_polygon(int n) {
    if (n < 5) throw Error("default_cubic_polygon: need n >= 5");
    static const double base_y[5] = {0.0, 2.0, -1.0, 1.0, 0.0};
    PointSet p(2);
    for (int i = 0; i < n; ++i) {
        const double xy[2] = {static_cast<double>(i), base_y[i % 5]};
        p.append(xy);
    }
    return p;
}

PointSet default_fourpoint_polygon() {
    return PointSet::from_points(2, {{0, 2}, {1, 1}, {2, 1}, {3, 2}, {2, 4}, {1, 4}});
}

FunctionSystem cubic_spline_fs(int n) {
    if (n < 5) throw Error("cubic_spline_fs: need n >= 5");
    const LiftMatrix p = LiftMatrix::build_p(default_cubic_polygon(n));
    const SliceMatrices s = slice_matrices(cubic_bspline_mask(), n);
    std::vector<AffineMap> maps;
    maps.push_back(AffineMap::linear(lift(s.s1, p).m.transposed()));
    maps.push_back(AffineMap::linear(lift(s.s2, p).m.transposed()));
    return FunctionSystem(n, std::move(maps), "cubic_spline(n=" + std::to_string(n) + ")");
}

FunctionSystem cubic_plane_pair() {
    const LiftMatrix p = LiftMatrix::build_p(default_cubic_polygon(5));
    const SliceMatrices s = slice_matrices(cubic_bspline_mask(), 5);
    std::vector<AffineMap> maps;
    for (const Mat* slice : {&s.s1, &s.s2}) {
        const Mat m = lift(*slice, p).m;
        Mat a(2, 2);
        a(0, 0) = m(0, 0);
        a(0, 1) = m(1, 0);
        a(1, 0) = m(0, 1);
        a(1, 1) = m(1, 1);
        Vec b{m(4, 0), m(4, 1)};
        maps.emplace_back(std::move(a), std::move(b));
    }
    return FunctionSystem(2, std::move(maps), "cubic_plane_pair");
}

SfsSchedule hidden_fractal_schedule(int block) {
    if (block < 1) throw Error("hidden_fractal_schedule: block must be >= 1");
    const FunctionSystem cubic = cubic_plane_pair();
    const FunctionSystem koch = koch_ifs();
    const int period = 2 * block;
    auto gen = [cubic, koch, block, period](int k) {
        const int phase = ((k - 1) % period);
        return phase < block ? cubic : koch;
    };
    return SfsSchedule(2, "hidden_fractal(block=" + std::to_string(block) + ")", gen, period);
}

SfsSchedule alternating_halves_schedule(double c) {
    const FunctionSystem halve(1, {AffineMap::scalar(0.5, 0.0)}, "halve");
    const FunctionSystem halve_shift(1, {AffineMap::scalar(0.5, c)}, "halve_shift");
    auto gen = [halve, halve_shift](int k) { return k % 2 == 1 ? halve : halve_shift; };
    return SfsSchedule(1, "alternating(c=" + std::to_string(c) + ")", gen, 2);
}

namespace {

SfsSchedule bridge(const MaskSequence& masks, int n, const PointSet* polygon,
                   const PointSet& fallback_polygon) {
    const PointSet& poly = polygon ? *polygon : fallback_polygon;
    if (poly.size() != n)
        throw Error("schedule bridge: control polygon has " + std::to_string(poly.size()) +
                    " points, expected n = " + std::to_string(n));
    return sfs_from_subdivision(masks, LiftMatrix::build_p(poly), n);
}

}  // namespace

SfsSchedule exponential_spline_schedule(double lambda, int n, const PointSet* polygon) {
    return bridge(exponential_spline_masks(lambda), n, polygon, default_cubic_polygon(n));
}

SfsSchedule random_fourpoint_schedule(double b, uint64_t seed, int n, const PointSet* polygon) {
    const PointSet fallback = n == 6 ? default_fourpoint_polygon() : default_cubic_polygon(n);
    return bridge(random_fourpoint_masks(b, seed), n, polygon, fallback);
}

SfsSchedule cubic_spline_schedule(int n, const PointSet* polygon) {
    return bridge(MaskSequence::constant(cubic_bspline_mask(), "cubic"), n, polygon,
                  default_cubic_polygon(n));
}

// ---- registry ------------------------------------------------------------

const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> entries = {
        {"cubic", "mask", "cubic B-spline mask (1+z)^4/8", {}, false},
        {"fourpoint", "mask", "stationary 4-point mask with tension w",
         {{"w", 1.0 / 16, false}}, false},
        {"expspline", "mask_sequence", "exponential-spline masks b_k(1+z)(1+c_k z)^3",
         {{"lambda", 3.0, false}, {"n", 5.0, false}}, false},
        {"random4pt", "mask_sequence", "4-point masks with w_k uniform in [-b,b]",
         {{"b", 0.4, false}, {"n", 6.0, false}}, true},
        {"koch", "function_system", "four similitudes of the Koch generator", {}, false},
        {"cantor", "function_system", "{x/3, x/3+2/3}", {}, false},
        {"interval", "function_system", "{x/2, x/2+1/2}", {}, false},
        {"cubic_spline", "function_system", "lifted cubic slice maps on R^n",
         {{"n", 5.0, false}}, false},
        {"hidden_fractal", "schedule", "alternating cubic-plane and Koch blocks",
         {{"block", 5.0, false}}, false},
        {"alternating", "schedule", "T_odd = x/2, T_even = x/2 + c on R",
         {{"c", 3.0, false}}, false},
    };
    return entries;
}

double CatalogRef::get(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

CatalogRef parse_catalog_ref(const std::string& text) {
    CatalogRef ref;
    const auto colon = text.find(':');
    ref.name = text.substr(0, colon);
    if (ref.name.empty()) throw Error("catalog ref: empty name");
    if (colon == std::string::npos) return ref;
    std::string rest = text.substr(colon + 1);
    size_t pos = 0;
    while (pos < rest.size()) {
        auto end = rest.find(',', pos);
        if (end == std::string::npos) end = rest.size();
        const std::string pair = rest.substr(pos, end - pos);
        const auto eq = pair.find('=');
        if (eq == std::string::npos || eq == 0)
            throw Error("catalog ref: expected key=value, got '" + pair + "'");
        const std::string key = pair.substr(0, eq);
        const std::string value = pair.substr(eq + 1);
        try {
            if (key == "seed")
                ref.seed = static_cast<uint64_t>(std::stoull(value));
            else
                ref.params[key] = std::stod(value);
        } catch (const std::exception&) {
            throw Error("catalog ref: bad value '" + value + "' for key '" + key + "'");
        }
        pos = end + 1;
    }
    return ref;
}

namespace {

[[noreturn]] void unknown(const std::string& name, const std::string& kind) {
    throw Error("catalog: no " + kind + " named '" + name + "'");
}

}  // namespace

Mask catalog_mask(const CatalogRef& ref) {
    if (ref.name == "cubic") return cubic_bspline_mask();
    if (ref.name == "fourpoint") return fourpoint_mask(ref.get("w", 1.0 / 16));
    unknown(ref.name, "mask");
}

MaskSequence catalog_mask_sequence(const CatalogRef& ref) {
    if (ref.name == "expspline") return exponential_spline_masks(ref.get("lambda", 3.0));
    if (ref.name == "random4pt")
        return random_fourpoint_masks(ref.get("b", 0.4), ref.seed.value_or(1));
    if (ref.name == "cubic") return MaskSequence::constant(cubic_bspline_mask(), "cubic");
    if (ref.name == "fourpoint")
        return MaskSequence::constant(fourpoint_mask(ref.get("w", 1.0 / 16)), "fourpoint");
    unknown(ref.name, "mask sequence");
}

FunctionSystem catalog_system(const CatalogRef& ref) {
    if (ref.name == "koch") return koch_ifs();
    if (ref.name == "cantor") return cantor_ifs();
    if (ref.name == "interval") return interval_ifs();
    if (ref.name == "cubic_spline") return cubic_spline_fs(static_cast<int>(ref.get("n", 5)));
    unknown(ref.name, "function system");
}

SfsSchedule catalog_schedule(const CatalogRef& ref, const PointSet* polygon) {
    if (ref.name == "hidden_fractal")
        return hidden_fractal_schedule(static_cast<int>(ref.get("block", 5)));
    if (ref.name == "alternating") return alternating_halves_schedule(ref.get("c", 3.0));
    if (ref.name == "expspline")
        return exponential_spline_schedule(ref.get("lambda", 3.0),
                                           static_cast<int>(ref.get("n", 5)), polygon);
    if (ref.name == "random4pt")
        return random_fourpoint_schedule(ref.get("b", 0.4), ref.seed.value_or(1),
                                         static_cast<int>(ref.get("n", 6)), polygon);
    if (ref.name == "cubic")
        return cubic_spline_schedule(static_cast<int>(ref.get("n", 5)), polygon);
    if (ref.name == "koch" || ref.name == "cantor" || ref.name == "interval" ||
        ref.name == "cubic_spline")
        return SfsSchedule::constant(catalog_system(ref));
    unknown(ref.name, "schedule");
}

}  // namespace sfs
