#include "sfs/descriptors.hpp"

#include <fstream>
#include <sstream>

namespace sfs {

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw Error(path.string() + ": " + e.what());
    }
    return j;
}

json system_to_json(const FunctionSystem& f) {
    json j;
    j["dim"] = f.dim();
    auto maps = json::array();
    for (const auto& m : f.maps()) {
        json jm;
        jm["A"] = m.a.data();
        jm["b"] = m.b;
        maps.push_back(std::move(jm));
    }
    j["maps"] = std::move(maps);
    if (!f.label().empty()) j["label"] = f.label();
    return j;
}

FunctionSystem system_from_json(const json& j) {
    if (!j.contains("dim") || !j.contains("maps"))
        throw Error("function system descriptor: need fields 'dim' and 'maps'");
    const int dim = j.at("dim").get<int>();
    if (dim < 1) throw Error("function system descriptor: dim must be >= 1");
    std::vector<AffineMap> maps;
    for (const auto& jm : j.at("maps")) {
        const auto a_flat = jm.at("A").get<std::vector<double>>();
        const auto b = jm.at("b").get<std::vector<double>>();
        if (static_cast<int>(a_flat.size()) != dim * dim)
            throw Error("function system descriptor: A must have dim*dim entries (row-major)");
        if (static_cast<int>(b.size()) != dim)
            throw Error("function system descriptor: b must have dim entries");
        Mat a(dim, dim);
        a.data() = a_flat;
        maps.emplace_back(std::move(a), b);
    }
    if (maps.empty()) throw Error("function system descriptor: needs at least one map");
    return FunctionSystem(dim, std::move(maps), j.value("label", std::string{}));
}

SfsSchedule schedule_from_json(const json& j) {
    const std::string kind = j.value("kind", "");
    if (kind == "constant") {
        return SfsSchedule::constant(system_from_json(j.at("system")),
                                     j.value("label", std::string{}));
    }
    if (kind == "periodic") {
        std::vector<FunctionSystem> systems;
        for (const auto& js : j.at("systems")) systems.push_back(system_from_json(js));
        if (systems.empty()) throw Error("schedule descriptor: no systems");
        std::vector<int> lengths = j.value("block_lengths", std::vector<int>{});
        if (lengths.empty()) lengths.assign(systems.size(), 1);
        if (lengths.size() != systems.size())
            throw Error("schedule descriptor: block_lengths size != systems size");
        int period = 0;
        for (int l : lengths) {
            if (l < 1) throw Error("schedule descriptor: block lengths must be >= 1");
            period += l;
        }
        const int dim = systems[0].dim();
        auto gen = [systems, lengths, period](int k) {
            int phase = (k - 1) % period;
            for (size_t i = 0; i < systems.size(); ++i) {
                if (phase < lengths[i]) return systems[i];
                phase -= lengths[i];
            }
            return systems.back();
        };
        return SfsSchedule(dim, j.value("label", std::string("periodic")), gen, period);
    }
    if (kind == "catalog") {
        CatalogRef ref;
        ref.name = j.at("name").get<std::string>();
        if (j.contains("params"))
            for (auto& [key, value] : j.at("params").items()) {
                if (key == "seed")
                    ref.seed = value.get<uint64_t>();
                else
                    ref.params[key] = value.get<double>();
            }
        if (j.contains("seed")) ref.seed = j.at("seed").get<uint64_t>();
        return catalog_schedule(ref);
    }
    throw Error("schedule descriptor: kind must be constant | periodic | catalog");
}

json mask_to_json(const Mask& m) {
    json j;
    j["offset"] = m.offset();
    j["coeffs"] = m.coeffs();
    return j;
}

Mask mask_from_json(const json& j) {
    if (!j.contains("offset") || !j.contains("coeffs"))
        throw Error("mask descriptor: need fields 'offset' and 'coeffs'");
    return Mask(j.at("offset").get<int>(), j.at("coeffs").get<std::vector<double>>());
}

Mask load_mask_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    // JSON object or Laurent text
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') return mask_from_json(json::parse(text));
        break;
    }
    return parse_laurent_mask(text);
}

LiftMatrix lift_from_json(const json& j) {
    const int n = j.at("n").get<int>();
    const std::string fill = j.value("fill", "h-pattern");
    if (fill != "h-pattern")
        throw Error("lift descriptor: only the h-pattern fill is supported");
    if (!j.contains("p0") || j.at("p0").empty()) return LiftMatrix::build_h(n);
    const int m = j.value("m", 0);
    std::vector<Vec> rows;
    for (const auto& row : j.at("p0")) rows.push_back(row.get<Vec>());
    PointSet p0 = PointSet::from_points(m > 0 ? m : static_cast<int>(rows[0].size()), rows);
    if (p0.size() != n) throw Error("lift descriptor: p0 must have n points");
    return LiftMatrix::build_p(p0);
}

}  // namespace sfs
