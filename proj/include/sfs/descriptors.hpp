#pragma once

#include <filesystem>

#include <json.hpp>

#include "sfs/catalog.hpp"

namespace sfs {

using json = nlohmann::json;

/// {dim, maps:[{A: row-major, b: array}], label?}
json system_to_json(const FunctionSystem& f);
FunctionSystem system_from_json(const json& j);

/// {kind:"constant", system:...} | {kind:"periodic", systems:[...],
/// block_lengths:[...]} | {kind:"catalog", name:..., params:{...}, seed?}
SfsSchedule schedule_from_json(const json& j);

/// {offset: int, coeffs: [reals]}
json mask_to_json(const Mask& m);
Mask mask_from_json(const json& j);

/// JSON mask file or Laurent text file ("a(z) = ...").
Mask load_mask_file(const std::filesystem::path& path);

/// {n, m, p0: [[...]], fill: "h-pattern"}; p0 omitted or empty builds H.
LiftMatrix lift_from_json(const json& j);

json load_json_file(const std::filesystem::path& path);

}  // namespace sfs
