#pragma once

#include <filesystem>
#include <string>

#include "sfs/point_set.hpp"

namespace sfs {

/// CSV, one point per row, columns = coordinates, no header.
/// Readers reject ragged rows, non-numeric fields and empty files.
PointSet read_csv_points(const std::filesystem::path& path);

std::string csv_string(const PointSet& s);

/// Fixed 800x800 viewport, bounding box auto-fit with a 5% margin, 1px dots.
/// Points beyond the first two coordinates are dropped; 1-D sets render on
/// the x axis.
std::string svg_scatter(const PointSet& s);

std::string json_points_string(const PointSet& s);

/// Write via temp file + rename so readers never see partial output.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// %.17g, round-trip safe.
std::string format_double(double v);

}  // namespace sfs
