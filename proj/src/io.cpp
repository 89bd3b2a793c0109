#include "sfs/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sfs {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

PointSet read_csv_points(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path.string());
    std::string line;
    int dim = -1;
    std::vector<Vec> rows;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        Vec row;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            errno = 0;
            char* end = nullptr;
            const double v = std::strtod(field.c_str(), &end);
            while (end && *end == ' ') ++end;
            if (end == field.c_str() || (end && *end != '\0') || errno == ERANGE || !std::isfinite(v))
                throw Error(path.string() + ":" + std::to_string(lineno) + ": bad numeric field '" + field + "'");
            row.push_back(v);
        }
        if (row.empty())
            throw Error(path.string() + ":" + std::to_string(lineno) + ": empty row");
        if (dim == -1) dim = static_cast<int>(row.size());
        if (static_cast<int>(row.size()) != dim)
            throw Error(path.string() + ":" + std::to_string(lineno) + ": ragged row (expected " +
                        std::to_string(dim) + " columns)");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error(path.string() + ": no points");
    return PointSet::from_points(dim, rows);
}

std::string csv_string(const PointSet& s) {
    std::string out;
    out.reserve(static_cast<size_t>(s.size()) * s.dim() * 20);
    for (int i = 0; i < s.size(); ++i) {
        auto p = s.point(i);
        for (int d = 0; d < s.dim(); ++d) {
            if (d) out += ',';
            out += format_double(p[d]);
        }
        out += '\n';
    }
    return out;
}

std::string svg_scatter(const PointSet& s) {
    const double view = 800.0;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (!s.empty()) {
        xmin = xmax = s.point(0)[0];
        ymin = ymax = s.dim() > 1 ? s.point(0)[1] : 0.0;
        for (int i = 0; i < s.size(); ++i) {
            auto p = s.point(i);
            const double x = p[0], y = s.dim() > 1 ? p[1] : 0.0;
            xmin = std::min(xmin, x); xmax = std::max(xmax, x);
            ymin = std::min(ymin, y); ymax = std::max(ymax, y);
        }
    }
    double w = xmax - xmin, h = ymax - ymin;
    if (w <= 0) w = 1;
    if (h <= 0) h = 1;
    const double margin = 0.05;
    const double scale = (view * (1 - 2 * margin)) / std::max(w, h);
    const double x0 = xmin - (view * margin) / scale;
    const double y1 = ymax + (view * margin) / scale;

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
           "viewBox=\"0 0 800 800\">\n";
    out += "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    for (int i = 0; i < s.size(); ++i) {
        auto p = s.point(i);
        const double x = p[0], y = s.dim() > 1 ? p[1] : 0.0;
        const double px = (x - x0) * scale;
        const double py = (y1 - y) * scale;  // svg y grows downward
        out += "<circle cx=\"" + format_double(px) + "\" cy=\"" + format_double(py) +
               "\" r=\"0.5\" fill=\"black\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string json_points_string(const PointSet& s) {
    nlohmann::json j;
    j["dim"] = s.dim();
    auto pts = nlohmann::json::array();
    for (int i = 0; i < s.size(); ++i) {
        auto row = nlohmann::json::array();
        for (double v : s.point(i)) row.push_back(v);
        pts.push_back(std::move(row));
    }
    j["points"] = std::move(pts);
    return j.dump(2) + "\n";
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write file: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

}  // namespace sfs
