#pragma once

// JSON point-set files and atomic output.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dnormal/geometry.hpp"
#include "dnormal/point_set.hpp"

namespace dnormal {

class FormatError : public Error {
 public:
  using Error::Error;
};

/// {"dim": d, "points": [[...], ...], "classes": [[i, ...], ...],
///  "provenance": {...}}; classes and provenance are optional.
struct PointSetFile {
  std::size_t dim = 0;
  std::vector<Point> points;
  std::optional<std::vector<std::vector<std::size_t>>> classes;
  nlohmann::json provenance;  // null when absent

  PointSet point_set() const { return PointSet(dim, points); }
};

/// Throws FormatError on malformed input.
PointSetFile parse_point_set(const std::string& text);
PointSetFile read_point_set(const std::filesystem::path& path);

nlohmann::json to_json(const PointSetFile& f);
/// Doubles are written in shortest round-trip form, so re-reading gives
/// bit-identical coordinates.
std::string dump_point_set(const PointSetFile& f);
void write_point_set(const std::filesystem::path& path, const PointSetFile& f);

/// Writes to a temporary sibling file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

std::string read_text(const std::filesystem::path& path);

}  // namespace dnormal
