#include "dnormal/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

namespace dnormal {

using nlohmann::json;

PointSetFile parse_point_set(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("point-set file must be a JSON object");
  PointSetFile f;

  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long long>() <= 0) {
    throw FormatError("\"dim\" must be a positive integer");
  }
  f.dim = j["dim"].get<std::size_t>();

  if (!j.contains("points") || !j["points"].is_array() || j["points"].empty()) {
    throw FormatError("\"points\" must be a nonempty array");
  }
  for (const json& p : j["points"]) {
    if (!p.is_array() || p.size() != f.dim) {
      throw FormatError("every point must be an array of " + std::to_string(f.dim) + " numbers");
    }
    Point q;
    for (const json& x : p) {
      if (!x.is_number()) throw FormatError("coordinates must be numbers");
      q.push_back(x.get<double>());
    }
    f.points.push_back(std::move(q));
  }

  if (j.contains("classes") && !j["classes"].is_null()) {
    if (!j["classes"].is_array()) throw FormatError("\"classes\" must be an array of index lists");
    std::set<std::size_t> seen;
    std::vector<std::vector<std::size_t>> classes;
    for (const json& c : j["classes"]) {
      if (!c.is_array()) throw FormatError("each class must be an array of indices");
      std::vector<std::size_t> cls;
      for (const json& x : c) {
        if (!x.is_number_unsigned() && !(x.is_number_integer() && x.get<long long>() >= 0)) {
          throw FormatError("class indices must be nonnegative integers");
        }
        const auto idx = x.get<std::size_t>();
        if (idx >= f.points.size()) throw FormatError("class index out of range");
        if (!seen.insert(idx).second) throw FormatError("classes are not disjoint");
        cls.push_back(idx);
      }
      classes.push_back(std::move(cls));
    }
    f.classes = std::move(classes);
  }
  if (j.contains("provenance")) f.provenance = j["provenance"];
  return f;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

PointSetFile read_point_set(const std::filesystem::path& path) {
  return parse_point_set(read_text(path));
}

json to_json(const PointSetFile& f) {
  json j;
  j["dim"] = f.dim;
  j["points"] = f.points;
  if (f.classes) j["classes"] = *f.classes;
  if (!f.provenance.is_null()) j["provenance"] = f.provenance;
  return j;
}

std::string dump_point_set(const PointSetFile& f) { return to_json(f).dump(1) + "\n"; }

void write_point_set(const std::filesystem::path& path, const PointSetFile& f) {
  write_atomic(path, dump_point_set(f));
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

}  // namespace dnormal
