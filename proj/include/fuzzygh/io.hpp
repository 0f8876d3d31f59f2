#pragma once

// JSON documents for spaces, value functions, unions and families.
// Requires nlohmann/json (json.hpp) on the include path.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fuzzygh/gluing.hpp"
#include "fuzzygh/sequences.hpp"
#include "fuzzygh/space.hpp"
#include "fuzzygh/value_fn.hpp"

namespace fuzzygh::io {

using Json = nlohmann::ordered_json;

/// A malformed document; `where()` is "<file>: <json path>".
class DocumentError : public std::runtime_error {
 public:
  DocumentError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  [[nodiscard]] const std::string& where() const { return where_; }

 private:
  std::string where_;
};

namespace detail {

inline const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw DocumentError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw DocumentError(path + "." + key, "missing field");
  return *it;
}

inline double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw DocumentError(path, "expected a number");
  return j.get<double>();
}

inline std::size_t index(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned()) throw DocumentError(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

inline std::string string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw DocumentError(path, "expected a string");
  return j.get<std::string>();
}

inline const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw DocumentError(path, "expected an array");
  return j;
}

inline std::vector<double> numbers(const Json& j, const std::string& path) {
  std::vector<double> out;
  for (std::size_t k = 0; k < array(j, path).size(); ++k) out.push_back(number(j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

inline std::vector<std::vector<double>> matrix(const Json& j, const std::string& path) {
  std::vector<std::vector<double>> out;
  for (std::size_t k = 0; k < array(j, path).size(); ++k) out.push_back(numbers(j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

// Runs a constructor and rethrows library validation errors at `path`.
template <class F>
auto at(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const DocumentError&) {
    throw;
  } catch (const std::exception& e) {
    throw DocumentError(path, e.what());
  }
}

}  // namespace detail

inline Json to_json(const ValueFn& f);

inline Json to_json(const TNorm& n) { return n.name(); }

inline Json to_json(const GridSpec& g) {
  Json j;
  j["source"] = g.source;
  j["merged"] = g.merged;
  j["count"] = g.ts.size();
  j["values"] = g.ts;
  return j;
}

inline Json to_json(const ValueFn& f) {
  Json j;
  std::visit(
      [&](const auto& r) {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, Step>) {
          j["kind"] = "step";
          j["breakpoints"] = r.breakpoints;
          j["values"] = r.values;
        } else if constexpr (std::is_same_v<R, Standard>) {
          j["kind"] = "standard";
          j["d"] = r.d;
        } else if constexpr (std::is_same_v<R, Stationary>) {
          j["kind"] = "stationary";
          j["c"] = r.c;
        } else {
          j["kind"] = "glued";
          j["tnorm"] = r->norm.name();
          j["split"] = r->split;
          j["factor"] = r->factor;
          j["floor"] = to_json(r->floor);
          Json terms = Json::array();
          for (const auto& [a, b] : r->terms) terms.push_back(Json::array({to_json(a), to_json(b)}));
          j["terms"] = std::move(terms);
        }
      },
      f.repr());
  return j;
}

inline ValueFn value_fn_from_json(const Json& j, const std::string& path) {
  const auto kind = detail::string(detail::field(j, "kind", path), path + ".kind");
  if (kind == "step") {
    auto b = detail::numbers(detail::field(j, "breakpoints", path), path + ".breakpoints");
    auto v = detail::numbers(detail::field(j, "values", path), path + ".values");
    return detail::at(path, [&] { return ValueFn::step(std::move(b), std::move(v)); });
  }
  if (kind == "standard") {
    const double d = detail::number(detail::field(j, "d", path), path + ".d");
    return detail::at(path + ".d", [&] { return ValueFn::standard(d); });
  }
  if (kind == "stationary") {
    const double c = detail::number(detail::field(j, "c", path), path + ".c");
    return detail::at(path + ".c", [&] { return ValueFn::stationary(c); });
  }
  if (kind == "glued") {
    auto g = std::make_shared<GluedFn>();
    g->norm = detail::at(path + ".tnorm",
                         [&] { return TNorm::parse(detail::string(detail::field(j, "tnorm", path), path + ".tnorm")); });
    g->split = detail::number(detail::field(j, "split", path), path + ".split");
    g->factor = detail::number(detail::field(j, "factor", path), path + ".factor");
    g->floor = value_fn_from_json(detail::field(j, "floor", path), path + ".floor");
    const auto& terms = detail::array(detail::field(j, "terms", path), path + ".terms");
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const std::string p = path + ".terms[" + std::to_string(k) + "]";
      if (!terms[k].is_array() || terms[k].size() != 2) throw DocumentError(p, "expected a pair of functions");
      g->terms.emplace_back(value_fn_from_json(terms[k][0], p + "[0]"), value_fn_from_json(terms[k][1], p + "[1]"));
    }
    return ValueFn::glued(std::move(g));
  }
  throw DocumentError(path + ".kind", "unknown function kind '" + kind + "'");
}

/// Space document. Uniform representations use the compact "standard",
/// "stationary" and "step" forms; anything else is written as "pairs".
inline Json to_json(const FuzzySpace& s) {
  Json j;
  j["name"] = s.name();
  j["points"] = s.labels();
  j["tnorm"] = s.norm().name();
  const auto& e = s.entries();
  const std::size_t n = s.size();
  auto all = [&](auto pred) { return std::all_of(e.begin(), e.end(), pred); };
  Json metric;
  if (n > 1 && all([](const ValueFn& f) { return f.is_standard(); })) {
    metric["kind"] = "standard";
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i + 1; k < n; ++k) d[i][k] = d[k][i] = std::get<Standard>(s.entry(i, k).repr()).d;
    metric["distances"] = d;
  } else if (n == 1 || all([](const ValueFn& f) { return f.is_stationary(); })) {
    metric["kind"] = "stationary";
    std::vector<std::vector<double>> c(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i + 1; k < n; ++k) c[i][k] = c[k][i] = s.entry(i, k)(1.0);
    metric["values"] = c;
  } else {
    const bool steps = all([](const ValueFn& f) { return f.is_step(); });
    metric["kind"] = steps ? "step" : "pairs";
    Json pairs = Json::array();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i + 1; k < n; ++k) {
        Json p;
        p["i"] = i;
        p["j"] = k;
        if (steps) {
          const auto& st = std::get<Step>(s.entry(i, k).repr());
          p["breakpoints"] = st.breakpoints;
          p["values"] = st.values;
        } else {
          p["fn"] = to_json(s.entry(i, k));
        }
        pairs.push_back(std::move(p));
      }
    metric["pairs"] = std::move(pairs);
  }
  j["metric"] = std::move(metric);
  return j;
}

inline FuzzySpace space_from_json(const Json& j, const std::string& path = "$") {
  const auto name = j.contains("name") ? detail::string(j["name"], path + ".name") : std::string("space");
  std::vector<std::string> labels;
  const auto& pts = detail::array(detail::field(j, "points", path), path + ".points");
  for (std::size_t k = 0; k < pts.size(); ++k) labels.push_back(detail::string(pts[k], path + ".points[" + std::to_string(k) + "]"));
  if (labels.empty()) throw DocumentError(path + ".points", "a space needs at least one point");
  const auto norm = detail::at(path + ".tnorm", [&] {
    return TNorm::parse(detail::string(detail::field(j, "tnorm", path), path + ".tnorm"));
  });
  const std::string mp = path + ".metric";
  const auto& m = detail::field(j, "metric", path);
  const auto kind = detail::string(detail::field(m, "kind", mp), mp + ".kind");
  const std::size_t n = labels.size();
  auto check_square = [&](const std::vector<std::vector<double>>& a, const std::string& p) {
    if (a.size() != n) throw DocumentError(p, "expected " + std::to_string(n) + " rows, one per point");
    for (std::size_t r = 0; r < n; ++r)
      if (a[r].size() != n) throw DocumentError(p + "[" + std::to_string(r) + "]", "expected " + std::to_string(n) + " columns");
  };
  if (kind == "standard") {
    auto d = detail::matrix(detail::field(m, "distances", mp), mp + ".distances");
    check_square(d, mp + ".distances");
    return detail::at(mp + ".distances", [&] { return make_standard_space(labels, DistanceMatrix(d), norm, name); });
  }
  if (kind == "stationary") {
    auto c = detail::matrix(detail::field(m, "values", mp), mp + ".values");
    check_square(c, mp + ".values");
    return detail::at(mp + ".values", [&] { return make_stationary_space(labels, c, norm, name); });
  }
  if (kind == "step" || kind == "pairs") {
    const auto& pairs = detail::array(detail::field(m, "pairs", mp), mp + ".pairs");
    std::vector<std::optional<ValueFn>> slots(n * (n - 1) / 2);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const std::string p = mp + ".pairs[" + std::to_string(k) + "]";
      const auto a = detail::index(detail::field(pairs[k], "i", p), p + ".i");
      const auto b = detail::index(detail::field(pairs[k], "j", p), p + ".j");
      if (a == b || a >= n || b >= n) throw DocumentError(p, "pair needs two distinct point indices below " + std::to_string(n));
      ValueFn f;
      if (kind == "step") {
        auto bp = detail::numbers(detail::field(pairs[k], "breakpoints", p), p + ".breakpoints");
        auto v = detail::numbers(detail::field(pairs[k], "values", p), p + ".values");
        f = detail::at(p, [&] { return ValueFn::step(std::move(bp), std::move(v)); });
      } else {
        f = value_fn_from_json(detail::field(pairs[k], "fn", p), p + ".fn");
      }
      auto& slot = slots[FuzzySpace::pair_index(std::min(a, b), std::max(a, b), n)];
      if (slot) throw DocumentError(p, "pair given twice");
      slot = std::move(f);
    }
    std::vector<ValueFn> e;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i + 1; k < n; ++k) {
        auto& slot = slots[FuzzySpace::pair_index(i, k, n)];
        if (!slot) throw DocumentError(mp + ".pairs", "missing pair (" + std::to_string(i) + "," + std::to_string(k) + ")");
        e.push_back(std::move(*slot));
      }
    return detail::at(path, [&] { return FuzzySpace(name, labels, norm, std::move(e)); });
  }
  throw DocumentError(mp + ".kind", "unknown metric kind '" + kind + "'");
}

inline Json to_json(const UnionMetric& u) {
  Json j;
  j["left"] = to_json(u.left());
  j["right"] = to_json(u.right());
  Json cross = Json::array();
  for (std::size_t x = 0; x < u.left().size(); ++x) {
    Json row = Json::array();
    for (std::size_t y = 0; y < u.right().size(); ++y) row.push_back(to_json(u.cross(x, y)));
    cross.push_back(std::move(row));
  }
  j["cross"] = std::move(cross);
  return j;
}

inline UnionMetric union_from_json(const Json& j, const std::string& path = "$") {
  auto left = space_from_json(detail::field(j, "left", path), path + ".left");
  auto right = space_from_json(detail::field(j, "right", path), path + ".right");
  const auto& rows = detail::array(detail::field(j, "cross", path), path + ".cross");
  if (rows.size() != left.size()) throw DocumentError(path + ".cross", "expected one row per left point");
  std::vector<ValueFn> cross;
  for (std::size_t x = 0; x < rows.size(); ++x) {
    const std::string p = path + ".cross[" + std::to_string(x) + "]";
    if (!rows[x].is_array() || rows[x].size() != right.size()) throw DocumentError(p, "expected one entry per right point");
    for (std::size_t y = 0; y < rows[x].size(); ++y) cross.push_back(value_fn_from_json(rows[x][y], p + "[" + std::to_string(y) + "]"));
  }
  return detail::at(path, [&] { return UnionMetric(std::move(left), std::move(right), std::move(cross)); });
}

inline Json read_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DocumentError(file.string(), "cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DocumentError(file.string(), std::string("invalid JSON: ") + e.what());
  }
}

// Rewrites "$..." diagnostics as "<file>: $...".
template <class F>
auto in_file(const std::filesystem::path& file, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const DocumentError& e) {
    if (e.where().rfind('$', 0) == 0) throw DocumentError(file.string() + ": " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
    throw;
  }
}

inline FuzzySpace load_space(const std::filesystem::path& file) {
  const auto j = read_json_file(file);
  return in_file(file, [&] { return space_from_json(j); });
}

inline ValueFn load_value_fn(const std::filesystem::path& file) {
  const auto j = read_json_file(file);
  return in_file(file, [&] { return value_fn_from_json(j, "$"); });
}

inline UnionMetric load_union(const std::filesystem::path& file) {
  const auto j = read_json_file(file);
  return in_file(file, [&] { return union_from_json(j); });
}

/// A family directory: `family.json` with optional "spaces" (file names, in
/// order), "floor" (function document) and "nets" (index lists). Without
/// "spaces", every other *.json file is loaded in name order.
inline SequenceFamily load_family(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw DocumentError(dir.string(), "not a directory");
  const fs::path meta_file = dir / "family.json";
  Json meta = fs::exists(meta_file) ? read_json_file(meta_file) : Json::object();
  SequenceFamily fam;
  std::vector<fs::path> files;
  if (meta.contains("spaces")) {
    in_file(meta_file, [&] {
      const auto& arr = detail::array(meta["spaces"], "$.spaces");
      for (std::size_t k = 0; k < arr.size(); ++k) files.push_back(dir / detail::string(arr[k], "$.spaces[" + std::to_string(k) + "]"));
      return 0;
    });
  } else {
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.path().extension() == ".json" && entry.path().filename() != "family.json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
  }
  if (files.empty()) throw DocumentError(dir.string(), "family directory contains no spaces");
  for (const auto& f : files) fam.spaces.push_back(load_space(f));
  in_file(meta_file, [&] {
    if (meta.contains("floor")) fam.floor = value_fn_from_json(meta["floor"], "$.floor");
    if (meta.contains("nets")) {
      std::vector<std::vector<std::size_t>> nets;
      const auto& arr = detail::array(meta["nets"], "$.nets");
      for (std::size_t k = 0; k < arr.size(); ++k) {
        const std::string p = "$.nets[" + std::to_string(k) + "]";
        std::vector<std::size_t> net;
        for (std::size_t q = 0; q < detail::array(arr[k], p).size(); ++q) net.push_back(detail::index(arr[k][q], p + "[" + std::to_string(q) + "]"));
        nets.push_back(std::move(net));
      }
      fam.nets = std::move(nets);
    }
    detail::at("$", [&] {
      fam.validate();
      return 0;
    });
    return 0;
  });
  return fam;
}

inline void save_family(const SequenceFamily& fam, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  Json meta;
  Json names = Json::array();
  for (std::size_t k = 0; k < fam.spaces.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "space_%03zu.json", k + 1);
    std::ofstream(dir / name) << to_json(fam.spaces[k]).dump(2) << "\n";
    names.push_back(name);
  }
  meta["spaces"] = std::move(names);
  if (fam.floor) meta["floor"] = to_json(*fam.floor);
  if (fam.nets) meta["nets"] = *fam.nets;
  std::ofstream(dir / "family.json") << meta.dump(2) << "\n";
}

}  // namespace fuzzygh::io
