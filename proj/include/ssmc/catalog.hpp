#pragma once

// Builtin chart catalog and the JSON manifest loader.
//
// Every entry carries the symbolic chart data plus capability flags that
// decide which verification suites apply.  The flags are claims, not inputs
// to the math: the suites recompute everything and would fail if a flag
// overpromised.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ssmc/manifold.hpp"
#include "ssmc/rng.hpp"

namespace ssmc {

struct entry_flags {
  bool is_grw = false;             // generated GRW chart: omega = 1, pi(P) = -1, Lorentzian
  bool is_einstein = false;        // Ric^g proportional to g
  bool is_perfect_fluid = false;   // Ric^g = a g + b pi(x)pi with nonzero b structure
  bool supports_general_suite = false;  // pi concircular with the stored omega
  bool supports_weyl_suite = false;     // n >= 4 and the Weyl checks are meaningful
  double omega_value = 0.0;        // omega at the box center (listing metadata)
};

struct catalog_entry {
  manifold_instance instance;
  entry_flags flags;
};

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {
      "minkowski",       "de_sitter_grw",        "closed_grw", "sphere_concircular",
      "cylinder_concircular", "flat_affine",     "kottler"};
  return names;
}

namespace detail {

inline expr_ptr parse_field(const std::string& src, const std::vector<std::string>& coords) {
  return parse(src, coords);
}

inline manifold_instance make_instance(std::string name, std::vector<std::string> coords,
                                       const std::vector<std::vector<std::string>>& g,
                                       const std::vector<std::string>& pi, const std::string& omega,
                                       std::vector<std::pair<double, double>> box) {
  manifold_instance m;
  m.name = std::move(name);
  m.dim = static_cast<int>(coords.size());
  m.coords = std::move(coords);
  m.g.resize(static_cast<std::size_t>(m.dim));
  for (int i = 0; i < m.dim; ++i) {
    m.g[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(m.dim));
    for (int j = 0; j < m.dim; ++j)
      m.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          parse_field(g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], m.coords);
  }
  m.pi.resize(static_cast<std::size_t>(m.dim));
  for (int i = 0; i < m.dim; ++i)
    m.pi[static_cast<std::size_t>(i)] = parse_field(pi[static_cast<std::size_t>(i)], m.coords);
  m.omega = parse_field(omega, m.coords);
  m.box = std::move(box);
  return m;
}

inline std::vector<std::vector<std::string>> diagonal_metric(const std::vector<std::string>& d) {
  const std::size_t n = d.size();
  std::vector<std::vector<std::string>> g(n, std::vector<std::string>(n, "0"));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = d[i];
  return g;
}

// Round-sphere polar block: diag entries for angles a1..a_{m} after `prefix`,
// i.e. prefix, prefix*sin(a1)^2, prefix*sin(a1)^2*sin(a2)^2, ...
inline std::vector<std::string> polar_block(const std::string& prefix, int count) {
  std::vector<std::string> out;
  std::string acc = prefix;
  for (int k = 0; k < count; ++k) {
    out.push_back(acc);
    acc += "*sin(a" + std::to_string(k + 1) + ")^2";
  }
  return out;
}

inline std::vector<std::string> angle_names(int count) {
  std::vector<std::string> out;
  for (int k = 0; k < count; ++k) out.push_back("a" + std::to_string(k + 1));
  return out;
}

inline void require_dim(const std::string& name, int dim, int lo, int hi) {
  if (dim < lo || dim > hi)
    throw unsupported_dimension("entry '" + name + "' supports dimension " + std::to_string(lo) +
                                ".." + std::to_string(hi) + ", got " + std::to_string(dim));
}

}  // namespace detail

inline int default_dimension(const std::string& name) {
  if (name == "cylinder_concircular") return 3;
  if (name == "sphere_concircular") return 3;
  return 4;
}

// Construct a builtin entry.  dim == 0 selects the entry's default dimension.
inline catalog_entry make_builtin(const std::string& name, int dim = 0) {
  using detail::angle_names;
  using detail::diagonal_metric;
  using detail::make_instance;
  using detail::polar_block;
  using detail::require_dim;

  if (dim == 0) dim = default_dimension(name);
  catalog_entry e;

  if (name == "minkowski") {
    require_dim(name, dim, 3, 8);
    std::vector<std::string> coords = {"t"};
    std::vector<std::string> diag = {"-1"};
    std::vector<std::string> pi = {"-1"};
    std::vector<std::pair<double, double>> box = {{-1.0, 1.0}};
    for (int i = 1; i < dim; ++i) {
      coords.push_back("x" + std::to_string(i));
      diag.push_back("1");
      pi.push_back("0");
      box.push_back({-1.0, 1.0});
    }
    e.instance = make_instance(name, coords, diagonal_metric(diag), pi, "0", box);
    e.flags.is_einstein = true;  // flat, so trivially Ric = 0 = 0 * g
    e.flags.supports_weyl_suite = (dim >= 4);
    return e;
  }

  if (name == "de_sitter_grw") {
    require_dim(name, dim, 3, 8);
    std::vector<std::string> coords = {"t"};
    std::vector<std::string> diag = {"-1"};
    std::vector<std::string> pi = {"-1"};
    std::vector<std::pair<double, double>> box = {{-0.5, 0.5}};
    for (int i = 1; i < dim; ++i) {
      coords.push_back("x" + std::to_string(i));
      diag.push_back("exp(2*t)");
      pi.push_back("0");
      box.push_back({-1.0, 1.0});
    }
    e.instance = make_instance(name, coords, diagonal_metric(diag), pi, "1", box);
    e.flags.is_grw = true;
    e.flags.is_einstein = true;  // constant curvature +1: Ric^g = (n-1) g
    e.flags.is_perfect_fluid = true;
    e.flags.supports_general_suite = true;
    e.flags.supports_weyl_suite = (dim >= 4);
    e.flags.omega_value = 1.0;
    return e;
  }

  if (name == "closed_grw") {
    require_dim(name, dim, 3, 8);
    std::vector<std::string> coords = {"t"};
    for (const std::string& a : angle_names(dim - 1)) coords.push_back(a);
    std::vector<std::string> diag = {"-1"};
    for (const std::string& s : polar_block("exp(2*t)", dim - 1)) diag.push_back(s);
    std::vector<std::string> pi(static_cast<std::size_t>(dim), "0");
    pi[0] = "-1";
    std::vector<std::pair<double, double>> box = {{-0.5, 0.5}};
    for (int i = 1; i < dim; ++i) box.push_back({0.4, 2.7});
    e.instance = make_instance(name, coords, diagonal_metric(diag), pi, "1", box);
    e.flags.is_grw = true;
    e.flags.is_perfect_fluid = true;
    e.flags.supports_general_suite = true;
    e.flags.omega_value = 1.0;
    return e;
  }

  if (name == "sphere_concircular") {
    require_dim(name, dim, 3, 8);
    std::vector<std::string> coords = {"r"};
    for (const std::string& a : angle_names(dim - 1)) coords.push_back(a);
    std::vector<std::string> diag = {"1"};
    for (const std::string& s : polar_block("sin(r)^2", dim - 1)) diag.push_back(s);
    std::vector<std::string> pi(static_cast<std::size_t>(dim), "0");
    pi[0] = "tan(r)";
    std::vector<std::pair<double, double>> box = {{0.3, 1.2}};
    for (int i = 1; i < dim; ++i) box.push_back({0.4, 2.7});
    e.instance = make_instance(name, coords, diagonal_metric(diag), pi, "1", box);
    e.flags.is_einstein = true;  // unit sphere: Ric^g = (n-1) g
    e.flags.supports_general_suite = true;
    e.flags.omega_value = 1.0;
    return e;
  }

  if (name == "cylinder_concircular") {
    require_dim(name, dim, 3, 3);
    std::vector<std::string> coords = {"x", "a1", "a2"};
    std::vector<std::string> diag = {"1", "1", "sin(a1)^2"};
    std::vector<std::string> pi = {"-1/(x+3)", "0", "0"};
    std::vector<std::pair<double, double>> box = {{-1.0, 1.0}, {0.4, 2.7}, {0.4, 2.7}};
    e.instance = make_instance(name, coords, diagonal_metric(diag), pi, "0", box);
    e.flags.supports_general_suite = true;
    return e;
  }

  if (name == "flat_affine") {
    require_dim(name, dim, 3, 8);
    std::vector<std::string> coords, diag, pi;
    std::vector<std::pair<double, double>> box;
    for (int i = 0; i < dim; ++i) {
      coords.push_back("x" + std::to_string(i + 1));
      diag.push_back("1");
      pi.push_back(i == 0 ? "-1/(x1+3)" : "0");
      box.push_back({-1.0, 1.0});
    }
    e.instance = make_instance(name, coords, diagonal_metric(diag), pi, "0", box);
    e.flags.is_einstein = true;  // flat
    e.flags.supports_general_suite = true;
    return e;
  }

  if (name == "kottler") {
    require_dim(name, dim, 4, 4);
    // h(r) = 1 - 2m/r - Lambda r^2 / 3 with m = 1, Lambda = 0.03; the box
    // r in [3.5, 6] sits between the two horizons (h > 0.3 throughout).
    const std::string h = "(1-2/r-0.01*r^2)";
    std::vector<std::string> coords = {"t", "r", "a1", "a2"};
    std::vector<std::string> diag = {"-" + h, "1/" + h, "r^2", "r^2*sin(a1)^2"};
    std::vector<std::string> pi = {"0", "0", "0", "0"};
    std::vector<std::pair<double, double>> box = {
        {-1.0, 1.0}, {3.5, 6.0}, {0.6, 2.5}, {0.4, 2.7}};
    e.instance = make_instance(name, coords, diagonal_metric(diag), pi, "0", box);
    e.flags.is_einstein = true;  // Ric^g = Lambda g
    e.flags.supports_weyl_suite = true;
    return e;
  }

  throw unknown_entry(name);
}

// --- manifest loading ---------------------------------------------------------
//
// Schema (all keys required except "flags"; unknown keys rejected):
// {
//   "name": "...", "dimension": n,
//   "coordinates": [n identifiers],
//   "metric": [n rows of n expression strings],
//   "pi": [n expression strings], "omega": "...",
//   "box": [n [lo, hi] pairs],
//   "flags": { optional booleans, see entry_flags }
// }

namespace detail {

inline bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto alnum = [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); };
  if (!alpha(s[0])) return false;
  for (char c : s)
    if (!alnum(c)) return false;
  return true;
}

inline bool reserved_identifier(const std::string& s) {
  if (s == "pi" || s == "e") return true;
  for (std::string_view f : func_names)
    if (s == f) return true;
  return false;
}

}  // namespace detail

inline catalog_entry load_manifest(const nlohmann::json& j) {
  if (!j.is_object()) throw schema_error("manifest must be a JSON object");
  static const std::vector<std::string> allowed = {"name",  "dimension", "coordinates", "metric",
                                                   "pi",    "omega",     "box",         "flags"};
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const std::string& a : allowed) ok = ok || (key == a);
    if (!ok) throw schema_error("unknown manifest key '" + key + "'");
  }
  for (const char* req : {"name", "dimension", "coordinates", "metric", "pi", "omega", "box"})
    if (!j.contains(req)) throw schema_error(std::string("missing manifest key '") + req + "'");

  if (!j["name"].is_string() || j["name"].get<std::string>().empty())
    throw schema_error("'name' must be a non-empty string");
  if (!j["dimension"].is_number_integer()) throw schema_error("'dimension' must be an integer");
  const int n = j["dimension"].get<int>();
  if (n < 3) throw schema_error("'dimension' must be at least 3");
  if (n > 8) throw schema_error("'dimension' must be at most 8");

  if (!j["coordinates"].is_array() || j["coordinates"].size() != static_cast<std::size_t>(n))
    throw schema_error("'coordinates' must list exactly dimension names");
  std::vector<std::string> coords;
  for (const auto& c : j["coordinates"]) {
    if (!c.is_string()) throw schema_error("coordinate names must be strings");
    const std::string s = c.get<std::string>();
    if (!detail::valid_identifier(s)) throw schema_error("invalid coordinate name '" + s + "'");
    if (detail::reserved_identifier(s))
      throw schema_error("coordinate name '" + s + "' is reserved");
    for (const std::string& prev : coords)
      if (prev == s) throw schema_error("duplicate coordinate name '" + s + "'");
    coords.push_back(s);
  }

  auto expr_string = [](const nlohmann::json& v, const char* what) {
    if (!v.is_string()) throw schema_error(std::string(what) + " entries must be strings");
    return v.get<std::string>();
  };

  if (!j["metric"].is_array() || j["metric"].size() != static_cast<std::size_t>(n))
    throw schema_error("'metric' must be an n x n array of strings");
  std::vector<std::vector<std::string>> g;
  for (const auto& row : j["metric"]) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
      throw schema_error("'metric' must be an n x n array of strings");
    std::vector<std::string> r;
    for (const auto& v : row) r.push_back(expr_string(v, "'metric'"));
    g.push_back(std::move(r));
  }

  if (!j["pi"].is_array() || j["pi"].size() != static_cast<std::size_t>(n))
    throw schema_error("'pi' must list exactly dimension strings");
  std::vector<std::string> pi;
  for (const auto& v : j["pi"]) pi.push_back(expr_string(v, "'pi'"));

  const std::string omega = expr_string(j["omega"], "'omega'");

  if (!j["box"].is_array() || j["box"].size() != static_cast<std::size_t>(n))
    throw schema_error("'box' must list exactly dimension [lo, hi] pairs");
  std::vector<std::pair<double, double>> box;
  for (const auto& v : j["box"]) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw schema_error("'box' entries must be [lo, hi] number pairs");
    const double lo = v[0].get<double>(), hi = v[1].get<double>();
    if (!(lo < hi)) throw schema_error("'box' ranges must satisfy lo < hi");
    box.push_back({lo, hi});
  }

  catalog_entry e;
  e.instance = detail::make_instance(j["name"].get<std::string>(), coords, g, pi, omega, box);

  if (j.contains("flags")) {
    const auto& f = j["flags"];
    if (!f.is_object()) throw schema_error("'flags' must be an object");
    static const std::vector<std::string> flag_keys = {"is_grw", "is_einstein", "is_perfect_fluid",
                                                       "supports_general_suite",
                                                       "supports_weyl_suite"};
    for (const auto& [key, val] : f.items()) {
      bool ok = false;
      for (const std::string& a : flag_keys) ok = ok || (key == a);
      if (!ok) throw schema_error("unknown flag '" + key + "'");
      if (!val.is_boolean()) throw schema_error("flag '" + key + "' must be a boolean");
    }
    e.flags.is_grw = f.value("is_grw", false);
    e.flags.is_einstein = f.value("is_einstein", false);
    e.flags.is_perfect_fluid = f.value("is_perfect_fluid", false);
    e.flags.supports_general_suite = f.value("supports_general_suite", false);
    e.flags.supports_weyl_suite = f.value("supports_weyl_suite", false);
  }

  // omega at the box center, as listing metadata.
  std::vector<double> center;
  for (const auto& [lo, hi] : e.instance.box) center.push_back(0.5 * (lo + hi));
  const std::vector<jet2> xs = coordinate_jets(e.instance.dim, center);
  e.flags.omega_value = evaluate(e.instance.omega, xs).value();
  return e;
}

inline catalog_entry load_manifest_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw schema_error("cannot open manifest file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::exception& ex) {
    throw schema_error("manifest is not valid JSON: " + std::string(ex.what()));
  }
  return load_manifest(j);
}

// Deterministic uniform samples from the entry's box.
inline std::vector<std::vector<double>> sample_points(const catalog_entry& e, int count,
                                                      std::uint64_t seed) {
  if (count < 1) throw invalid_count("sample count must be at least 1");
  rng gen(seed);
  std::vector<std::vector<double>> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int p = 0; p < count; ++p) {
    std::vector<double> x;
    x.reserve(e.instance.box.size());
    for (const auto& [lo, hi] : e.instance.box) x.push_back(gen.uniform(lo, hi));
    pts.push_back(std::move(x));
  }
  return pts;
}

}  // namespace ssmc
