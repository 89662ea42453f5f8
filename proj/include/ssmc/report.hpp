#pragma once

// Run-level configuration validation and report rendering.  The JSON renderer
// uses ordered maps and fixed key order so that a given run configuration
// always produces byte-identical output.

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ssmc/suites.hpp"

namespace ssmc {

inline const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> v{"general", "grw",  "symmetry",
                                          "fluid",   "efe",  "stress"};
  return v;
}

inline void validate_config(const run_config& cfg) {
  if (cfg.points < 1) throw invalid_count("points must be at least 1");
  if (cfg.points > 100000) throw invalid_count("points must be at most 100000");
  if (!(cfg.tol_zero > 0.0)) throw bad_config("tol-zero must be positive");
  if (!(cfg.tol_nonzero > 0.0)) throw bad_config("tol-nonzero must be positive");
  if (!(cfg.coupling > 0.0)) throw bad_config("coupling k must be positive");
  if (cfg.format != "text" && cfg.format != "json")
    throw bad_config("format must be 'text' or 'json'");
  if (cfg.suites.empty()) throw bad_config("no suites selected");
  for (const auto& s : cfg.suites) {
    const auto& ks = known_suites();
    if (std::find(ks.begin(), ks.end(), s) == ks.end())
      throw bad_config("unknown suite: " + s);
    if (std::count(cfg.suites.begin(), cfg.suites.end(), s) > 1)
      throw bad_config("suite listed twice: " + s);
  }
}

struct run_summary {
  int checks_total = 0;
  int checks_passed = 0;
  int checks_failed = 0;
  int suites_run = 0;
  int suites_skipped = 0;
  bool pass() const { return checks_failed == 0; }
};

inline run_summary summarize(const std::vector<suite_report>& suites) {
  run_summary s;
  for (const auto& sr : suites) {
    if (!sr.ran) {
      ++s.suites_skipped;
      continue;
    }
    ++s.suites_run;
    for (const auto& c : sr.checks) {
      ++s.checks_total;
      if (c.pass)
        ++s.checks_passed;
      else
        ++s.checks_failed;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::ordered_json flags_to_json(const entry_flags& fl) {
  nlohmann::ordered_json j;
  j["is_grw"] = fl.is_grw;
  j["is_einstein"] = fl.is_einstein;
  j["is_perfect_fluid"] = fl.is_perfect_fluid;
  j["supports_general_suite"] = fl.supports_general_suite;
  j["supports_weyl_suite"] = fl.supports_weyl_suite;
  j["omega_value"] = fl.omega_value;
  return j;
}

inline nlohmann::ordered_json render_json(const catalog_entry& entry,
                                          const run_config& cfg,
                                          const std::vector<suite_report>& suites) {
  nlohmann::ordered_json root;
  root["schema_version"] = 1;

  nlohmann::ordered_json jm;
  jm["name"] = entry.instance.name;
  jm["dimension"] = entry.instance.dim;
  jm["coordinates"] = entry.instance.coords;
  jm["flags"] = flags_to_json(entry.flags);
  root["manifold"] = jm;

  nlohmann::ordered_json jc;
  jc["suites"] = cfg.suites;
  jc["points"] = cfg.points;
  jc["seed"] = cfg.seed;
  jc["tol_zero"] = cfg.tol_zero;
  jc["tol_nonzero"] = cfg.tol_nonzero;
  jc["coupling"] = cfg.coupling;
  root["config"] = jc;

  nlohmann::ordered_json jsuites = nlohmann::ordered_json::array();
  for (const auto& sr : suites) {
    nlohmann::ordered_json js;
    js["name"] = sr.name;
    js["status"] = sr.ran ? "ran" : "skipped";
    if (!sr.ran) js["skip_reason"] = sr.skip_reason;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : sr.checks) {
      nlohmann::ordered_json jchk;
      jchk["id"] = c.id;
      jchk["paper_ref"] = c.paper_ref;
      jchk["point"] = c.point;
      jchk["residual"] = c.residual;
      jchk["tolerance"] = c.tolerance;
      jchk["mode"] =
          (c.mode == check_mode::expect_zero) ? "expect_zero" : "expect_nonzero";
      jchk["pass"] = c.pass;
      checks.push_back(std::move(jchk));
    }
    js["checks"] = std::move(checks);
    if (!sr.fluid_states.empty()) {
      nlohmann::ordered_json jfl = nlohmann::ordered_json::array();
      for (const auto& st : sr.fluid_states) {
        nlohmann::ordered_json jst;
        jst["point"] = st.point;
        jst["a"] = st.a;
        jst["b"] = st.b;
        jst["fit_residual"] = st.fit_residual;
        jst["sigma"] = st.sigma;
        jst["p"] = st.p;
        jst["scalar_curvature"] = st.scalar;
        jst["eos_ratio"] = st.eos_ratio;
        jst["sec_violated"] = st.sec_violated;
        jst["wec_ok"] = st.wec_ok;
        jst["classification"] = st.classification;
        jfl.push_back(std::move(jst));
      }
      js["fluid"] = std::move(jfl);
    }
    jsuites.push_back(std::move(js));
  }
  root["suites"] = std::move(jsuites);

  const run_summary s = summarize(suites);
  nlohmann::ordered_json jsum;
  jsum["checks_total"] = s.checks_total;
  jsum["checks_passed"] = s.checks_passed;
  jsum["checks_failed"] = s.checks_failed;
  jsum["suites_run"] = s.suites_run;
  jsum["suites_skipped"] = s.suites_skipped;
  jsum["pass"] = s.pass();
  root["summary"] = jsum;
  return root;
}

// ---------------------------------------------------------------------------
// text

namespace detail {

struct id_aggregate {
  int count = 0;
  int failed = 0;
  double worst = 0.0;  // max residual for expect_zero, min for expect_nonzero
  double tolerance = 0.0;
  check_mode mode = check_mode::expect_zero;
  std::string ref;
  bool first = true;
};

inline std::string fmt_g(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << v;
  return os.str();
}

}  // namespace detail

inline std::string render_text(const catalog_entry& entry, const run_config& cfg,
                               const std::vector<suite_report>& suites) {
  std::ostringstream os;
  os << "chart: " << entry.instance.name << " (dimension " << entry.instance.dim
     << ")\n";
  os << "points: " << cfg.points << "  seed: " << cfg.seed
     << "  tol_zero: " << detail::fmt_g(cfg.tol_zero)
     << "  tol_nonzero: " << detail::fmt_g(cfg.tol_nonzero)
     << "  coupling: " << detail::fmt_g(cfg.coupling) << "\n";

  for (const auto& sr : suites) {
    os << "\nsuite " << sr.name << ": ";
    if (!sr.ran) {
      os << "skipped (" << sr.skip_reason << ")\n";
      continue;
    }
    os << sr.checks.size() << " checks\n";

    // aggregate by id, preserving first-appearance order
    std::vector<std::string> order;
    std::map<std::string, detail::id_aggregate> agg;
    for (const auto& c : sr.checks) {
      auto it = agg.find(c.id);
      if (it == agg.end()) {
        order.push_back(c.id);
        it = agg.emplace(c.id, detail::id_aggregate{}).first;
        it->second.mode = c.mode;
        it->second.tolerance = c.tolerance;
        it->second.ref = c.paper_ref;
      }
      auto& a = it->second;
      ++a.count;
      if (!c.pass) ++a.failed;
      if (a.first)
        a.worst = c.residual;
      else
        a.worst = (a.mode == check_mode::expect_zero)
                      ? std::max(a.worst, c.residual)
                      : std::min(a.worst, c.residual);
      a.first = false;
    }
    for (const auto& id : order) {
      const auto& a = agg.at(id);
      os << "  " << (a.failed == 0 ? "PASS" : "FAIL") << "  " << std::left
         << std::setw(34) << id << std::right << "  worst "
         << detail::fmt_g(a.worst) << "  tol " << detail::fmt_g(a.tolerance)
         << (a.mode == check_mode::expect_nonzero ? "  (nonzero)" : "") << "  x"
         << a.count;
      if (a.failed > 0) os << "  [" << a.failed << " failed: " << a.ref << "]";
      os << "\n";
    }

    if (!sr.fluid_states.empty()) {
      std::map<std::string, int> classes;
      double smin = 0, smax = 0, pmin = 0, pmax = 0;
      bool first = true;
      for (const auto& st : sr.fluid_states) {
        ++classes[st.classification];
        if (first) {
          smin = smax = st.sigma;
          pmin = pmax = st.p;
          first = false;
        } else {
          smin = std::min(smin, st.sigma);
          smax = std::max(smax, st.sigma);
          pmin = std::min(pmin, st.p);
          pmax = std::max(pmax, st.p);
        }
      }
      os << "  fluid: sigma in [" << detail::fmt_g(smin) << ", "
         << detail::fmt_g(smax) << "], p in [" << detail::fmt_g(pmin) << ", "
         << detail::fmt_g(pmax) << "], classes:";
      for (const auto& [name, cnt] : classes) os << " " << name << "=" << cnt;
      os << "\n";
    }
  }

  const run_summary s = summarize(suites);
  os << "\nsummary: " << s.checks_total << " checks, " << s.checks_passed
     << " passed, " << s.checks_failed << " failed; suites run " << s.suites_run
     << ", skipped " << s.suites_skipped << "\n";
  os << "RESULT: " << (s.pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace ssmc
