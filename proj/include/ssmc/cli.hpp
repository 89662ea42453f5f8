#pragma once

// Command-line front end.  Exit codes: 0 = all selected checks passed,
// 1 = at least one check failed, 2 = configuration or input error.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ssmc/report.hpp"

namespace ssmc {

inline void print_chart_listing(std::ostream& out) {
  out << "builtin charts:\n";
  for (const auto& name : builtin_names()) {
    const catalog_entry e = make_builtin(name);
    out << "  " << name << "  (default dimension " << e.instance.dim << ")\n";
    out << "    coordinates:";
    for (const auto& c : e.instance.coords) out << " " << c;
    out << "\n    suites:";
    if (e.flags.supports_general_suite) out << " general";
    if (e.flags.is_grw) out << " grw symmetry fluid";
    if (e.flags.is_grw && e.instance.dim == 4) out << " efe stress";
    if (e.flags.supports_weyl_suite && !e.flags.is_grw) out << " symmetry";
    out << "\n";
  }
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"verification harness for connections generated by a concircular one-form"};
  app.get_formatter()->column_width(30);

  std::string manifold, manifest, format = "text", out_path;
  int dim = 0;
  int points = 32;
  std::uint64_t seed = 42;
  double tol_zero = 1e-9, tol_nonzero = 1e-3, coupling = 1.0;
  std::vector<std::string> suites = known_suites();
  bool list = false;

  app.add_option("--manifold", manifold, "builtin chart name (see --list)");
  app.add_option("--manifest", manifest, "path to a chart manifest JSON file");
  app.add_option("--dim", dim, "dimension for builtin charts that support a range");
  app.add_option("--suites", suites,
                 "comma-separated suites to run (general,grw,symmetry,fluid,efe,stress)")
      ->delimiter(',');
  app.add_option("--points", points, "number of sample points (default 32)");
  app.add_option("--seed", seed, "random seed for points and test vectors (default 42)");
  app.add_option("--tol-zero", tol_zero, "tolerance for vanishing residuals (default 1e-9)");
  app.add_option("--tol-nonzero", tol_nonzero,
                 "threshold for non-degeneracy checks (default 1e-3)");
  app.add_option("--k", coupling, "field-equation coupling constant (default 1)");
  app.add_option("--format", format, "report format: text or json (default text)");
  app.add_option("--out", out_path, "write the report to this file instead of stdout");
  app.add_flag("--list", list, "list builtin charts and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (list) {
    print_chart_listing(out);
    return 0;
  }

  try {
    if (manifold.empty() == manifest.empty())
      throw bad_config("exactly one of --manifold or --manifest is required");
    if (!manifest.empty() && dim != 0)
      throw bad_config("--dim applies to builtin charts only");

    run_config cfg;
    cfg.manifold = manifold.empty() ? manifest : manifold;
    cfg.dim = dim;
    cfg.suites = suites;
    cfg.points = points;
    cfg.seed = seed;
    cfg.tol_zero = tol_zero;
    cfg.tol_nonzero = tol_nonzero;
    cfg.coupling = coupling;
    cfg.format = format;
    validate_config(cfg);

    const catalog_entry entry =
        manifold.empty() ? load_manifest_file(manifest) : make_builtin(manifold, dim);
    const run_context ctx = make_run_context(entry, cfg);
    const std::vector<suite_report> reports = run_all(ctx);

    std::string payload;
    if (cfg.format == "json")
      payload = render_json(entry, cfg, reports).dump(2) + "\n";
    else
      payload = render_text(entry, cfg, reports);

    if (!out_path.empty()) {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw bad_config("cannot open output file: " + out_path);
      f << payload;
      if (!f.good()) throw bad_config("failed writing output file: " + out_path);
    } else {
      out << payload;
    }
    return summarize(reports).pass() ? 0 : 1;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ssmc
