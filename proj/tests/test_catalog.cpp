// Chart catalog: builtin entries, manifest loading, and point sampling.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ssmc/catalog.hpp"
#include "ssmc/curvature.hpp"

using namespace ssmc;
using nlohmann::json;

namespace {

json minimal_manifest() {
  json j;
  j["name"] = "probe";
  j["dimension"] = 3;
  j["coordinates"] = {"u", "v", "w"};
  j["metric"] = {{"1", "0", "0"}, {"0", "1+u^2", "0"}, {"0", "0", "1"}};
  j["pi"] = {"0", "0", "0"};
  j["omega"] = "0";
  j["box"] = {{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}};
  return j;
}

}  // namespace

TEST_CASE("builtin listing is complete") {
  const auto names = builtin_names();
  REQUIRE(names.size() == 7);
  for (const char* want : {"minkowski", "de_sitter_grw", "closed_grw", "sphere_concircular",
                           "cylinder_concircular", "flat_affine", "kottler"})
    CHECK(std::find(names.begin(), names.end(), std::string(want)) != names.end());
}

TEST_CASE("every builtin builds a curvature bundle at its box center") {
  struct range {
    const char* name;
    int lo, hi;
  };
  for (const auto& [name, lo, hi] : {range{"minkowski", 3, 8}, range{"de_sitter_grw", 3, 8},
                                     range{"closed_grw", 3, 8}, range{"sphere_concircular", 3, 8},
                                     range{"cylinder_concircular", 3, 3},
                                     range{"flat_affine", 3, 8}, range{"kottler", 4, 4}}) {
    for (int dim = lo; dim <= hi; ++dim) {
      const auto entry = make_builtin(name, dim);
      REQUIRE(entry.instance.dim == dim);
      std::vector<double> center;
      for (const auto& [a, b] : entry.instance.box) center.push_back(0.5 * (a + b));
      const auto bundle = build_bundle(entry.instance, center);
      CHECK(bundle.dim() == dim);
      CHECK(bundle.frame.metric().det != 0.0);
    }
  }
}

TEST_CASE("default dimensions and rejection of unsupported ones") {
  CHECK(make_builtin("cylinder_concircular").instance.dim == 3);
  CHECK(make_builtin("sphere_concircular").instance.dim == 3);
  CHECK(make_builtin("minkowski").instance.dim == 4);
  CHECK(make_builtin("kottler").instance.dim == 4);

  CHECK_THROWS_AS(make_builtin("nonexistent_chart"), unknown_entry);
  CHECK_THROWS_AS(make_builtin("minkowski", 2), unsupported_dimension);
  CHECK_THROWS_AS(make_builtin("minkowski", 9), unsupported_dimension);
  CHECK_THROWS_AS(make_builtin("cylinder_concircular", 4), unsupported_dimension);
  CHECK_THROWS_AS(make_builtin("kottler", 5), unsupported_dimension);
}

TEST_CASE("manifest loading accepts a valid description") {
  auto j = minimal_manifest();
  j["flags"] = {{"is_einstein", false}, {"supports_general_suite", true}};
  const auto entry = load_manifest(j);
  CHECK(entry.instance.name == "probe");
  CHECK(entry.instance.dim == 3);
  CHECK(entry.flags.supports_general_suite);
  CHECK_FALSE(entry.flags.is_grw);
  CHECK(entry.flags.omega_value == 0.0);

  const auto bundle = build_bundle(entry.instance, {0.2, 0.1, -0.3});
  CHECK(bundle.dim() == 3);
}

TEST_CASE("manifest schema violations are rejected") {
  SECTION("not an object") { CHECK_THROWS_AS(load_manifest(json::array()), schema_error); }

  SECTION("missing required key") {
    auto j = minimal_manifest();
    j.erase("omega");
    CHECK_THROWS_AS(load_manifest(j), schema_error);
  }

  SECTION("unknown key") {
    auto j = minimal_manifest();
    j["extra"] = 1;
    CHECK_THROWS_AS(load_manifest(j), schema_error);
  }

  SECTION("dimension out of range") {
    auto j = minimal_manifest();
    j["dimension"] = 2;
    CHECK_THROWS_AS(load_manifest(j), schema_error);
    j["dimension"] = 9;
    CHECK_THROWS_AS(load_manifest(j), schema_error);
  }

  SECTION("coordinate count mismatch") {
    auto j = minimal_manifest();
    j["coordinates"] = {"u", "v"};
    CHECK_THROWS_AS(load_manifest(j), schema_error);
  }

  SECTION("invalid identifier") {
    auto j = minimal_manifest();
    j["coordinates"] = {"2x", "v", "w"};
    CHECK_THROWS_AS(load_manifest(j), schema_error);
  }

  SECTION("reserved identifier") {
    auto j = minimal_manifest();
    j["coordinates"] = {"pi", "v", "w"};
    CHECK_THROWS_AS(load_manifest(j), schema_error);
    j["coordinates"] = {"sin", "v", "w"};
    CHECK_THROWS_AS(load_manifest(j), schema_error);
  }

  SECTION("duplicate coordinates") {
    auto j = minimal_manifest();
    j["coordinates"] = {"u", "u", "w"};
    CHECK_THROWS_AS(load_manifest(j), schema_error);
  }

  SECTION("non-square metric") {
    auto j = minimal_manifest();
    j["metric"] = {{"1", "0"}, {"0", "1"}};
    CHECK_THROWS_AS(load_manifest(j), schema_error);
  }

  SECTION("bad box range") {
    auto j = minimal_manifest();
    j["box"] = {{1.0, -1.0}, {-1.0, 1.0}, {-1.0, 1.0}};
    CHECK_THROWS_AS(load_manifest(j), schema_error);
  }

  SECTION("unknown or non-boolean flag") {
    auto j = minimal_manifest();
    j["flags"] = {{"bogus", true}};
    CHECK_THROWS_AS(load_manifest(j), schema_error);
    j["flags"] = {{"is_grw", 1}};
    CHECK_THROWS_AS(load_manifest(j), schema_error);
  }

  SECTION("field expression parse failure surfaces") {
    auto j = minimal_manifest();
    j["omega"] = "1 +";
    CHECK_THROWS_AS(load_manifest(j), parse_error);
  }
}

TEST_CASE("manifest file loading") {
  const std::string good = "/tmp/ssmc_manifest_good.json";
  {
    std::ofstream out(good);
    out << minimal_manifest().dump(2);
  }
  const auto entry = load_manifest_file(good);
  CHECK(entry.instance.name == "probe");
  std::remove(good.c_str());

  CHECK_THROWS_AS(load_manifest_file("/tmp/ssmc_does_not_exist.json"), schema_error);

  const std::string bad = "/tmp/ssmc_manifest_bad.json";
  {
    std::ofstream out(bad);
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_manifest_file(bad), schema_error);
  std::remove(bad.c_str());
}

TEST_CASE("point sampling is deterministic and stays inside the box") {
  const auto entry = make_builtin("closed_grw", 4);
  const auto a = sample_points(entry, 16, 42);
  const auto b = sample_points(entry, 16, 42);
  REQUIRE(a.size() == 16);
  CHECK(a == b);  // bitwise reproducibility

  const auto c = sample_points(entry, 16, 43);
  CHECK(a != c);

  for (const auto& pt : a) {
    REQUIRE(pt.size() == entry.instance.box.size());
    for (std::size_t i = 0; i < pt.size(); ++i) {
      CHECK(pt[i] >= entry.instance.box[i].first);
      CHECK(pt[i] <= entry.instance.box[i].second);
    }
  }

  CHECK_THROWS_AS(sample_points(entry, 0, 1), invalid_count);
}
