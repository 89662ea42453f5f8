// Expression grammar: precedence pinning, error reporting, evaluation against
// the differentiation oracle, and print/parse round-trip property tests.

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <ssmc/expr.hpp>
#include <ssmc/rng.hpp>

using namespace ssmc;

namespace {

const std::vector<std::string> vars_t = {"t"};
const std::vector<std::string> vars_xy = {"x", "y"};

double eval_at(const std::string& src, const std::vector<std::string>& names,
               const std::vector<double>& point) {
  return evaluate_value(parse(src, names), point);
}

}  // namespace

TEST_CASE("precedence: unary minus binds looser than the power operator") {
  CHECK(eval_at("-t^2", vars_t, {3.0}) == -9.0);   // -(t^2), not (-t)^2
  CHECK(eval_at("(-t)^2", vars_t, {3.0}) == 9.0);
  CHECK(eval_at("2^3^2", vars_t, {0.0}) == 512.0);  // right associative
  CHECK(eval_at("2*3^2", vars_t, {0.0}) == 18.0);
  CHECK(eval_at("-2-3", vars_t, {0.0}) == -5.0);
  CHECK(eval_at("2-3-4", vars_t, {0.0}) == -5.0);   // left associative
  CHECK(eval_at("12/3/2", vars_t, {0.0}) == 2.0);
  CHECK(eval_at("1+2*3", vars_t, {0.0}) == 7.0);
  CHECK(eval_at("--t", vars_t, {5.0}) == 5.0);
}

TEST_CASE("constants and functions") {
  CHECK(eval_at("pi", vars_t, {0.0}) == Catch::Approx(std::acos(-1.0)).epsilon(1e-15));
  CHECK(eval_at("e", vars_t, {0.0}) == Catch::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(eval_at("exp(ln(7))", vars_t, {0.0}) == Catch::Approx(7.0).epsilon(1e-14));
  CHECK(eval_at("sin(t)^2+cos(t)^2", vars_t, {1.3}) ==
        Catch::Approx(1.0).epsilon(1e-14));
  CHECK(eval_at("sqrt(t)", vars_t, {16.0}) == 4.0);
  CHECK(eval_at("tanh(t)", vars_t, {0.5}) ==
        Catch::Approx(std::tanh(0.5)).epsilon(1e-15));
}

TEST_CASE("parse errors carry positions and expectations") {
  try {
    parse("2*+3", vars_t);
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.position == 2);
  }
  CHECK_THROWS_AS(parse("sin()", vars_t), parse_error);
  CHECK_THROWS_AS(parse("sin(1,2)", vars_t), parse_error);
  CHECK_THROWS_AS(parse("(1+2", vars_t), parse_error);
  CHECK_THROWS_AS(parse("1+2)", vars_t), parse_error);
  CHECK_THROWS_AS(parse("", vars_t), parse_error);
  CHECK_THROWS_AS(parse("1 2", vars_t), parse_error);

  try {
    parse("2*zz+1", vars_t);
    FAIL("expected unknown_identifier");
  } catch (const unknown_identifier& e) {
    CHECK(e.position == 2);
    CHECK(e.name == "zz");
  }
}

TEST_CASE("derivatives of a parsed expression match hand formulas") {
  // f(x,y) = x^2 y + sin(x y): f_x = 2xy + y cos(xy), f_y = x^2 + x cos(xy),
  // f_xy = 2x + cos(xy) - xy sin(xy)
  const auto e = parse("x^2*y + sin(x*y)", vars_xy);
  const double x0 = 0.8, y0 = 1.7;
  std::vector<jet2> coords = {jet2::coordinate(2, 0, x0), jet2::coordinate(2, 1, y0)};
  const jet2 f = evaluate(e, coords);
  const double c = std::cos(x0 * y0), s = std::sin(x0 * y0);
  CHECK(f.value() == Catch::Approx(x0 * x0 * y0 + s).epsilon(1e-14));
  CHECK(f.grad(0) == Catch::Approx(2 * x0 * y0 + y0 * c).epsilon(1e-14));
  CHECK(f.grad(1) == Catch::Approx(x0 * x0 + x0 * c).epsilon(1e-14));
  CHECK(f.hess(0, 1) ==
        Catch::Approx(2 * x0 + c - x0 * y0 * s).epsilon(1e-13));
}

TEST_CASE("constant subexpressions are recognized structurally") {
  CHECK(is_constant(parse("2*pi + e^2", vars_t)));
  CHECK(!is_constant(parse("2*t", vars_t)));
  CHECK(!is_constant(parse("sin(t)-sin(t)", vars_t)));  // structural, not algebraic
  CHECK(evaluate_constant(parse("2^-2", vars_t)) == 0.25);
}

TEST_CASE("constant exponents use the direct power rule on negative bases") {
  // t^2 differentiates fine at negative t (would fail via exp(2 ln t))
  const auto e = parse("t^2", vars_t);
  std::vector<jet2> coords = {jet2::coordinate(1, 0, -3.0)};
  const jet2 f = evaluate(e, coords);
  CHECK(f.value() == 9.0);
  CHECK(f.grad(0) == -6.0);
  CHECK(f.hess(0, 0) == 2.0);
  // non-constant exponent on a negative base must report a domain error
  CHECK_THROWS_AS(evaluate(parse("(-2)^t", vars_t), coords), eval_domain_error);
}

TEST_CASE("evaluation domain errors carry the source position") {
  const auto e = parse("1 + ln(t)", vars_t);
  std::vector<jet2> coords = {jet2::coordinate(1, 0, -2.0)};
  try {
    evaluate(e, coords);
    FAIL("expected eval_domain_error");
  } catch (const eval_domain_error& err) {
    CHECK(err.position == 4);
  }
}

TEST_CASE("printer emits minimal parentheses that survive re-parsing") {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"-t^2", "-t^2"},
      {"(-t)^2", "(-t)^2"},
      {"2^3^2", "2^3^2"},
      {"(2^3)^2", "(2^3)^2"},
      {"(1+2)*3", "(1+2)*3"},
      {"1+2*3", "1+2*3"},
      {"1-(2-3)", "1-(2-3)"},
      {"1-2-3", "1-2-3"},
      {"t/(2*t)", "t/(2*t)"},
      {"sin(t)*cos(t)", "sin(t)*cos(t)"},
      {"--t", "--t"},
  };
  for (const auto& [src, want] : cases) {
    INFO(src);
    CHECK(to_string(parse(src, vars_t), vars_t) == want);
  }
}

namespace {

expr_ptr random_tree(rng& r, int depth, int nvars) {
  const double roll = r.uniform01();
  if (depth <= 0 || roll < 0.25) {
    if (r.uniform01() < 0.5)
      return make_number(std::round(r.uniform(-8.0, 8.0) * 4.0) / 4.0);
    return make_coord(static_cast<int>(r.uniform01() * nvars) % nvars);
  }
  if (roll < 0.35) return make_unary_minus(random_tree(r, depth - 1, nvars));
  if (roll < 0.5) {
    const auto fns = std::array{func_id::sin, func_id::cos, func_id::tanh,
                                func_id::exp, func_id::sinh};
    const auto fn = fns[static_cast<std::size_t>(r.uniform01() * 5) % 5];
    return make_call(fn, random_tree(r, depth - 1, nvars));
  }
  const char ops[] = {'+', '-', '*', '/', '^'};
  const char op = ops[static_cast<std::size_t>(r.uniform01() * 5) % 5];
  auto a = random_tree(r, depth - 1, nvars);
  auto b = random_tree(r, depth - 1, nvars);
  return make_binary(op, std::move(a), std::move(b));
}

}  // namespace

TEST_CASE("print/parse round trip is the identity on 1000 random trees") {
  rng r(20260819u);
  int checked = 0;
  for (int it = 0; it < 1000; ++it) {
    const auto tree = random_tree(r, 4, 2);
    const std::string printed = to_string(tree, vars_xy);
    expr_ptr back;
    try {
      back = parse(printed, vars_xy);
    } catch (const error&) {
      FAIL("printed form failed to re-parse: " << printed);
    }
    CHECK(equal(tree, back));
    CHECK(to_string(back, vars_xy) == printed);
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("round-tripped trees evaluate identically where defined") {
  rng r(77u);
  const std::vector<double> pt = {0.37, -0.81};
  int compared = 0;
  for (int it = 0; it < 400; ++it) {
    const auto tree = random_tree(r, 4, 2);
    const auto back = parse(to_string(tree, vars_xy), vars_xy);
    double v1 = 0, v2 = 0;
    bool ok1 = true, ok2 = true;
    try {
      v1 = evaluate_value(tree, pt);
    } catch (const error&) {
      ok1 = false;
    }
    try {
      v2 = evaluate_value(back, pt);
    } catch (const error&) {
      ok2 = false;
    }
    REQUIRE(ok1 == ok2);
    if (ok1) {
      CHECK(v1 == v2);  // identical trees, identical operations, bitwise equal
      ++compared;
    }
  }
  CHECK(compared > 100);  // most random trees stay in-domain
}
