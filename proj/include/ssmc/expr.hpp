#pragma once

// Scalar field expressions over a chart.
//
// Metric components, the 1-form components and the concircularity factor all
// arrive as strings ("exp(2*t)", "-1/(x1+3)", "sin(r)^2*sin(a1)^2").  They are
// parsed once into immutable ASTs and then evaluated on jets, so every field
// automatically carries exact first and second partials.
//
// Grammar (binary minus and divide left-associative, ^ right-associative,
// unary minus binding looser than ^, so -t^2 == -(t^2)):
//
//   expr  := term (("+" | "-") term)*
//   term  := unary (("*" | "/") unary)*
//   unary := "-" unary | power
//   power := atom ("^" unary)?
//   atom  := NUMBER | IDENT | IDENT "(" expr ("," expr)* ")" | "(" expr ")"
//
// Known functions: exp ln sin cos tan sinh cosh tanh sqrt.  Known constants:
// pi, e.  Every other identifier must be a coordinate name of the chart.

#include <array>
#include <charconv>
#include <cmath>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ssmc/errors.hpp"
#include "ssmc/jet.hpp"

namespace ssmc {

enum class expr_kind { number, coord, unary_minus, binary, call };

enum class func_id { exp, ln, sin, cos, tan, sinh, cosh, tanh, sqrt };

inline constexpr std::array<std::string_view, 9> func_names = {
    "exp", "ln", "sin", "cos", "tan", "sinh", "cosh", "tanh", "sqrt"};

struct expr_node;
using expr_ptr = std::shared_ptr<const expr_node>;

struct expr_node {
  expr_kind kind;
  double number = 0.0;       // kind == number
  int coord = -1;            // kind == coord
  char op = 0;               // kind == binary: one of + - * / ^
  func_id fn = func_id::exp; // kind == call
  expr_ptr a, b;             // children (unary/call use a only)
  std::size_t pos = 0;       // byte offset in the source string
};

inline expr_ptr make_number(double v, std::size_t pos = 0) {
  auto n = std::make_shared<expr_node>();
  n->kind = expr_kind::number;
  n->number = v;
  n->pos = pos;
  return n;
}

inline expr_ptr make_coord(int idx, std::size_t pos = 0) {
  auto n = std::make_shared<expr_node>();
  n->kind = expr_kind::coord;
  n->coord = idx;
  n->pos = pos;
  return n;
}

inline expr_ptr make_unary_minus(expr_ptr a, std::size_t pos = 0) {
  // Canonical form: a negated literal IS a negative literal.  Folding here
  // keeps one representation for "-1.25" whether it came from the parser or
  // from programmatic construction, so print/parse round trips exactly.
  if (a->kind == expr_kind::number) return make_number(-a->number, pos);
  auto n = std::make_shared<expr_node>();
  n->kind = expr_kind::unary_minus;
  n->a = std::move(a);
  n->pos = pos;
  return n;
}

inline expr_ptr make_binary(char op, expr_ptr a, expr_ptr b, std::size_t pos = 0) {
  auto n = std::make_shared<expr_node>();
  n->kind = expr_kind::binary;
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  n->pos = pos;
  return n;
}

inline expr_ptr make_call(func_id fn, expr_ptr a, std::size_t pos = 0) {
  auto n = std::make_shared<expr_node>();
  n->kind = expr_kind::call;
  n->fn = fn;
  n->a = std::move(a);
  n->pos = pos;
  return n;
}

namespace detail {

struct token {
  enum class kind { number, ident, punct, end } k = kind::end;
  std::size_t pos = 0;
  double number = 0.0;
  std::string_view text;  // ident text or single punct char
};

class parser {
 public:
  parser(std::string_view src, std::span<const std::string> coord_names)
      : src_(src), coords_(coord_names) {
    advance();
  }

  expr_ptr parse_all() {
    expr_ptr e = parse_expr();
    if (cur_.k != token::kind::end)
      throw parse_error(cur_.pos, "end of input", std::string(cur_.text));
    return e;
  }

 private:
  expr_ptr parse_expr() {
    expr_ptr lhs = parse_term();
    while (is_punct('+') || is_punct('-')) {
      const char op = cur_.text[0];
      const std::size_t pos = cur_.pos;
      advance();
      lhs = make_binary(op, std::move(lhs), parse_term(), pos);
    }
    return lhs;
  }

  expr_ptr parse_term() {
    expr_ptr lhs = parse_unary();
    while (is_punct('*') || is_punct('/')) {
      const char op = cur_.text[0];
      const std::size_t pos = cur_.pos;
      advance();
      lhs = make_binary(op, std::move(lhs), parse_unary(), pos);
    }
    return lhs;
  }

  expr_ptr parse_unary() {
    if (is_punct('-')) {
      const std::size_t pos = cur_.pos;
      advance();
      return make_unary_minus(parse_unary(), pos);
    }
    return parse_power();
  }

  expr_ptr parse_power() {
    expr_ptr base = parse_atom();
    if (is_punct('^')) {
      const std::size_t pos = cur_.pos;
      advance();
      return make_binary('^', std::move(base), parse_unary(), pos);
    }
    return base;
  }

  expr_ptr parse_atom() {
    if (cur_.k == token::kind::number) {
      expr_ptr e = make_number(cur_.number, cur_.pos);
      advance();
      return e;
    }
    if (cur_.k == token::kind::ident) {
      const token id = cur_;
      advance();
      if (is_punct('(')) {
        advance();
        std::vector<expr_ptr> args;
        args.push_back(parse_expr());
        while (is_punct(',')) {
          advance();
          args.push_back(parse_expr());
        }
        if (!is_punct(')')) throw parse_error(cur_.pos, "')'", std::string(cur_.text));
        advance();
        for (std::size_t i = 0; i < func_names.size(); ++i)
          if (func_names[i] == id.text) {
            if (args.size() != 1)
              throw parse_error(id.pos, "1 argument to '" + std::string(id.text) + "'",
                                std::to_string(args.size()) + " arguments");
            return make_call(static_cast<func_id>(i), std::move(args[0]), id.pos);
          }
        throw unknown_identifier(id.pos, std::string(id.text));
      }
      if (id.text == "pi") return make_number(3.14159265358979323846, id.pos);
      if (id.text == "e") return make_number(2.71828182845904523536, id.pos);
      for (std::size_t i = 0; i < coords_.size(); ++i)
        if (coords_[i] == id.text) return make_coord(static_cast<int>(i), id.pos);
      throw unknown_identifier(id.pos, std::string(id.text));
    }
    if (is_punct('(')) {
      advance();
      expr_ptr e = parse_expr();
      if (!is_punct(')')) throw parse_error(cur_.pos, "')'", std::string(cur_.text));
      advance();
      return e;
    }
    throw parse_error(cur_.pos, "an expression", std::string(cur_.text));
  }

  bool is_punct(char c) const { return cur_.k == token::kind::punct && cur_.text[0] == c; }

  void advance() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
                                  src_[pos_] == '\r'))
      ++pos_;
    cur_ = token{};
    cur_.pos = pos_;
    if (pos_ >= src_.size()) {
      cur_.k = token::kind::end;
      return;
    }
    const char c = src_[pos_];
    if ((c >= '0' && c <= '9') || (c == '.' && pos_ + 1 < src_.size() && src_[pos_ + 1] >= '0' &&
                                   src_[pos_ + 1] <= '9')) {
      double v = 0.0;
      const char* begin = src_.data() + pos_;
      const char* end = src_.data() + src_.size();
      auto [p, ec] = std::from_chars(begin, end, v);
      if (ec != std::errc())
        throw parse_error(pos_, "a number", std::string(1, c));
      cur_.k = token::kind::number;
      cur_.number = v;
      cur_.text = src_.substr(pos_, static_cast<std::size_t>(p - begin));
      pos_ += static_cast<std::size_t>(p - begin);
      return;
    }
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
      std::size_t len = 1;
      while (pos_ + len < src_.size()) {
        const char d = src_[pos_ + len];
        if ((d >= 'a' && d <= 'z') || (d >= 'A' && d <= 'Z') || (d >= '0' && d <= '9') || d == '_')
          ++len;
        else
          break;
      }
      cur_.k = token::kind::ident;
      cur_.text = src_.substr(pos_, len);
      pos_ += len;
      return;
    }
    if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^' || c == '(' || c == ')' ||
        c == ',') {
      cur_.k = token::kind::punct;
      cur_.text = src_.substr(pos_, 1);
      ++pos_;
      return;
    }
    throw parse_error(pos_, "a number, identifier, operator, or parenthesis",
                      std::string(1, c));
  }

  std::string_view src_;
  std::span<const std::string> coords_;
  std::size_t pos_ = 0;
  token cur_;
};

}  // namespace detail

// Parse against a fixed list of coordinate names; every identifier that is not
// a known function or constant must be one of them.
inline expr_ptr parse(std::string_view src, std::span<const std::string> coord_names) {
  return detail::parser(src, coord_names).parse_all();
}

// True when the subtree references no coordinate (so it evaluates to the same
// number everywhere; such exponents keep ^ on the exact power chain rule).
inline bool is_constant(const expr_ptr& e) {
  switch (e->kind) {
    case expr_kind::number: return true;
    case expr_kind::coord: return false;
    case expr_kind::unary_minus: return is_constant(e->a);
    case expr_kind::binary: return is_constant(e->a) && is_constant(e->b);
    case expr_kind::call: return is_constant(e->a);
  }
  return false;
}

inline double evaluate_constant(const expr_ptr& e);

inline jet2 apply_function(func_id fn, const jet2& a) {
  switch (fn) {
    case func_id::exp: return exp(a);
    case func_id::ln: return ln(a);
    case func_id::sin: return sin(a);
    case func_id::cos: return cos(a);
    case func_id::tan: return tan(a);
    case func_id::sinh: return sinh(a);
    case func_id::cosh: return cosh(a);
    case func_id::tanh: return tanh(a);
    case func_id::sqrt: return sqrt(a);
  }
  throw error("unreachable function id");
}

// Evaluate on coordinate jets.  coords[i] must be the jet of x^i; all domain
// violations are re-thrown carrying the offending node's source offset.
inline jet2 evaluate(const expr_ptr& e, std::span<const jet2> coords) {
  if (coords.empty()) throw dimension_mismatch(0, 1);
  const int n = coords[0].dim();
  switch (e->kind) {
    case expr_kind::number:
      return jet2::constant(n, e->number);
    case expr_kind::coord:
      if (e->coord < 0 || e->coord >= static_cast<int>(coords.size()))
        throw dimension_mismatch(static_cast<std::size_t>(e->coord), coords.size());
      return coords[static_cast<std::size_t>(e->coord)];
    case expr_kind::unary_minus:
      return -evaluate(e->a, coords);
    case expr_kind::binary: {
      if (e->op == '^') {
        const jet2 base = evaluate(e->a, coords);
        try {
          if (is_constant(e->b)) return pow(base, evaluate_constant(e->b));
          return pow(base, evaluate(e->b, coords));  // exp(b ln a), needs a > 0
        } catch (const eval_domain_error& de) {
          throw eval_domain_error(de.what(), e->pos);
        }
      }
      const jet2 a = evaluate(e->a, coords);
      const jet2 b = evaluate(e->b, coords);
      try {
        switch (e->op) {
          case '+': return a + b;
          case '-': return a - b;
          case '*': return a * b;
          case '/': return a / b;
        }
      } catch (const eval_domain_error& de) {
        throw eval_domain_error(de.what(), e->pos);
      }
      throw error("unreachable operator");
    }
    case expr_kind::call: {
      const jet2 a = evaluate(e->a, coords);
      try {
        return apply_function(e->fn, a);
      } catch (const eval_domain_error& de) {
        throw eval_domain_error(de.what(), e->pos);
      }
    }
  }
  throw error("unreachable expression kind");
}

inline double evaluate_constant(const expr_ptr& e) {
  const jet2 dummy = jet2::constant(1, 0.0);
  return evaluate(e, std::span<const jet2>(&dummy, 1)).value();
}

// Plain double evaluation (used by the finite-difference cross checks).
inline double evaluate_value(const expr_ptr& e, std::span<const double> point) {
  std::vector<jet2> coords;
  coords.reserve(point.size());
  for (std::size_t i = 0; i < point.size(); ++i)
    coords.push_back(jet2::constant(static_cast<int>(point.size()), point[i]));
  return evaluate(e, coords).value();
}

// --- canonical printing ------------------------------------------------------
//
// print(parse(s)) re-parses to a structurally identical tree.  Parentheses are
// emitted only where the grammar needs them; numbers use the shortest
// round-trip decimal form.

namespace detail {

inline int precedence(const expr_ptr& e) {
  switch (e->kind) {
    case expr_kind::number:
      // A negative literal prints with a leading '-', which the grammar reads
      // as unary minus; rank it like one so "(-2)^t" gets its parentheses.
      return std::signbit(e->number) ? 3 : 5;
    case expr_kind::coord:
    case expr_kind::call: return 5;
    case expr_kind::unary_minus: return 3;
    case expr_kind::binary: return (e->op == '^') ? 4 : (e->op == '*' || e->op == '/') ? 2 : 1;
  }
  return 5;
}

inline void print_number(std::string& out, double v) {
  std::array<char, 64> buf;
  auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  out.append(buf.data(), p);
}

inline void print_node(std::string& out, const expr_ptr& e,
                       std::span<const std::string> coord_names, int min_prec) {
  const int prec = precedence(e);
  const bool wrap = prec < min_prec;
  if (wrap) out.push_back('(');
  switch (e->kind) {
    case expr_kind::number:
      print_number(out, e->number);
      break;
    case expr_kind::coord:
      out.append(coord_names[static_cast<std::size_t>(e->coord)]);
      break;
    case expr_kind::unary_minus:
      out.push_back('-');
      print_node(out, e->a, coord_names, 3);
      break;
    case expr_kind::binary: {
      // Left-associative chains keep the left child at own precedence and
      // force the right child one level tighter; ^ is the mirror image.
      const int lhs_min = (e->op == '^') ? 5 : prec;
      const int rhs_min = (e->op == '^') ? 3 : prec + 1;
      print_node(out, e->a, coord_names, lhs_min);
      out.push_back(e->op);
      print_node(out, e->b, coord_names, rhs_min);
      break;
    }
    case expr_kind::call:
      out.append(func_names[static_cast<std::size_t>(e->fn)]);
      out.push_back('(');
      print_node(out, e->a, coord_names, 0);
      out.push_back(')');
      break;
  }
  if (wrap) out.push_back(')');
}

}  // namespace detail

inline std::string to_string(const expr_ptr& e, std::span<const std::string> coord_names) {
  std::string out;
  detail::print_node(out, e, coord_names, 0);
  return out;
}

// Structural tree equality (used by the print/parse round-trip tests).
inline bool equal(const expr_ptr& a, const expr_ptr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case expr_kind::number: return a->number == b->number;
    case expr_kind::coord: return a->coord == b->coord;
    case expr_kind::unary_minus: return equal(a->a, b->a);
    case expr_kind::binary: return a->op == b->op && equal(a->a, b->a) && equal(a->b, b->b);
    case expr_kind::call: return a->fn == b->fn && equal(a->a, b->a);
  }
  return false;
}

}  // namespace ssmc
