#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ssmc {

// Base class for everything thrown by this library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- numeric layer ---------------------------------------------------------

struct dimension_mismatch : error {
  dimension_mismatch(std::size_t a, std::size_t b)
      : error("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

struct division_by_zero : error {
  division_by_zero() : error("division by zero (|denominator| < 1e-300)") {}
};

// Math-domain violation (ln of a non-positive value, tan at a pole, ...).
struct eval_domain_error : error {
  std::size_t position = 0;  // source offset when raised through an expression
  explicit eval_domain_error(const std::string& what_, std::size_t pos = 0)
      : error(what_), position(pos) {}
};

// --- expression layer -------------------------------------------------------

struct parse_error : error {
  std::size_t position;
  std::string expected;
  std::string found;
  parse_error(std::size_t pos, std::string expected_, std::string found_)
      : error("parse error at offset " + std::to_string(pos) + ": expected " + expected_ +
              ", found " + (found_.empty() ? std::string("end of input") : found_)),
        position(pos), expected(std::move(expected_)), found(std::move(found_)) {}
};

struct unknown_identifier : error {
  std::size_t position;
  std::string name;
  unknown_identifier(std::size_t pos, std::string name_)
      : error("unknown identifier '" + name_ + "' at offset " + std::to_string(pos)),
        position(pos), name(std::move(name_)) {}
};

// --- tensor / geometry layer ------------------------------------------------

struct shape_mismatch : error {
  using error::error;
};

struct slot_type_mismatch : error {
  using error::error;
};

struct singular_metric : error {
  using error::error;
};

struct asymmetric_metric : error {
  using error::error;
};

struct degenerate_pi : error {
  using error::error;
};

// --- catalog / driver layer --------------------------------------------------

struct schema_error : error {
  using error::error;
};

struct unknown_entry : error {
  explicit unknown_entry(const std::string& name) : error("unknown catalog entry '" + name + "'") {}
};

struct unsupported_dimension : error {
  using error::error;
};

struct invalid_count : error {
  using error::error;
};

// Suite preconditions (not a GRW entry, wrong dimension, bad coupling, ...).
struct precondition_error : error {
  using error::error;
};

struct bad_config : error {
  using error::error;
};

}  // namespace ssmc
