#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace amenkit {

// Base class for every error thrown by the library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input text could not be understood (file formats, universe specs, flag values).
struct parse_error : error {
  std::size_t line;  // 1-based; 0 when no line applies (e.g. unreadable file)
  parse_error(std::string msg, std::size_t line_no = 0)
      : error(std::move(msg)), line(line_no) {}
};

// A configured cap was hit (element budgets, enumeration orders, subset scans,
// walk-count explosions).
struct resource_limit_error : error {
  using error::error;
};

// An element or vertex index is outside its universe.
struct index_error : error {
  using error::error;
};

// Multiplication table fails associativity; (a, b, c) is the first violating triple.
struct not_associative_error : error {
  std::uint32_t a, b, c;
  not_associative_error(std::string msg, std::uint32_t a_, std::uint32_t b_, std::uint32_t c_)
      : error(std::move(msg)), a(a_), b(b_), c(c_) {}
};

// A stated precondition does not hold for the given input.
struct precondition_error : error {
  using error::error;
};

// The semigroup is not left reversible, so a reversibility-dependent
// construction cannot run.
struct not_left_reversible_error : precondition_error {
  using precondition_error::precondition_error;
};

// The relation handed to quotient() is not a congruence.
struct not_a_congruence_error : precondition_error {
  using precondition_error::precondition_error;
};

// An operation that requires a nonempty set received an empty one.
struct empty_set_error : precondition_error {
  using precondition_error::precondition_error;
};

// Growth classification needs at least six data points.
struct too_few_points_error : precondition_error {
  using precondition_error::precondition_error;
};

// A translate defect exceeds the mu bound required before refinement.
struct precondition_defect_error : precondition_error {
  using precondition_error::precondition_error;
};

// mu >= 1/(2|F|): the refinement bound's denominator is not positive.
struct denominator_error : precondition_error {
  using precondition_error::precondition_error;
};

// A quasi-isometry check failed, so the transfer construction refuses to run.
struct qi_not_verified_error : precondition_error {
  using precondition_error::precondition_error;
};

// A witness search that theory guarantees to succeed came up empty;
// indicates an implementation bug or a violated precondition upstream.
struct search_exhausted_error : error {
  using error::error;
};

// One step of the chained thickness witness could not be extended.
struct chain_step_error : search_exhausted_error {
  using search_exhausted_error::search_exhausted_error;
};

// No common right multiple found within the searched radius.
struct klawe_witness_error : error {
  std::uint32_t radius;
  klawe_witness_error(std::string msg, std::uint32_t searched_radius)
      : error(std::move(msg)), radius(searched_radius) {}
};

// A theorem-backed inequality failed to verify: an implementation bug.
struct inequality_violated_error : error {
  using error::error;
};

// Arithmetic left the exactly-representable range.
struct overflow_error : error {
  using error::error;
};

}  // namespace amenkit
