#pragma once

// Instance files for the jderiv tool.
//
//   format_version = 1
//
//   [preorder]              optional; when present the target ring is FI(P, R)
//   labels = a b c
//   pair = a b              one line per relation a <= b
//   auto_close = true
//
//   [ring]                  may be omitted when command = search
//   builtin = matrix 2 over zmod 3
//     expressions: zmod m | dual m | zero m k | matrix n over <expr>
//   or
//   kind = explicit
//   modulus = 2
//   rank = 2
//   product 0 1 = 0 1       b_0 * b_1; omitted products are zero
//   unit = 1 0              optional
//   or
//   kind = triangular
//   left = zmod 2
//   right = zmod 2
//   module_rank = 1
//   left_action 0 0 = 1     a_0 * m_0
//   right_action 0 0 = 1    m_0 * b_0
//
//   [task]
//   command = cross-check
//   seed = 1
//   trials = 1000
//   budget = 32
//   mode = exhaustive       or randomized
//   moduli = 2 3 4          search only
//   max_rank = 2            search only
//
// '#' starts a comment. Unknown sections and keys are errors.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jderiv/analysis.hpp"

namespace jderiv::cli {

inline constexpr int kFormatVersion = 1;

/// Parse or validation failure, with the source line when one applies.
class InstanceError : public std::runtime_error {
 public:
  InstanceError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Task {
  std::optional<std::string> command;
  std::uint64_t seed = 1;
  std::size_t trials = 1000;
  std::size_t budget = 32;
  SuiteMode mode = SuiteMode::ExhaustiveBasis;
  std::vector<Residue> moduli{2, 3, 4};
  std::size_t max_rank = 2;
};

struct Instance {
  std::optional<Preorder> preorder;
  /// Absent only for search tasks, which enumerate their own rings.
  std::optional<StructureRing> ring;
  std::string ring_description;
  /// Complete orthogonal family of R when one is known: diagonal matrix units
  /// for matrix rings, the unit otherwise. Empty for non-unital R.
  std::vector<RingElement> ring_family;
  Task task;
};

Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);

struct BuiltinRing {
  StructureRing ring;
  std::vector<RingElement> family;
};

/// Evaluates a ring expression such as "matrix 2 over dual 4".
BuiltinRing parse_ring_expression(const std::string& expr);

}  // namespace jderiv::cli
