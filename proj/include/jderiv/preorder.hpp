#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "jderiv/error.hpp"

namespace jderiv {

/// Finite reflexive, transitive relation on labelled points.
class Preorder {
 public:
  /// Pairs (x, y) mean x <= y; x <= x is always implied. With auto_close the
  /// transitive closure is taken, otherwise a non-transitive relation is
  /// rejected with the missing pair as witness.
  static Preorder from_pairs(std::vector<std::string> labels,
                             const std::vector<std::pair<std::string, std::string>>& pairs,
                             bool auto_close = true);
  /// Index-based variant of from_pairs.
  static Preorder from_index_pairs(std::size_t n,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                   bool auto_close = true);

  static Preorder chain(std::size_t n);
  static Preorder antichain(std::size_t n);
  /// n points, all mutually related (a single class of size n).
  static Preorder cycle(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t index_of(const std::string& label) const;

  bool leq(std::size_t x, std::size_t y) const { return rel_[x * size() + y] != 0; }
  bool equivalent(std::size_t x, std::size_t y) const { return leq(x, y) && leq(y, x); }
  bool comparable(std::size_t x, std::size_t y) const { return leq(x, y) || leq(y, x); }

  /// All related pairs (x, y), x <= y, in lexicographic order.
  std::vector<std::pair<std::size_t, std::size_t>> relation_pairs() const;

  /// Same relation after renaming point i to perm[i].
  Preorder relabeled(const std::vector<std::size_t>& perm) const;

 private:
  Preorder(std::vector<std::string> labels, std::vector<char> rel)
      : labels_(std::move(labels)), rel_(std::move(rel)) {}

  std::vector<std::string> labels_;
  std::vector<char> rel_;  // row-major n x n
};

/// Poset of ~-classes, x ~ y iff x <= y <= x. Classes are numbered by their
/// least member, members sorted ascending.
class QuotientPoset {
 public:
  explicit QuotientPoset(const Preorder& p);

  std::size_t size() const { return classes_.size(); }
  const std::vector<std::vector<std::size_t>>& classes() const { return classes_; }
  const std::vector<std::size_t>& members(std::size_t c) const;
  std::size_t class_of(std::size_t x) const { return class_of_.at(x); }

  bool leq(std::size_t a, std::size_t b) const { return order_[a * size() + b] != 0; }
  bool comparable(std::size_t a, std::size_t b) const { return leq(a, b) || leq(b, a); }
  /// Classes comparable with no other class.
  std::vector<std::size_t> isolated_classes() const;

 private:
  std::vector<std::vector<std::size_t>> classes_;
  std::vector<std::size_t> class_of_;
  std::vector<char> order_;
};

QuotientPoset quotient(const Preorder& p);

/// Points comparable with no other point.
std::vector<std::size_t> isolated_elements(const Preorder& p);

/// {z : x <= z <= y} in the quotient; empty when x is not below y. Throws
/// InvalidArgument for unknown class indices.
std::vector<std::size_t> interval(const QuotientPoset& q, std::size_t x, std::size_t y);

}  // namespace jderiv
