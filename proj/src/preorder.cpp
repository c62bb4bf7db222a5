#include "jderiv/preorder.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

#include "jderiv/error.hpp"

namespace jderiv {

namespace {

// Reflexive-transitive closure by repeated boolean squaring until stable.
std::vector<char> closure(std::size_t n, std::vector<char> rel) {
  for (std::size_t i = 0; i < n; ++i) rel[i * n + i] = 1;
  for (;;) {
    std::vector<char> sq(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (!rel[i * n + k]) continue;
        for (std::size_t j = 0; j < n; ++j) sq[i * n + j] |= rel[k * n + j];
      }
    if (sq == rel) return rel;
    rel = std::move(sq);
  }
}

}  // namespace

Preorder Preorder::from_index_pairs(std::size_t n,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                    bool auto_close) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  std::vector<std::pair<std::string, std::string>> named;
  for (auto [x, y] : pairs) {
    if (x >= n || y >= n) throw InvalidArgument("pair references an unknown point");
    named.emplace_back(labels[x], labels[y]);
  }
  return from_pairs(std::move(labels), named, auto_close);
}

Preorder Preorder::from_pairs(std::vector<std::string> labels,
                              const std::vector<std::pair<std::string, std::string>>& pairs,
                              bool auto_close) {
  const std::size_t n = labels.size();
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (!index.emplace(labels[i], i).second) {
      throw InvalidArgument("duplicate label '" + labels[i] + "'");
    }
  }
  std::vector<char> rel(n * n, 0);
  for (const auto& [a, b] : pairs) {
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end() || ib == index.end()) {
      throw InvalidArgument("pair (" + a + "," + b + ") references an unknown label");
    }
    rel[ia->second * n + ib->second] = 1;
  }
  // Reflexive pairs are implied; only transitivity is the caller's business.
  for (std::size_t i = 0; i < n; ++i) rel[i * n + i] = 1;
  if (auto_close) {
    rel = closure(n, std::move(rel));
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) {
          if (rel[i * n + k] && rel[k * n + j] && !rel[i * n + j]) {
            throw ValidationError("relation is not transitive: missing (" + labels[i] + "," +
                                      labels[j] + ")",
                                  {i, j});
          }
        }
  }
  return Preorder(std::move(labels), std::move(rel));
}

Preorder Preorder::chain(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  return from_index_pairs(n, pairs, true);
}

Preorder Preorder::antichain(std::size_t n) { return from_index_pairs(n, {}, true); }

Preorder Preorder::cycle(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) pairs.emplace_back(i, (i + 1) % n);
  return from_index_pairs(n, pairs, true);
}

std::size_t Preorder::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw InvalidArgument("unknown label '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

std::vector<std::pair<std::size_t, std::size_t>> Preorder::relation_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t x = 0; x < size(); ++x)
    for (std::size_t y = 0; y < size(); ++y)
      if (leq(x, y)) out.emplace_back(x, y);
  return out;
}

Preorder Preorder::relabeled(const std::vector<std::size_t>& perm) const {
  const std::size_t n = size();
  if (perm.size() != n) throw InvalidArgument("permutation has the wrong length");
  std::vector<char> seen(n, 0);
  for (auto p : perm) {
    if (p >= n || seen[p]) throw InvalidArgument("not a permutation");
    seen[p] = 1;
  }
  std::vector<std::string> labels(n);
  std::vector<char> rel(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    labels[perm[i]] = labels_[i];
    for (std::size_t j = 0; j < n; ++j) rel[perm[i] * n + perm[j]] = rel_[i * n + j];
  }
  return Preorder(std::move(labels), std::move(rel));
}

// ---------------------------------------------------------------- quotient

QuotientPoset::QuotientPoset(const Preorder& p) {
  const std::size_t n = p.size();
  class_of_.assign(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    if (class_of_[x] != n) continue;
    const std::size_t c = classes_.size();
    classes_.emplace_back();
    for (std::size_t y = x; y < n; ++y) {
      if (p.equivalent(x, y)) {
        class_of_[y] = c;
        classes_[c].push_back(y);
      }
    }
  }
  const std::size_t q = classes_.size();
  order_.assign(q * q, 0);
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b) order_[a * q + b] = p.leq(classes_[a][0], classes_[b][0]);
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b) assert(a == b || !(leq(a, b) && leq(b, a)));
}

const std::vector<std::size_t>& QuotientPoset::members(std::size_t c) const {
  if (c >= classes_.size()) throw InvalidArgument("unknown class " + std::to_string(c));
  return classes_[c];
}

std::vector<std::size_t> QuotientPoset::isolated_classes() const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < size(); ++a) {
    bool isolated = true;
    for (std::size_t b = 0; b < size() && isolated; ++b) isolated = a == b || !comparable(a, b);
    if (isolated) out.push_back(a);
  }
  return out;
}

QuotientPoset quotient(const Preorder& p) { return QuotientPoset(p); }

std::vector<std::size_t> isolated_elements(const Preorder& p) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < p.size(); ++x) {
    bool isolated = true;
    for (std::size_t y = 0; y < p.size() && isolated; ++y) isolated = x == y || !p.comparable(x, y);
    if (isolated) out.push_back(x);
  }
  return out;
}

std::vector<std::size_t> interval(const QuotientPoset& q, std::size_t x, std::size_t y) {
  if (x >= q.size() || y >= q.size()) throw InvalidArgument("interval: unknown class");
  std::vector<std::size_t> out;
  if (!q.leq(x, y)) return out;
  for (std::size_t z = 0; z < q.size(); ++z)
    if (q.leq(x, z) && q.leq(z, y)) out.push_back(z);
  return out;
}

}  // namespace jderiv
