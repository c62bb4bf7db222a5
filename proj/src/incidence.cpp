#include "jderiv/incidence.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

namespace jderiv {

namespace {
constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
}

IncidenceRing IncidenceRing::build(Preorder p, StructureRing r) {
  if (!r.has_unit()) throw InvalidArgument("FI(P, R) requires a unital coefficient ring");
  QuotientPoset q(p);
  const std::size_t n = p.size();
  auto pairs = p.relation_pairs();
  std::sort(pairs.begin(), pairs.end(), [&](auto a, auto b) {
    return std::make_tuple(q.class_of(a.first), q.class_of(a.second), a.first, a.second) <
           std::make_tuple(q.class_of(b.first), q.class_of(b.second), b.first, b.second);
  });
  std::vector<std::size_t> lookup(n * n, npos);
  for (std::size_t i = 0; i < pairs.size(); ++i) lookup[pairs[i].first * n + pairs[i].second] = i;

  const std::size_t k = r.rank();
  const std::size_t K = pairs.size() * k;
  const Residue m = r.modulus();
  std::vector<ZmVector> c(K * K, ZmVector(m, K));
  std::vector<std::string> labels(K);
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    const auto [p1, q1] = pairs[a];
    for (std::size_t t = 0; t < k; ++t)
      labels[a * k + t] = "[" + p.labels()[p1] + "," + p.labels()[q1] + "]." + r.labels()[t];
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      const auto [p2, q2] = pairs[b];
      if (q1 != p2) continue;
      const std::size_t target = lookup[p1 * n + q2];
      for (std::size_t t = 0; t < k; ++t)
        for (std::size_t t2 = 0; t2 < k; ++t2) {
          const ZmVector& prod = r.structure(t, t2);
          ZmVector& out = c[(a * k + t) * K + b * k + t2];
          for (std::size_t u = 0; u < k; ++u) out.set(target * k + u, prod[u]);
        }
    }
  }
  ZmVector unit(m, K);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t u = 0; u < k; ++u) unit.set(lookup[x * n + x] * k + u, r.unit()[u]);

  StructureRing ring = StructureRing::build(m, K, std::move(c), std::move(unit), std::move(labels));
  return IncidenceRing(std::move(p), std::move(q), std::move(r), std::move(ring), std::move(pairs),
                       std::move(lookup));
}

std::optional<std::size_t> IncidenceRing::pair_index(std::size_t p, std::size_t q) const {
  const std::size_t n = preorder_.size();
  if (p >= n || q >= n) throw InvalidArgument("pair_index: unknown point");
  const std::size_t i = pair_lookup_[p * n + q];
  if (i == npos) return std::nullopt;
  return i;
}

std::size_t IncidenceRing::index(std::size_t p, std::size_t q, std::size_t t) const {
  auto i = pair_index(p, q);
  if (!i) throw InvalidArgument("points are not related");
  if (t >= coeffs_.rank()) throw InvalidArgument("coefficient index out of range");
  return *i * coeffs_.rank() + t;
}

void IncidenceRing::require_element(const RingElement& a) const {
  if (!a.ring().same_as(ring_)) throw InvalidArgument("element of a different ring");
}

RingElement IncidenceRing::entry(std::size_t p, std::size_t q, const RingElement& r) const {
  if (!r.ring().same_as(coeffs_)) throw InvalidArgument("entry from a different coefficient ring");
  ZmVector v(ring_.modulus(), ring_.rank());
  for (std::size_t t = 0; t < coeffs_.rank(); ++t) v.set(index(p, q, t), r[t]);
  return ring_.element(std::move(v));
}

RingElement IncidenceRing::component(const RingElement& a, std::size_t p, std::size_t q) const {
  require_element(a);
  ZmVector v(ring_.modulus(), coeffs_.rank());
  if (auto i = pair_index(p, q)) {
    for (std::size_t t = 0; t < coeffs_.rank(); ++t) v.set(t, a[*i * coeffs_.rank() + t]);
  }
  return coeffs_.element(std::move(v));
}

RingElement IncidenceRing::convolve(const RingElement& a, const RingElement& b) const {
  require_element(a);
  require_element(b);
  const std::size_t n = preorder_.size();
  ZmVector out(ring_.modulus(), ring_.rank());
  for (const auto& [p, q] : pairs_) {
    RingElement sum = coeffs_.zero();
    for (std::size_t z = 0; z < n; ++z) {
      if (preorder_.leq(p, z) && preorder_.leq(z, q)) sum += component(a, p, z) * component(b, z, q);
    }
    for (std::size_t t = 0; t < coeffs_.rank(); ++t) out.set(index(p, q, t), sum[t]);
  }
  return ring_.element(std::move(out));
}

RingElement IncidenceRing::class_idempotent(std::size_t cls) const {
  RingElement e = ring_.zero();
  for (std::size_t x : quotient_.members(cls)) e += entry(x, x, coeffs_.unit());
  return e;
}

std::vector<RingElement> IncidenceRing::class_idempotents() const {
  std::vector<RingElement> out;
  for (std::size_t c = 0; c < quotient_.size(); ++c) out.push_back(class_idempotent(c));
  return out;
}

Block IncidenceRing::extract_block(const RingElement& a, std::size_t x, std::size_t y) const {
  const auto& xs = quotient_.members(x);
  const auto& ys = quotient_.members(y);
  Block b{xs.size(), ys.size(), {}};
  b.entries.reserve(xs.size() * ys.size());
  for (std::size_t p : xs)
    for (std::size_t q : ys) b.entries.push_back(component(a, p, q));
  return b;
}

RingElement IncidenceRing::place_block(const Block& phi, std::size_t x, std::size_t y) const {
  const auto& xs = quotient_.members(x);
  const auto& ys = quotient_.members(y);
  if (phi.rows != xs.size() || phi.cols != ys.size()) throw InvalidArgument("block shape mismatch");
  RingElement out = ring_.zero();
  if (!quotient_.leq(x, y)) return out;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j) out += entry(xs[i], ys[j], phi.at(i, j));
  return out;
}

bool IncidenceRing::is_finitary(const RingElement& a) const {
  require_element(a);
  return true;
}

// ---------------------------------------------------------------- family conditions

void require_orthogonal_family(const StructureRing& r, const std::vector<RingElement>& family) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!family[i].ring().same_as(r)) throw InvalidArgument("family member from another ring");
    if (!is_idempotent(family[i])) {
      throw InvalidArgument("family member " + std::to_string(i) + " is not idempotent");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (!are_orthogonal(family[i], family[j])) {
        throw InvalidArgument("family members " + std::to_string(j) + " and " + std::to_string(i) +
                              " are not orthogonal");
      }
    }
  }
}

FamilyReport verify_family_conditions(const StructureRing& r, const std::vector<RingElement>& family) {
  require_orthogonal_family(r, family);
  FamilyReport report;
  const std::size_t k = r.rank();
  for (std::size_t ei = 0; ei < family.size(); ++ei) {
    for (std::size_t ri = 0; ri < k; ++ri) {
      const RingElement er = family[ei] * r.basis(ri);
      for (std::size_t si = 0; si < k; ++si) {
        const RingElement rs = er * r.basis(si);
        for (std::size_t fi = 0; fi < family.size(); ++fi) {
          const RingElement lhs = rs * family[fi];
          RingElement rhs = r.zero();
          for (const auto& g : family) {
            const RingElement term = er * g * r.basis(si) * family[fi];
            if (!term.is_zero()) rhs += term;
          }
          ++report.checked;
          if (lhs != rhs && report.passed) {
            report.passed = false;
            report.witness = FamilyWitness{ei, fi, ri, si};
          }
        }
      }
    }
  }
  return report;
}

}  // namespace jderiv
