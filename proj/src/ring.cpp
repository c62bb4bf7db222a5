#include "jderiv/ring.hpp"

#include <algorithm>
#include <utility>

namespace jderiv {

struct StructureRing::Impl {
  Residue modulus;
  std::size_t rank;
  std::vector<ZmVector> constants;  // index i * rank + j
  // Nonzero (t, c[i][j][t]) pairs per product, used by multiply().
  std::vector<std::vector<std::pair<std::size_t, Residue>>> sparse;
  std::optional<ZmVector> unit;
  std::vector<std::string> labels;
};

namespace {

std::vector<std::string> default_labels(std::size_t k) {
  std::vector<std::string> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back("b" + std::to_string(i));
  return out;
}

}  // namespace

StructureRing StructureRing::build(Residue modulus, std::size_t rank,
                                   std::vector<ZmVector> constants, std::optional<ZmVector> unit,
                                   std::vector<std::string> labels) {
  check_modulus(modulus);
  // rank 0 is the zero ring; it only arises as the corner of e = 0.
  if (constants.size() != rank * rank) {
    throw InvalidArgument("expected " + std::to_string(rank * rank) + " structure constants, got " +
                          std::to_string(constants.size()));
  }
  for (const auto& c : constants) {
    if (c.size() != rank || c.modulus() != modulus) {
      throw InvalidArgument("structure constant shape or modulus mismatch");
    }
  }
  if (unit && (unit->size() != rank || unit->modulus() != modulus)) {
    throw InvalidArgument("unit shape or modulus mismatch");
  }
  if (labels.empty()) labels = default_labels(rank);
  if (labels.size() != rank) throw InvalidArgument("label count does not match rank");

  auto impl = std::make_shared<Impl>();
  impl->modulus = modulus;
  impl->rank = rank;
  impl->sparse.resize(rank * rank);
  for (std::size_t ij = 0; ij < rank * rank; ++ij) {
    for (std::size_t t = 0; t < rank; ++t) {
      if (constants[ij][t] != 0) impl->sparse[ij].emplace_back(t, constants[ij][t]);
    }
  }
  impl->constants = std::move(constants);
  impl->unit = std::move(unit);
  impl->labels = std::move(labels);
  StructureRing ring(std::move(impl));

  if (auto bad = ring.associativity_violation()) {
    const auto [i, j, l] = *bad;
    throw ValidationError("associativity fails on basis triple (" + std::to_string(i) + "," +
                              std::to_string(j) + "," + std::to_string(l) + ")",
                          {i, j, l});
  }
  if (ring.impl_->unit) {
    const ZmVector& u = *ring.impl_->unit;
    for (std::size_t i = 0; i < rank; ++i) {
      const ZmVector b = ZmVector::unit_vector(modulus, rank, i);
      if (ring.multiply(u, b) != b || ring.multiply(b, u) != b) {
        throw ValidationError("declared unit fails on basis element " + std::to_string(i), {i});
      }
    }
  }
  return ring;
}

Residue StructureRing::modulus() const { return impl_->modulus; }
std::size_t StructureRing::rank() const { return impl_->rank; }
const std::vector<std::string>& StructureRing::labels() const { return impl_->labels; }

const ZmVector& StructureRing::structure(std::size_t i, std::size_t j) const {
  return impl_->constants.at(i * impl_->rank + j);
}

ZmVector StructureRing::multiply(const ZmVector& x, const ZmVector& y) const {
  const std::size_t k = impl_->rank;
  const Residue m = impl_->modulus;
  if (x.size() != k || y.size() != k || x.modulus() != m || y.modulus() != m) {
    throw InvalidArgument("multiply: operand shape or modulus mismatch");
  }
  std::vector<Residue> acc(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j) {
      if (y[j] == 0) continue;
      const Residue xy = x[i] * y[j] % m;
      for (const auto& [t, c] : impl_->sparse[i * k + j]) acc[t] = (acc[t] + xy * c) % m;
    }
  }
  return ZmVector(m, std::move(acc));
}

bool StructureRing::has_unit() const { return impl_->unit.has_value(); }

RingElement StructureRing::unit() const {
  if (!impl_->unit) throw InvalidArgument("ring has no unit");
  return RingElement(*this, *impl_->unit);
}

RingElement StructureRing::zero() const {
  return RingElement(*this, ZmVector(impl_->modulus, impl_->rank));
}

RingElement StructureRing::basis(std::size_t i) const {
  return RingElement(*this, ZmVector::unit_vector(impl_->modulus, impl_->rank, i));
}

RingElement StructureRing::element(ZmVector coefficients) const {
  return RingElement(*this, std::move(coefficients));
}

RingElement StructureRing::element(std::vector<Residue> coefficients) const {
  return RingElement(*this, ZmVector(impl_->modulus, std::move(coefficients)));
}

std::optional<std::array<std::size_t, 3>> StructureRing::associativity_violation() const {
  const std::size_t k = impl_->rank;
  const Residue m = impl_->modulus;
  for (std::size_t i = 0; i < k; ++i) {
    const ZmVector bi = ZmVector::unit_vector(m, k, i);
    for (std::size_t j = 0; j < k; ++j) {
      const ZmVector& ij = structure(i, j);
      for (std::size_t l = 0; l < k; ++l) {
        const ZmVector bl = ZmVector::unit_vector(m, k, l);
        if (multiply(ij, bl) != multiply(bi, structure(j, l))) {
          return std::array<std::size_t, 3>{i, j, l};
        }
      }
    }
  }
  return std::nullopt;
}

bool StructureRing::same_table(const StructureRing& other) const {
  if (same_as(other)) return true;
  return impl_->modulus == other.impl_->modulus && impl_->rank == other.impl_->rank &&
         impl_->constants == other.impl_->constants && impl_->unit == other.impl_->unit;
}

// ---------------------------------------------------------------- RingElement

RingElement::RingElement(StructureRing ring, ZmVector coefficients)
    : ring_(std::move(ring)), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() != ring_.rank() || coeffs_.modulus() != ring_.modulus()) {
    throw InvalidArgument("element coefficients do not match ring rank or modulus");
  }
}

void RingElement::require_same_ring(const RingElement& o) const {
  if (!ring_.same_as(o.ring_)) throw InvalidArgument("elements belong to different rings");
}

RingElement& RingElement::operator+=(const RingElement& o) {
  require_same_ring(o);
  coeffs_ += o.coeffs_;
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
  require_same_ring(o);
  coeffs_ -= o.coeffs_;
  return *this;
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  a.require_same_ring(b);
  return RingElement(a.ring_, a.ring_.multiply(a.coeffs_, b.coeffs_));
}

bool is_idempotent(const RingElement& e) { return e * e == e; }

bool are_orthogonal(const RingElement& e, const RingElement& f) {
  return (e * f).is_zero() && (f * e).is_zero();
}

// ---------------------------------------------------------------- Bimodule

Bimodule Bimodule::build(StructureRing left, StructureRing right, std::size_t rank,
                         std::vector<ZmVector> left_action, std::vector<ZmVector> right_action) {
  const Residue m = left.modulus();
  if (right.modulus() != m) throw InvalidArgument("bimodule rings have different moduli");
  const std::size_t ka = left.rank(), kb = right.rank();
  if (left_action.size() != ka * rank || right_action.size() != rank * kb) {
    throw InvalidArgument("bimodule action tables have the wrong size");
  }
  for (const auto& v : left_action)
    if (v.size() != rank || v.modulus() != m) throw InvalidArgument("left action shape mismatch");
  for (const auto& v : right_action)
    if (v.size() != rank || v.modulus() != m) throw InvalidArgument("right action shape mismatch");

  Bimodule bm(std::move(left), std::move(right), rank, std::move(left_action),
              std::move(right_action));
  const auto& A = bm.left_;
  const auto& B = bm.right_;
  for (std::size_t j = 0; j < rank; ++j) {
    const ZmVector mj = ZmVector::unit_vector(m, rank, j);
    for (std::size_t i = 0; i < ka; ++i) {
      const ZmVector ai = ZmVector::unit_vector(m, ka, i);
      for (std::size_t i2 = 0; i2 < ka; ++i2) {
        const ZmVector ai2 = ZmVector::unit_vector(m, ka, i2);
        if (bm.act_left(A.structure(i, i2), mj) != bm.act_left(ai, bm.act_left(ai2, mj))) {
          throw ValidationError("left action not associative on (a" + std::to_string(i) + ",a" +
                                    std::to_string(i2) + ",m" + std::to_string(j) + ")",
                                {i, i2, j});
        }
      }
      for (std::size_t l = 0; l < kb; ++l) {
        const ZmVector bl = ZmVector::unit_vector(m, kb, l);
        if (bm.act_right(bm.act_left(ai, mj), bl) != bm.act_left(ai, bm.act_right(mj, bl))) {
          throw ValidationError("actions do not commute on (a" + std::to_string(i) + ",m" +
                                    std::to_string(j) + ",b" + std::to_string(l) + ")",
                                {i, j, l});
        }
      }
    }
    for (std::size_t l = 0; l < kb; ++l) {
      for (std::size_t l2 = 0; l2 < kb; ++l2) {
        const ZmVector bl = ZmVector::unit_vector(m, kb, l);
        const ZmVector bl2 = ZmVector::unit_vector(m, kb, l2);
        if (bm.act_right(mj, B.structure(l, l2)) != bm.act_right(bm.act_right(mj, bl), bl2)) {
          throw ValidationError("right action not associative on (m" + std::to_string(j) + ",b" +
                                    std::to_string(l) + ",b" + std::to_string(l2) + ")",
                                {j, l, l2});
        }
      }
    }
    if (A.has_unit() && bm.act_left(A.unit().coefficients(), mj) != mj) {
      throw ValidationError("left action is not unital on m" + std::to_string(j), {j});
    }
    if (B.has_unit() && bm.act_right(mj, B.unit().coefficients()) != mj) {
      throw ValidationError("right action is not unital on m" + std::to_string(j), {j});
    }
  }
  return bm;
}

Bimodule Bimodule::regular(const StructureRing& r) {
  const std::size_t k = r.rank();
  std::vector<ZmVector> la, ra;
  la.reserve(k * k);
  ra.reserve(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      la.push_back(r.structure(i, j));
      ra.push_back(r.structure(i, j));
    }
  return build(r, r, k, std::move(la), std::move(ra));
}

ZmVector Bimodule::act_left(const ZmVector& a, const ZmVector& mv) const {
  const Residue m = modulus();
  ZmVector out(m, rank_);
  for (std::size_t i = 0; i < left_.rank(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < rank_; ++j) {
      if (mv[j] != 0) out.add_scaled(left_structure(i, j), a[i] * mv[j] % m);
    }
  }
  return out;
}

ZmVector Bimodule::act_right(const ZmVector& mv, const ZmVector& b) const {
  const Residue m = modulus();
  ZmVector out(m, rank_);
  for (std::size_t j = 0; j < rank_; ++j) {
    if (mv[j] == 0) continue;
    for (std::size_t i = 0; i < right_.rank(); ++i) {
      if (b[i] != 0) out.add_scaled(right_structure(j, i), mv[j] * b[i] % m);
    }
  }
  return out;
}

// ---------------------------------------------------------------- constructors

StructureRing zmod_ring(Residue m) {
  return StructureRing::build(m, 1, {ZmVector(m, {1})}, ZmVector(m, {1}), {"1"});
}

StructureRing dual_numbers(Residue m) {
  std::vector<ZmVector> c{ZmVector(m, {1, 0}), ZmVector(m, {0, 1}), ZmVector(m, {0, 1}),
                          ZmVector(m, {0, 0})};
  return StructureRing::build(m, 2, std::move(c), ZmVector(m, {1, 0}), {"1", "x"});
}

StructureRing zero_product_ring(Residue m, std::size_t k) {
  return StructureRing::build(m, k, std::vector<ZmVector>(k * k, ZmVector(m, k)));
}

MatrixRing matrix_ring(const StructureRing& r, std::size_t n) {
  if (n == 0) throw InvalidArgument("matrix size must be at least 1");
  if (!r.has_unit()) throw InvalidArgument("matrix_ring requires a unital coefficient ring");
  const std::size_t k = r.rank();
  const std::size_t K = n * n * k;
  const Residue m = r.modulus();
  auto idx = [&](std::size_t i, std::size_t j, std::size_t t) { return (i * n + j) * k + t; };

  std::vector<ZmVector> c(K * K, ZmVector(m, K));
  std::vector<std::string> labels(K);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t t = 0; t < k; ++t) {
        labels[idx(i, j, t)] =
            "e" + std::to_string(i + 1) + std::to_string(j + 1) + "." + r.labels()[t];
        for (std::size_t q = 0; q < n; ++q)
          for (std::size_t t2 = 0; t2 < k; ++t2) {
            // (e_ij b_t)(e_jq b_t2) = e_iq (b_t b_t2)
            const ZmVector& prod = r.structure(t, t2);
            ZmVector& out = c[idx(i, j, t) * K + idx(j, q, t2)];
            for (std::size_t u = 0; u < k; ++u) out.set(idx(i, q, u), prod[u]);
          }
      }
  ZmVector unit(m, K);
  const ZmVector one = r.unit().coefficients();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t u = 0; u < k; ++u) unit.set(idx(i, i, u), one[u]);
  return MatrixRing{StructureRing::build(m, K, std::move(c), std::move(unit), std::move(labels)), r,
                    n};
}

RingElement MatrixRing::entry(std::size_t i, std::size_t j, const RingElement& r) const {
  if (i >= n || j >= n) throw InvalidArgument("matrix index out of range");
  if (!r.ring().same_as(coefficients)) throw InvalidArgument("entry from a different ring");
  ZmVector v(ring.modulus(), ring.rank());
  for (std::size_t t = 0; t < coefficients.rank(); ++t) v.set(index(i, j, t), r[t]);
  return ring.element(std::move(v));
}

RingElement MatrixRing::matrix_unit(std::size_t i, std::size_t j) const {
  return entry(i, j, coefficients.unit());
}

RingElement MatrixRing::component(const RingElement& x, std::size_t i, std::size_t j) const {
  if (!x.ring().same_as(ring)) throw InvalidArgument("component: element of a different ring");
  ZmVector v(ring.modulus(), coefficients.rank());
  for (std::size_t t = 0; t < coefficients.rank(); ++t) v.set(t, x[index(i, j, t)]);
  return coefficients.element(std::move(v));
}

StructureRing triangular_ring(const StructureRing& a, const Bimodule& mod, const StructureRing& b) {
  if (!a.has_unit() || !b.has_unit()) {
    throw InvalidArgument("triangular_ring requires unital diagonal rings");
  }
  if (!mod.left_ring().same_table(a) || !mod.right_ring().same_table(b)) {
    throw InvalidArgument("bimodule is not over the given rings");
  }
  const Residue m = a.modulus();
  const std::size_t ka = a.rank(), km = mod.rank(), kb = b.rank();
  const std::size_t K = ka + km + kb;
  const std::size_t off_m = ka, off_b = ka + km;
  std::vector<ZmVector> c(K * K, ZmVector(m, K));
  auto put = [&](std::size_t x, std::size_t y, std::size_t off, const ZmVector& v) {
    for (std::size_t u = 0; u < v.size(); ++u) c[x * K + y].set(off + u, v[u]);
  };
  for (std::size_t i = 0; i < ka; ++i) {
    for (std::size_t i2 = 0; i2 < ka; ++i2) put(i, i2, 0, a.structure(i, i2));
    for (std::size_t j = 0; j < km; ++j) put(i, off_m + j, off_m, mod.left_structure(i, j));
  }
  for (std::size_t j = 0; j < km; ++j)
    for (std::size_t l = 0; l < kb; ++l) put(off_m + j, off_b + l, off_m, mod.right_structure(j, l));
  for (std::size_t l = 0; l < kb; ++l)
    for (std::size_t l2 = 0; l2 < kb; ++l2) put(off_b + l, off_b + l2, off_b, b.structure(l, l2));

  ZmVector unit(m, K);
  for (std::size_t i = 0; i < ka; ++i) unit.set(i, a.unit()[i]);
  for (std::size_t l = 0; l < kb; ++l) unit.set(off_b + l, b.unit()[l]);

  std::vector<std::string> labels;
  for (const auto& s : a.labels()) labels.push_back("A." + s);
  for (std::size_t j = 0; j < km; ++j) labels.push_back("M.m" + std::to_string(j));
  for (const auto& s : b.labels()) labels.push_back("B." + s);
  return StructureRing::build(m, K, std::move(c), std::move(unit), std::move(labels));
}

StructureRing direct_product(const StructureRing& a, const StructureRing& b) {
  if (a.modulus() != b.modulus()) throw InvalidArgument("direct_product: modulus mismatch");
  const Residue m = a.modulus();
  const std::size_t ka = a.rank(), kb = b.rank(), K = ka + kb;
  std::vector<ZmVector> c(K * K, ZmVector(m, K));
  for (std::size_t i = 0; i < ka; ++i)
    for (std::size_t j = 0; j < ka; ++j)
      for (std::size_t u = 0; u < ka; ++u) c[i * K + j].set(u, a.structure(i, j)[u]);
  for (std::size_t i = 0; i < kb; ++i)
    for (std::size_t j = 0; j < kb; ++j)
      for (std::size_t u = 0; u < kb; ++u) c[(ka + i) * K + ka + j].set(ka + u, b.structure(i, j)[u]);
  std::optional<ZmVector> unit;
  if (a.has_unit() && b.has_unit()) {
    ZmVector u(m, K);
    for (std::size_t i = 0; i < ka; ++i) u.set(i, a.unit()[i]);
    for (std::size_t i = 0; i < kb; ++i) u.set(ka + i, b.unit()[i]);
    unit = std::move(u);
  }
  std::vector<std::string> labels;
  for (const auto& s : a.labels()) labels.push_back("L." + s);
  for (const auto& s : b.labels()) labels.push_back("R." + s);
  return StructureRing::build(m, K, std::move(c), std::move(unit), std::move(labels));
}

// ---------------------------------------------------------------- corners

RingElement CornerRing::embed(const RingElement& x) const {
  if (!x.ring().same_as(ring)) throw InvalidArgument("embed: element is not in the corner ring");
  ZmVector v(parent.modulus(), parent.rank());
  for (std::size_t i = 0; i < embedding.size(); ++i) v.add_scaled(embedding[i], x[i]);
  return parent.element(std::move(v));
}

RingElement CornerRing::project(const RingElement& y) const {
  if (!y.ring().same_as(parent)) throw InvalidArgument("project: element of a different ring");
  auto x = solve_left(parent.modulus(), parent.rank(), embedding, y.coefficients());
  if (!x) throw InvalidArgument("project: element lies outside the corner");
  return ring.element(std::move(*x));
}

namespace {

BigCount power(Residue m, std::size_t r) {
  BigCount out = 1;
  for (std::size_t i = 0; i < r; ++i) out *= m;
  return out;
}

}  // namespace

CornerRing corner_ring(const StructureRing& r, const RingElement& e) {
  if (!e.ring().same_as(r)) throw InvalidArgument("corner_ring: idempotent from another ring");
  if (!is_idempotent(e)) throw InvalidArgument("corner_ring: element is not idempotent");
  const Residue m = r.modulus();
  const std::size_t k = r.rank();

  std::vector<ZmVector> images;
  images.reserve(k);
  for (std::size_t i = 0; i < k; ++i) images.push_back((e * r.basis(i) * e).coefficients());
  const SubgroupBasis span = howell_form(m, k, images);
  const BigCount target = span.cardinality();

  std::size_t rank = 0;
  while (power(m, rank) < target) ++rank;
  if (power(m, rank) != target) {
    throw ValidationError("corner ring is not free over Z/" + std::to_string(m));
  }

  // Greedy free basis: a candidate is kept when it enlarges the span by a full factor m.
  std::vector<ZmVector> chosen;
  std::vector<ZmVector> candidates = span.generators();
  candidates.insert(candidates.end(), images.begin(), images.end());
  for (const auto& c : candidates) {
    if (chosen.size() == rank) break;
    auto trial = chosen;
    trial.push_back(c);
    if (howell_form(m, k, trial).cardinality() == power(m, trial.size())) chosen = std::move(trial);
  }
  if (chosen.size() != rank) {
    throw ValidationError("no free basis found for the corner ring over Z/" + std::to_string(m));
  }

  std::vector<ZmVector> c;
  c.reserve(rank * rank);
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < rank; ++j) {
      const ZmVector prod = r.multiply(chosen[i], chosen[j]);
      c.push_back(*solve_left(m, k, chosen, prod));
    }
  ZmVector unit = *solve_left(m, k, chosen, e.coefficients());
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < rank; ++i) labels.push_back("c" + std::to_string(i));
  StructureRing corner = StructureRing::build(m, rank, std::move(c), std::move(unit), std::move(labels));
  return CornerRing{std::move(corner), r, std::move(chosen)};
}

}  // namespace jderiv
