#include "jderiv/derivation.hpp"

#include <functional>

namespace jderiv {

std::string to_string(MapKind kind) {
  return kind == MapKind::Derivation ? "derivation" : "jordan-derivation";
}

// ---------------------------------------------------------------- AdditiveMap

AdditiveMap::AdditiveMap(StructureRing ring, ZmMatrix matrix)
    : ring_(std::move(ring)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != ring_.rank() || matrix_.cols() != ring_.rank() ||
      matrix_.modulus() != ring_.modulus()) {
    throw InvalidArgument("additive map matrix does not match the ring");
  }
}

AdditiveMap AdditiveMap::zero(const StructureRing& ring) {
  return AdditiveMap(ring, ZmMatrix(ring.modulus(), ring.rank(), ring.rank()));
}

AdditiveMap AdditiveMap::identity(const StructureRing& ring) {
  return AdditiveMap(ring, ZmMatrix::identity(ring.modulus(), ring.rank()));
}

AdditiveMap AdditiveMap::from_vector(const StructureRing& ring, const ZmVector& v) {
  const std::size_t k = ring.rank();
  if (v.size() != k * k || v.modulus() != ring.modulus()) {
    throw InvalidArgument("map vector does not match the ring");
  }
  ZmMatrix m(ring.modulus(), k, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t t = 0; t < k; ++t) m.set(t, j, v[j * k + t]);
  return AdditiveMap(ring, std::move(m));
}

RingElement AdditiveMap::operator()(const RingElement& x) const {
  if (!x.ring().same_as(ring_)) throw InvalidArgument("map applied to an element of another ring");
  return ring_.element(matrix_ * x.coefficients());
}

RingElement AdditiveMap::image_of_basis(std::size_t j) const { return ring_.element(matrix_.column(j)); }

ZmVector AdditiveMap::to_vector() const {
  const std::size_t k = ring_.rank();
  ZmVector v(ring_.modulus(), k * k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t t = 0; t < k; ++t) v.set(j * k + t, matrix_.at(t, j));
  return v;
}

AdditiveMap& AdditiveMap::operator+=(const AdditiveMap& o) {
  *this = from_vector(ring_, to_vector() + o.to_vector());
  return *this;
}

AdditiveMap& AdditiveMap::operator-=(const AdditiveMap& o) {
  *this = from_vector(ring_, to_vector() - o.to_vector());
  return *this;
}

// ---------------------------------------------------------------- DerivationSpace

DerivationSpace::DerivationSpace(StructureRing ring, MapKind kind, SubgroupBasis basis)
    : ring_(std::move(ring)), kind_(kind), basis_(std::move(basis)) {
  if (basis_.dimension() != ring_.rank() * ring_.rank() || basis_.modulus() != ring_.modulus()) {
    throw InvalidArgument("derivation space basis does not match the ring");
  }
}

std::vector<AdditiveMap> DerivationSpace::generators() const {
  std::vector<AdditiveMap> out;
  for (const auto& g : basis_.generators()) out.push_back(AdditiveMap::from_vector(ring_, g));
  return out;
}

bool DerivationSpace::contains(const AdditiveMap& d) const { return basis_.contains(d.to_vector()); }

// ---------------------------------------------------------------- constraint assembly

namespace {

using RowSink = std::function<void(ZmVector)>;

// A k-vector of linear forms in the k^2 unknowns, stored row-major (output
// coordinate u, unknown index).
class LinearValue {
 public:
  explicit LinearValue(const StructureRing& r)
      : ring_(r), k_(r.rank()), m_(r.modulus()), coef_(k_ * k_ * k_, 0) {}

  // sign * d(x)
  void add_d(const ZmVector& x, Residue sign) {
    const std::size_t n = k_ * k_;
    for (std::size_t j = 0; j < k_; ++j) {
      if (x[j] == 0) continue;
      const Residue s = reduce(sign * x[j], m_);
      for (std::size_t u = 0; u < k_; ++u) {
        auto& c = coef_[u * n + j * k_ + u];
        c = (c + s) % m_;
      }
    }
  }

  // sign * left * d(y) * right, with absent factors meaning no multiplication.
  void add_sandwich(const ZmVector* left, const ZmVector& y, const ZmVector* right, Residue sign) {
    const std::size_t n = k_ * k_;
    for (std::size_t t = 0; t < k_; ++t) {
      ZmVector w = ZmVector::unit_vector(m_, k_, t);
      if (left) w = ring_.multiply(*left, w);
      if (right) w = ring_.multiply(w, *right);
      if (w.is_zero()) continue;
      for (std::size_t j = 0; j < k_; ++j) {
        if (y[j] == 0) continue;
        const Residue s = reduce(sign * y[j], m_);
        for (std::size_t u = 0; u < k_; ++u) {
          if (w[u] == 0) continue;
          auto& c = coef_[u * n + j * k_ + t];
          c = (c + s * w[u]) % m_;
        }
      }
    }
  }

  void emit(const RowSink& sink) const {
    const std::size_t n = k_ * k_;
    for (std::size_t u = 0; u < k_; ++u) {
      sink(ZmVector(m_, std::vector<Residue>(coef_.begin() + static_cast<std::ptrdiff_t>(u * n),
                                             coef_.begin() + static_cast<std::ptrdiff_t>((u + 1) * n))));
    }
  }

 private:
  const StructureRing& ring_;
  std::size_t k_;
  Residue m_;
  std::vector<Residue> coef_;
};

void derivation_rows(const StructureRing& r, const RowSink& sink) {
  const std::size_t k = r.rank();
  const Residue m = r.modulus();
  for (std::size_t i = 0; i < k; ++i) {
    const ZmVector bi = ZmVector::unit_vector(m, k, i);
    for (std::size_t j = 0; j < k; ++j) {
      const ZmVector bj = ZmVector::unit_vector(m, k, j);
      LinearValue v(r);
      v.add_d(r.structure(i, j), 1);
      v.add_sandwich(nullptr, bi, &bj, -1);
      v.add_sandwich(&bi, bj, nullptr, -1);
      v.emit(sink);
    }
  }
}

void jordan_rows(const StructureRing& r, const RowSink& sink) {
  const std::size_t k = r.rank();
  const Residue m = r.modulus();
  auto basis = [&](std::size_t i) { return ZmVector::unit_vector(m, k, i); };

  // Q1(b_i)
  for (std::size_t i = 0; i < k; ++i) {
    const ZmVector bi = basis(i);
    LinearValue v(r);
    v.add_d(r.structure(i, i), 1);
    v.add_sandwich(nullptr, bi, &bi, -1);
    v.add_sandwich(&bi, bi, nullptr, -1);
    v.emit(sink);
  }
  // Q1pol(b_i, b_j), i < j
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const ZmVector bi = basis(i), bj = basis(j);
      LinearValue v(r);
      v.add_d(r.structure(i, j) + r.structure(j, i), 1);
      v.add_sandwich(nullptr, bi, &bj, -1);
      v.add_sandwich(&bi, bj, nullptr, -1);
      v.add_sandwich(nullptr, bj, &bi, -1);
      v.add_sandwich(&bj, bi, nullptr, -1);
      v.emit(sink);
    }
  // Q2(b_i, b_j)
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const ZmVector bi = basis(i), bj = basis(j);
      const ZmVector& ij = r.structure(i, j);
      const ZmVector ji = r.structure(j, i);
      LinearValue v(r);
      v.add_d(r.multiply(ij, bi), 1);
      v.add_sandwich(nullptr, bi, &ji, -1);  // d(r) s r
      v.add_sandwich(&bi, bj, &bi, -1);      // r d(s) r
      v.add_sandwich(&ij, bi, nullptr, -1);  // r s d(r)
      v.emit(sink);
    }
  // Q2pol(b_i, b_l; b_j), i < l
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = i + 1; l < k; ++l)
      for (std::size_t j = 0; j < k; ++j) {
        const ZmVector bi = basis(i), bl = basis(l), bj = basis(j);
        const ZmVector& ij = r.structure(i, j);
        const ZmVector& lj = r.structure(l, j);
        const ZmVector jl = r.structure(j, l);
        const ZmVector ji = r.structure(j, i);
        LinearValue v(r);
        v.add_d(r.multiply(ij, bl) + r.multiply(lj, bi), 1);  // d(rst + tsr)
        v.add_sandwich(nullptr, bi, &jl, -1);                 // d(r) s t
        v.add_sandwich(&bi, bj, &bl, -1);                     // r d(s) t
        v.add_sandwich(&ij, bl, nullptr, -1);                 // r s d(t)
        v.add_sandwich(nullptr, bl, &ji, -1);                 // d(t) s r
        v.add_sandwich(&bl, bj, &bi, -1);                     // t d(s) r
        v.add_sandwich(&lj, bi, nullptr, -1);                 // t s d(r)
        v.emit(sink);
      }
}

ZmMatrix collect(const StructureRing& r, void (*gen)(const StructureRing&, const RowSink&)) {
  std::vector<ZmVector> rows;
  gen(r, [&](ZmVector row) { rows.push_back(std::move(row)); });
  return ZmMatrix::from_rows(r.modulus(), r.rank() * r.rank(), rows);
}

}  // namespace

ZmMatrix derivation_constraints(const StructureRing& r) { return collect(r, derivation_rows); }
ZmMatrix jordan_constraints(const StructureRing& r) { return collect(r, jordan_rows); }

DerivationSpace solve_space(const StructureRing& r, MapKind kind) {
  const std::size_t n = r.rank() * r.rank();
  RowSpanAccumulator acc(r.modulus(), n);
  const RowSink sink = [&](ZmVector row) { acc.add(std::move(row)); };
  if (kind == MapKind::Derivation) {
    derivation_rows(r, sink);
  } else {
    jordan_rows(r, sink);
  }
  const auto& span = acc.basis();
  return DerivationSpace(r, kind, kernel(ZmMatrix::from_rows(r.modulus(), n, span.generators())));
}

DerivationSpace solve_derivations(const StructureRing& r) { return solve_space(r, MapKind::Derivation); }
DerivationSpace solve_jordan_derivations(const StructureRing& r) {
  return solve_space(r, MapKind::JordanDerivation);
}

// ---------------------------------------------------------------- direct checks

MapCheck check_map(const StructureRing& r, const AdditiveMap& d, MapKind kind) {
  if (!d.ring().same_table(r)) throw InvalidArgument("check_map: map belongs to another ring");
  const AdditiveMap dm(r, d.matrix());
  const std::size_t k = r.rank();
  auto b = [&](std::size_t i) { return r.basis(i); };
  auto fail = [](std::string name, std::vector<std::size_t> idx) {
    return MapCheck{false, std::move(name), std::move(idx)};
  };

  if (kind == MapKind::Derivation) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        const RingElement x = b(i), y = b(j);
        if (dm(x * y) != dm(x) * y + x * dm(y)) return fail("Leibniz", {i, j});
      }
    return {};
  }

  for (std::size_t i = 0; i < k; ++i) {
    const RingElement x = b(i);
    if (dm(x * x) != dm(x) * x + x * dm(x)) return fail("Q1", {i});
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const RingElement x = b(i), y = b(j);
      if (dm(x * y + y * x) != dm(x) * y + x * dm(y) + dm(y) * x + y * dm(x)) {
        return fail("Q1pol", {i, j});
      }
    }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const RingElement x = b(i), s = b(j);
      if (dm(x * s * x) != dm(x) * s * x + x * dm(s) * x + x * s * dm(x)) return fail("Q2", {i, j});
    }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = i + 1; l < k; ++l)
      for (std::size_t j = 0; j < k; ++j) {
        const RingElement x = b(i), t = b(l), s = b(j);
        const RingElement lhs = dm(x * s * t + t * s * x);
        const RingElement rhs = dm(x) * s * t + x * dm(s) * t + x * s * dm(t) + dm(t) * s * x +
                                t * dm(s) * x + t * s * dm(x);
        if (lhs != rhs) return fail("Q2pol", {i, l, j});
      }
  return {};
}

AdditiveMap inner_derivation(const StructureRing& r, const RingElement& a) {
  if (!a.ring().same_as(r)) throw InvalidArgument("inner_derivation: element of another ring");
  const std::size_t k = r.rank();
  ZmMatrix m(r.modulus(), k, k);
  for (std::size_t j = 0; j < k; ++j) {
    const RingElement bj = r.basis(j);
    const RingElement img = a * bj - bj * a;
    for (std::size_t t = 0; t < k; ++t) m.set(t, j, img[t]);
  }
  return AdditiveMap(r, std::move(m));
}

SpaceComparison compare_spaces(const StructureRing& r) {
  SpaceComparison out{solve_derivations(r), solve_jordan_derivations(r), true, std::nullopt};
  out.equal = subgroup_equal(out.derivations.basis(), out.jordan.basis());
  if (out.equal) return out;
  const auto gens = out.jordan.generators();
  for (const auto& g : gens) {
    if (!out.derivations.contains(g)) {
      out.witness = g;
      return out;
    }
  }
  for (std::size_t a = 0; a < gens.size() && !out.witness; ++a)
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      const AdditiveMap s = gens[a] + gens[b];
      if (!out.derivations.contains(s)) {
        out.witness = s;
        break;
      }
    }
  return out;
}

}  // namespace jderiv
