#include "jderiv/analysis.hpp"

#include <functional>
#include <random>
#include <sstream>

namespace jderiv {

// ---------------------------------------------------------------- restrictions

CornerRestriction restrict_corner(const AdditiveMap& d, const RingElement& e) {
  const StructureRing& r = d.ring();
  if (!e.ring().same_as(r)) throw InvalidArgument("restrict_corner: idempotent from another ring");
  CornerRing corner = corner_ring(r, e);
  const std::size_t n = corner.ring.rank();
  ZmMatrix m(r.modulus(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const RingElement image = e * d(corner.embed(corner.ring.basis(i))) * e;
    const RingElement local = corner.project(image);
    for (std::size_t u = 0; u < n; ++u) m.set(u, i, local[u]);
  }
  AdditiveMap map(corner.ring, std::move(m));
  return CornerRestriction{std::move(corner), std::move(map)};
}

ClassRestriction restrict_to_class(const IncidenceRing& fi, const AdditiveMap& d, std::size_t cls) {
  if (!d.ring().same_as(fi.ring())) throw InvalidArgument("restrict_to_class: map on another ring");
  const auto& members = fi.quotient().members(cls);
  const std::size_t n = members.size();
  const StructureRing& R = fi.coefficients();
  MatrixRing mn = matrix_ring(R, n);
  const std::size_t K = mn.ring.rank();
  ZmMatrix m(R.modulus(), K, K);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t t = 0; t < R.rank(); ++t) {
        const RingElement image = d(fi.entry(members[i], members[j], R.basis(t)));
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) {
            const RingElement c = fi.component(image, members[a], members[b]);
            for (std::size_t u = 0; u < R.rank(); ++u) m.set(mn.index(a, b, u), mn.index(i, j, t), c[u]);
          }
      }
  AdditiveMap map(mn.ring, std::move(m));
  return ClassRestriction{std::move(mn), std::move(map)};
}

AdditiveMap construct_dprime(const StructureRing& r, const std::vector<RingElement>& family,
                             const AdditiveMap& d) {
  if (!d.ring().same_table(r)) throw InvalidArgument("construct_dprime: map on another ring");
  require_orthogonal_family(r, family);
  if (!r.has_unit()) throw InvalidArgument("construct_dprime: ring has no unit");
  RingElement sum = r.zero();
  for (const auto& e : family) sum += e;
  if (sum != r.unit()) throw InvalidArgument("construct_dprime: family does not sum to the unit");

  const AdditiveMap dm(r, d.matrix());
  std::vector<RingElement> d_of_family;
  for (const auto& e : family) d_of_family.push_back(dm(e));

  const std::size_t k = r.rank();
  ZmMatrix out(r.modulus(), k, k);
  for (std::size_t j = 0; j < k; ++j) {
    const RingElement x = r.basis(j);
    RingElement value = r.zero();
    for (std::size_t a = 0; a < family.size(); ++a) {
      const RingElement& e = family[a];
      for (std::size_t b = 0; b < family.size(); ++b) {
        const RingElement& f = family[b];
        value += e * dm(e * x * f) * f - e * d_of_family[a] * x * f - e * x * d_of_family[b] * f;
      }
    }
    for (std::size_t t = 0; t < k; ++t) out.set(t, j, value[t]);
  }
  return AdditiveMap(r, std::move(out));
}

AdditiveMap extend_isolated(const IncidenceRing& fi, std::size_t cls, const AdditiveMap& dx,
                            OffBlock off) {
  const auto& members = fi.quotient().members(cls);
  if (members.size() != 1) throw InvalidArgument("extend_isolated: class has more than one element");
  for (std::size_t other = 0; other < fi.quotient().size(); ++other) {
    if (other != cls && fi.quotient().comparable(cls, other)) {
      throw InvalidArgument("extend_isolated: class is not isolated");
    }
  }
  const StructureRing& R = fi.coefficients();
  if (!dx.ring().same_table(R)) throw InvalidArgument("extend_isolated: map is not on R");
  const std::size_t x = members.front();
  const std::size_t K = fi.ring().rank();
  ZmMatrix m(R.modulus(), K, K);
  if (off == OffBlock::Identity) m = ZmMatrix::identity(R.modulus(), K);
  for (std::size_t t = 0; t < R.rank(); ++t) {
    const std::size_t col = fi.index(x, x, t);
    for (std::size_t u = 0; u < R.rank(); ++u) m.set(fi.index(x, x, u), col, dx.matrix().at(u, t));
  }
  return AdditiveMap(fi.ring(), std::move(m));
}

// ---------------------------------------------------------------- faithfulness

Bimodule matrix_bimodule(const StructureRing& r, std::size_t n, std::size_t p) {
  const MatrixRing A = matrix_ring(r, n);
  const MatrixRing B = matrix_ring(r, p);
  const std::size_t k = r.rank();
  const Residue m = r.modulus();
  const std::size_t km = n * p * k;
  auto midx = [&](std::size_t i, std::size_t j, std::size_t t) { return (i * p + j) * k + t; };

  std::vector<ZmVector> la(A.ring.rank() * km, ZmVector(m, km));
  std::vector<ZmVector> ra(km * B.ring.rank(), ZmVector(m, km));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t i2 = 0; i2 < n; ++i2)
      for (std::size_t t = 0; t < k; ++t)
        for (std::size_t j = 0; j < p; ++j)
          for (std::size_t t2 = 0; t2 < k; ++t2) {
            ZmVector& v = la[A.index(i, i2, t) * km + midx(i2, j, t2)];
            for (std::size_t u = 0; u < k; ++u) v.set(midx(i, j, u), r.structure(t, t2)[u]);
          }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t t = 0; t < k; ++t)
        for (std::size_t q = 0; q < p; ++q)
          for (std::size_t t2 = 0; t2 < k; ++t2) {
            ZmVector& v = ra[midx(i, j, t) * B.ring.rank() + B.index(j, q, t2)];
            for (std::size_t u = 0; u < k; ++u) v.set(midx(i, q, u), r.structure(t, t2)[u]);
          }
  return Bimodule::build(A.ring, B.ring, km, std::move(la), std::move(ra));
}

Faithfulness bimodule_faithful(const Bimodule& mod) {
  const Residue m = mod.modulus();
  const std::size_t km = mod.rank();
  const std::size_t ka = mod.left_ring().rank(), kb = mod.right_ring().rank();
  // Annihilators as kernels: rows indexed by (module basis j, coordinate u).
  ZmMatrix left(m, km * km, ka), right(m, km * km, kb);
  for (std::size_t j = 0; j < km; ++j)
    for (std::size_t u = 0; u < km; ++u) {
      for (std::size_t i = 0; i < ka; ++i) left.set(j * km + u, i, mod.left_structure(i, j)[u]);
      for (std::size_t i = 0; i < kb; ++i) right.set(j * km + u, i, mod.right_structure(j, i)[u]);
    }
  Faithfulness out;
  const SubgroupBasis lk = kernel(left), rk = kernel(right);
  out.left = lk.is_trivial();
  out.right = rk.is_trivial();
  if (!out.left) out.left_witness = lk.generators().front();
  if (!out.right) out.right_witness = rk.generators().front();
  return out;
}

// ---------------------------------------------------------------- verdict

std::string to_string(VerdictOutcome v) {
  switch (v) {
    case VerdictOutcome::AllJordanAreDerivations:
      return "AllJordanAreDerivations";
    case VerdictOutcome::ConditionalOnCoefficientRing:
      return "ConditionalOnCoefficientRing";
    case VerdictOutcome::Unknown:
      break;
  }
  return "Unknown";
}

namespace {

std::string class_name(const Preorder& p, const QuotientPoset& q, std::size_t c) {
  std::string s = "{";
  for (std::size_t i = 0; i < q.members(c).size(); ++i) {
    s += (i ? "," : "") + p.labels()[q.members(c)[i]];
  }
  return s + "}";
}

}  // namespace

StructuralVerdict theorem_verdict(const Preorder& p, const StructureRing& r) {
  if (!r.has_unit()) throw InvalidArgument("theorem_verdict requires a unital coefficient ring");
  const QuotientPoset q(p);
  StructuralVerdict v;
  v.isolated_classes = q.isolated_classes();
  v.isolated_elements = isolated_elements(p);
  bool faithful_everywhere = true;

  for (std::size_t c = 0; c < q.size(); ++c) {
    const std::string name = class_name(p, q, c);
    const std::size_t size = q.members(c).size();
    std::optional<std::size_t> partner;
    for (std::size_t o = 0; o < q.size() && !partner; ++o) {
      if (o != c && q.comparable(c, o)) partner = o;
    }
    if (partner) {
      const std::size_t psize = q.members(*partner).size();
      const bool below = q.leq(c, *partner);
      const std::size_t rows = below ? size : psize, cols = below ? psize : size;
      const Faithfulness f = bimodule_faithful(matrix_bimodule(r, rows, cols));
      faithful_everywhere = faithful_everywhere && f.left && f.right;
      std::ostringstream os;
      os << "class " << name << " is non-isolated: partner " << class_name(p, q, *partner)
         << (below ? " above" : " below") << ", Mor = RFM_" << rows << "x" << cols
         << "(R) faithful left=" << (f.left ? "true" : "false")
         << " right=" << (f.right ? "true" : "false");
      v.justification.push_back(os.str());
    } else if (size > 1) {
      v.justification.push_back("class " + name + " is isolated of size " + std::to_string(size) +
                                ": every Jordan derivation of M_" + std::to_string(size) +
                                "(R) is a derivation");
    } else {
      v.justification.push_back("element " + p.labels()[q.members(c).front()] +
                                " is isolated: reduces to the coefficient ring R");
    }
  }

  if (!faithful_everywhere) {
    v.outcome = VerdictOutcome::Unknown;
    v.justification.push_back("some non-isolated class has no faithful partner bimodule");
  } else if (v.isolated_elements.empty()) {
    v.outcome = VerdictOutcome::AllJordanAreDerivations;
    v.justification.push_back("no isolated elements");
  } else {
    v.outcome = VerdictOutcome::ConditionalOnCoefficientRing;
    v.justification.push_back("isolated element present: JDer = Der on FI(P,R) iff on R");
  }
  return v;
}

CrossCheckReport cross_check(const Preorder& p, const StructureRing& r, std::size_t budget) {
  const std::size_t rank = p.relation_pairs().size() * r.rank();
  if (rank > budget) throw BudgetExceeded(rank, budget);
  const IncidenceRing fi = IncidenceRing::build(p, r);
  CrossCheckReport out{theorem_verdict(p, r), rank, compare_spaces(fi.ring()), compare_spaces(r), true};
  switch (out.verdict.outcome) {
    case VerdictOutcome::AllJordanAreDerivations:
      out.consistent = out.fi.equal;
      break;
    case VerdictOutcome::ConditionalOnCoefficientRing:
      out.consistent = out.fi.equal == out.coefficients.equal;
      break;
    case VerdictOutcome::Unknown:
      break;
  }
  return out;
}

// ---------------------------------------------------------------- identity suite

bool IdentityReport::all_passed() const {
  for (const auto& o : outcomes)
    if (!o.passed) return false;
  return true;
}

const IdentityOutcome* IdentityReport::find(const std::string& name) const {
  for (const auto& o : outcomes)
    if (o.name == name) return &o;
  return nullptr;
}

namespace {

using Tuple = std::vector<RingElement>;

// Supplies argument tuples: all basis tuples, or seeded random elements.
class TupleSource {
 public:
  TupleSource(const StructureRing& r, const SuiteOptions& opt) : r_(r), opt_(opt), rng_(opt.seed) {}

  void each(std::size_t arity, const std::function<void(const Tuple&)>& fn) {
    if (opt_.mode == SuiteMode::Randomized) {
      for (std::size_t t = 0; t < opt_.trials; ++t) {
        Tuple tuple;
        for (std::size_t a = 0; a < arity; ++a) tuple.push_back(random_element(r_, rng_));
        fn(tuple);
      }
      return;
    }
    const std::size_t k = r_.rank();
    std::vector<std::size_t> idx(arity, 0);
    if (k == 0) return;
    for (;;) {
      Tuple tuple;
      for (auto i : idx) tuple.push_back(r_.basis(i));
      fn(tuple);
      std::size_t pos = 0;
      while (pos < arity && ++idx[pos] == k) idx[pos++] = 0;
      if (pos == arity) return;
    }
  }

 private:
  const StructureRing& r_;
  SuiteOptions opt_;
  std::mt19937_64 rng_;
};

class Recorder {
 public:
  explicit Recorder(std::string name) { out_.name = std::move(name); }

  void check(bool ok, const std::function<std::string()>& describe) {
    ++out_.checked;
    if (!ok && out_.passed) {
      out_.passed = false;
      out_.witness = describe();
    }
  }
  IdentityOutcome done() { return std::move(out_); }

 private:
  IdentityOutcome out_;
};

std::string show(std::initializer_list<std::pair<const char*, const RingElement*>> items) {
  std::string s;
  for (const auto& [name, e] : items) s += std::string(s.empty() ? "" : " ") + name + "=" + e->to_string();
  return s;
}

}  // namespace

IdentityReport identity_suite(const StructureRing& r, const std::vector<RingElement>& family,
                              const AdditiveMap& d_in, const SuiteOptions& options,
                              const IncidenceRing* fi) {
  if (!d_in.ring().same_table(r)) throw InvalidArgument("identity_suite: map on another ring");
  if (!check_map(r, d_in, MapKind::JordanDerivation)) {
    throw InvalidArgument("identity_suite: map is not a Jordan derivation");
  }
  require_orthogonal_family(r, family);
  if (fi && !fi->ring().same_as(r)) throw InvalidArgument("identity_suite: incidence ring mismatch");

  const AdditiveMap d(r, d_in.matrix());
  const bool is_derivation = check_map(r, d, MapKind::Derivation).ok;
  TupleSource src(r, options);
  IdentityReport report;
  const std::size_t nE = family.size();

  {
    Recorder rec("polarized-square");
    src.each(2, [&](const Tuple& a) {
      const auto &x = a[0], &s = a[1];
      rec.check(d(x * s + s * x) == d(x) * s + x * d(s) + d(s) * x + s * d(x),
                [&] { return show({{"r", &x}, {"s", &s}}); });
    });
    report.outcomes.push_back(rec.done());
  }
  {
    Recorder rec("herstein");
    src.each(3, [&](const Tuple& a) {
      const auto &x = a[0], &s = a[1], &t = a[2];
      rec.check(d(x * s * t + t * s * x) == d(x) * s * t + x * d(s) * t + x * s * d(t) +
                                               d(t) * s * x + t * d(s) * x + t * s * d(x),
                [&] { return show({{"r", &x}, {"s", &s}, {"t", &t}}); });
    });
    report.outcomes.push_back(rec.done());
  }
  {
    Recorder rec("orthogonal-sandwich");
    for (std::size_t a = 0; a < nE; ++a)
      for (std::size_t b = 0; b < nE; ++b) {
        if (a == b) continue;
        const auto &e = family[a], &f = family[b];
        src.each(1, [&](const Tuple& t) {
          const auto& x = t[0];
          rec.check(e * d(x) * f == e * d(e * x * f) * f - e * d(e) * x * f - e * x * d(f) * f +
                                        e * d(f * x * e) * f,
                    [&] { return show({{"e", &e}, {"f", &f}, {"r", &x}}); });
        });
      }
    report.outcomes.push_back(rec.done());
  }
  {
    Recorder rec("diagonal-sandwich");
    for (const auto& e : family) {
      src.each(1, [&](const Tuple& t) {
        const auto& x = t[0];
        rec.check(e * d(x) * e == e * d(e * x * e) * e - e * d(e) * x * e - e * x * d(e) * e,
                  [&] { return show({{"e", &e}, {"r", &x}}); });
      });
    }
    report.outcomes.push_back(rec.done());
  }
  {
    Recorder rec("corner-vanishing");
    for (std::size_t a = 0; a < nE; ++a)
      for (std::size_t b = 0; b < nE; ++b) {
        if (a == b) continue;
        const auto &e = family[a], &f = family[b];
        src.each(1, [&](const Tuple& t) {
          const RingElement x = f * t[0] * f;
          rec.check((e * d(x) * e).is_zero(), [&] { return show({{"e", &e}, {"f", &f}, {"r", &x}}); });
        });
      }
    report.outcomes.push_back(rec.done());
  }
  {
    Recorder rec("derivation-cross-term");
    if (!is_derivation) {
      auto o = rec.done();
      o.skipped = true;
      report.outcomes.push_back(std::move(o));
    } else {
      for (std::size_t a = 0; a < nE; ++a)
        for (std::size_t b = 0; b < nE; ++b) {
          if (a == b) continue;
          const auto &e = family[a], &f = family[b];
          src.each(1, [&](const Tuple& t) {
            const auto& x = t[0];
            rec.check((e * d(f * x * e) * f).is_zero(),
                      [&] { return show({{"e", &e}, {"f", &f}, {"r", &x}}); });
          });
        }
      report.outcomes.push_back(rec.done());
    }
  }
  {
    Recorder rec("idempotent-pair");
    for (const auto& e : family)
      for (const auto& f : family) {
        rec.check((e * d(e) * f + e * d(f) * f).is_zero(), [&] { return show({{"e", &e}, {"f", &f}}); });
      }
    report.outcomes.push_back(rec.done());
  }
  {
    Recorder rec("triple-product");
    for (std::size_t a = 0; a < nE; ++a)
      for (std::size_t b = 0; b < nE; ++b)
        for (std::size_t c = 0; c < nE; ++c) {
          if (a == b && b == c) continue;
          const auto &e = family[a], &f = family[b], &g = family[c];
          src.each(2, [&](const Tuple& t) {
            const RingElement x = e * t[0] * g;
            const RingElement s = g * t[1] * f;
            rec.check(e * d(x * s) * f == e * d(x) * s + x * d(s) * f,
                      [&] { return show({{"e", &e}, {"f", &f}, {"g", &g}, {"r", &x}, {"s", &s}}); });
          });
        }
    report.outcomes.push_back(rec.done());
  }
  {
    // Leibniz on eRe for every e in E, compared with the corner-ring route.
    Recorder criterion("corner-derivation-criterion");
    Recorder inherits("corner-inherits");
    bool corner_skipped = false;
    for (const auto& e : family) {
      bool leibniz = true;
      src.each(2, [&](const Tuple& t) {
        const RingElement x = e * t[0] * e;
        const RingElement s = e * t[1] * e;
        leibniz = leibniz && (e * d(x * s) * e == e * d(x) * s + x * d(s) * e);
      });
      try {
        const CornerRestriction de = restrict_corner(d, e);
        const bool corner_der = check_map(de.corner.ring, de.map, MapKind::Derivation).ok;
        const bool corner_jordan = check_map(de.corner.ring, de.map, MapKind::JordanDerivation).ok;
        criterion.check(leibniz == corner_der, [&] { return show({{"e", &e}}); });
        inherits.check(corner_jordan && (!is_derivation || corner_der), [&] { return show({{"e", &e}}); });
      } catch (const ValidationError&) {
        corner_skipped = true;
      }
    }
    auto c = criterion.done();
    auto i = inherits.done();
    c.skipped = i.skipped = corner_skipped && c.checked == 0;
    report.outcomes.push_back(std::move(c));
    report.outcomes.push_back(std::move(i));
  }
  if (fi) {
    Recorder rec("incidence-block");
    const auto& q = fi->quotient();
    std::vector<RingElement> d_idem;
    for (std::size_t x = 0; x < q.size(); ++x) d_idem.push_back(d(fi->class_idempotent(x)));
    src.each(1, [&](const Tuple& t) {
      const auto& alpha = t[0];
      const RingElement dalpha = d(alpha);
      for (std::size_t x = 0; x < q.size(); ++x)
        for (std::size_t y = 0; y < q.size(); ++y) {
          if (!q.leq(x, y)) continue;
          const RingElement placed = fi->place_block(fi->extract_block(alpha, x, y), x, y);
          const RingElement rhs = d(placed) - d_idem[x] * alpha - alpha * d_idem[y];
          rec.check(fi->extract_block(dalpha, x, y) == fi->extract_block(rhs, x, y),
                    [&] { return show({{"alpha", &alpha}}) + " block (" + std::to_string(x) + "," +
                                 std::to_string(y) + ")"; });
        }
    });
    report.outcomes.push_back(rec.done());
  }
  return report;
}

IdentityReport random_axiom_check(const StructureRing& r, const AdditiveMap& d_in, std::uint64_t seed,
                                  std::size_t trials) {
  const AdditiveMap d(r, d_in.matrix());
  std::mt19937_64 rng(seed);
  Recorder q1("Q1"), q2("Q2"), herstein("herstein");
  for (std::size_t n = 0; n < trials; ++n) {
    const RingElement x = random_element(r, rng);
    const RingElement s = random_element(r, rng);
    const RingElement t = random_element(r, rng);
    q1.check(d(x * x) == d(x) * x + x * d(x), [&] { return show({{"r", &x}}); });
    q2.check(d(x * s * x) == d(x) * s * x + x * d(s) * x + x * s * d(x),
             [&] { return show({{"r", &x}, {"s", &s}}); });
    herstein.check(d(x * s * t + t * s * x) == d(x) * s * t + x * d(s) * t + x * s * d(t) +
                                                   d(t) * s * x + t * d(s) * x + t * s * d(x),
                   [&] { return show({{"r", &x}, {"s", &s}, {"t", &t}}); });
  }
  IdentityReport report;
  report.outcomes.push_back(q1.done());
  report.outcomes.push_back(q2.done());
  report.outcomes.push_back(herstein.done());
  return report;
}

}  // namespace jderiv
