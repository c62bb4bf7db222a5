#pragma once

// Structural tools on top of the solver: corner restrictions d_e and d_x, the
// blockwise reconstruction d', extension from an isolated point, bimodule
// faithfulness, the Jordan-vs-derivation verdict for FI(P, R), and an
// executable suite of the identities every Jordan derivation satisfies.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jderiv/derivation.hpp"
#include "jderiv/incidence.hpp"
#include "jderiv/ring.hpp"

namespace jderiv {

struct CornerRestriction {
  CornerRing corner;
  AdditiveMap map;  // on corner.ring
};

/// d_e(r) = e d(r) e on eRe.
CornerRestriction restrict_corner(const AdditiveMap& d, const RingElement& e);

struct ClassRestriction {
  MatrixRing matrices;  // M_|x|(R)
  AdditiveMap map;      // on matrices.ring
};

/// d_x(phi) = d(phi[x, x])_{xx}, a map on M_|x|(R).
ClassRestriction restrict_to_class(const IncidenceRing& fi, const AdditiveMap& d, std::size_t cls);

/// d'(r) = sum over e, f in E of e d(erf) f - e d(e) r f - e r d(f) f.
/// E must consist of pairwise orthogonal idempotents summing to the unit;
/// otherwise InvalidArgument.
AdditiveMap construct_dprime(const StructureRing& r, const std::vector<RingElement>& family,
                             const AdditiveMap& d);

enum class OffBlock {
  Zero,      // d~ = d_x (+) 0: transfers (Jordan) derivation status
  Identity,  // d~ = d_x (+) id: kept for comparison, not a derivation in general
};

/// Extends a map d_x on R to FI(P, R) through the isolated singleton class
/// `cls`. Throws InvalidArgument if the class is not isolated or has more
/// than one member.
AdditiveMap extend_isolated(const IncidenceRing& fi, std::size_t cls, const AdditiveMap& dx,
                            OffBlock off = OffBlock::Zero);

/// RFM_{n x p}(R) as an (M_n(R), M_p(R))-bimodule; basis index (i * p + j) * k + t.
Bimodule matrix_bimodule(const StructureRing& r, std::size_t n, std::size_t p);

struct Faithfulness {
  bool left = false;
  bool right = false;
  std::optional<ZmVector> left_witness;   // nonzero a with a M = 0
  std::optional<ZmVector> right_witness;  // nonzero b with M b = 0
};

Faithfulness bimodule_faithful(const Bimodule& m);

enum class VerdictOutcome { AllJordanAreDerivations, ConditionalOnCoefficientRing, Unknown };
std::string to_string(VerdictOutcome v);

struct StructuralVerdict {
  VerdictOutcome outcome = VerdictOutcome::Unknown;
  std::vector<std::string> justification;
  std::vector<std::size_t> isolated_classes;
  std::vector<std::size_t> isolated_elements;
};

StructuralVerdict theorem_verdict(const Preorder& p, const StructureRing& r);

struct CrossCheckReport {
  StructuralVerdict verdict;
  std::size_t fi_rank = 0;
  SpaceComparison fi;
  SpaceComparison coefficients;
  bool consistent = true;
};

/// Solves both FI(P, R) and R and checks the outcome against the verdict.
/// Throws BudgetExceeded when rank FI(P, R) > budget.
CrossCheckReport cross_check(const Preorder& p, const StructureRing& r, std::size_t budget = 32);

enum class SuiteMode { ExhaustiveBasis, Randomized };

struct SuiteOptions {
  SuiteMode mode = SuiteMode::ExhaustiveBasis;
  std::uint64_t seed = 1;
  std::size_t trials = 1000;
};

struct IdentityOutcome {
  std::string name;
  bool passed = true;
  bool skipped = false;
  std::size_t checked = 0;
  std::string witness;
};

struct IdentityReport {
  std::vector<IdentityOutcome> outcomes;
  bool all_passed() const;
  const IdentityOutcome* find(const std::string& name) const;
};

/// Evaluates the Jordan-derivation identities for d against the orthogonal
/// family E. Throws InvalidArgument when d is not a Jordan derivation or E is
/// not orthogonal. With `fi` set, the incidence block identity is included.
IdentityReport identity_suite(const StructureRing& r, const std::vector<RingElement>& family,
                              const AdditiveMap& d, const SuiteOptions& options = {},
                              const IncidenceRing* fi = nullptr);

/// Checks Q1(r), Q2(r, s) and the Herstein identity on seeded random elements.
IdentityReport random_axiom_check(const StructureRing& r, const AdditiveMap& d, std::uint64_t seed,
                                  std::size_t trials);

/// Uniform random element; coefficients are drawn as rng() mod m.
template <class Rng>
RingElement random_element(const StructureRing& r, Rng& rng) {
  std::vector<Residue> c(r.rank());
  for (auto& x : c) x = static_cast<Residue>(rng() % static_cast<std::uint64_t>(r.modulus()));
  return r.element(std::move(c));
}

}  // namespace jderiv
