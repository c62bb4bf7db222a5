#include "report.hpp"

#include <algorithm>

namespace jderiv::cli {

namespace {

constexpr std::size_t kSearchTableLimit = std::size_t{1} << 21;

Json residues(std::span<const Residue> v) {
  Json out = Json::array();
  for (auto x : v) out.push_back(x);
  return out;
}

Json labels_of(const Preorder& p, const std::vector<std::size_t>& points) {
  Json out = Json::array();
  for (auto x : points) out.push_back(p.labels()[x]);
  return out;
}

Json space_json(const DerivationSpace& s) {
  return Json{{"kind", to_string(s.kind())},
              {"cardinality", s.cardinality().str()},
              {"basis", basis_json(s.basis())}};
}

Json comparison_json(const SpaceComparison& c) {
  Json out{{"relation", c.equal ? "Equal" : "ProperInclusion"},
           {"derivations", space_json(c.derivations)},
           {"jordan", space_json(c.jordan)}};
  if (c.witness) {
    Json w = map_json(*c.witness);
    const auto failed = check_map(c.witness->ring(), *c.witness, MapKind::Derivation);
    w["fails"] = Json{{"identity", failed.identity}, {"indices", failed.indices}};
    out["witness"] = std::move(w);
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json outcomes_json(const IdentityReport& r) {
  Json out = Json::array();
  for (const auto& o : r.outcomes) {
    Json j{{"name", o.name}, {"passed", o.passed}, {"skipped", o.skipped}, {"checked", o.checked}};
    if (!o.witness.empty()) j["witness"] = o.witness;
    out.push_back(std::move(j));
  }
  return out;
}

Json verdict_json(const Preorder& p, const StructuralVerdict& v) {
  return Json{{"outcome", to_string(v.outcome)},
              {"isolated_elements", labels_of(p, v.isolated_elements)},
              {"isolated_classes", v.isolated_classes},
              {"justification", v.justification}};
}

struct Resolved {
  std::uint64_t seed;
  std::size_t trials;
  std::size_t budget;
  SuiteMode mode;
};

Resolved resolve(const Instance& inst, const RunOptions& o) {
  return {o.seed.value_or(inst.task.seed), o.trials.value_or(inst.task.trials),
          o.budget.value_or(inst.task.budget), o.mode.value_or(inst.task.mode)};
}

const StructureRing& require_ring(const Instance& inst, const std::string& command) {
  if (!inst.ring) throw InstanceError(command + " needs a [ring] section");
  return *inst.ring;
}

const Preorder& require_preorder(const Instance& inst, const std::string& command) {
  if (!inst.preorder) throw InstanceError(command + " needs a [preorder] section");
  return *inst.preorder;
}

std::size_t target_rank(const Instance& inst) {
  const auto k = inst.ring->rank();
  return inst.preorder ? inst.preorder->relation_pairs().size() * k : k;
}

// FI(P, R) when a preorder is present, R otherwise.
struct Target {
  StructureRing ring;
  std::optional<IncidenceRing> fi;
  std::vector<RingElement> family;
};

Target build_target(const Instance& inst, const std::string& command, std::size_t budget) {
  const auto& r = require_ring(inst, command);
  const auto rank = target_rank(inst);
  if (rank > budget) throw BudgetExceeded(rank, budget);
  if (!inst.preorder) return Target{r, std::nullopt, inst.ring_family};
  auto fi = fi_ring(*inst.preorder, r);
  auto family = fi.class_idempotents();
  auto ring = fi.ring();
  return Target{std::move(ring), std::move(fi), std::move(family)};
}

Json digest(const Instance& inst) {
  Json d;
  if (inst.ring) {
    const auto& r = *inst.ring;
    d["modulus"] = r.modulus();
    d["coefficient_ring"] = inst.ring_description;
    d["coefficient_rank"] = r.rank();
    d["coefficient_unital"] = r.has_unit();
    d["target"] = inst.preorder ? "FI(P, R)" : "R";
    d["target_rank"] = target_rank(inst);
  }
  if (inst.preorder) {
    const auto& p = *inst.preorder;
    const auto q = quotient(p);
    Json classes = Json::array();
    for (const auto& c : q.classes()) classes.push_back(labels_of(p, c));
    d["preorder"] = Json{{"labels", p.labels()},
                         {"classes", classes},
                         {"isolated_elements", labels_of(p, isolated_elements(p))}};
  }
  return d;
}

Json run_solve(const Instance& inst, const Resolved& opt, const std::string& command, MapKind kind) {
  const auto t = build_target(inst, command, opt.budget);
  return Json{{"space", space_json(solve_space(t.ring, kind))}};
}

Json run_compare(const Instance& inst, const Resolved& opt) {
  const auto t = build_target(inst, "compare", opt.budget);
  return comparison_json(compare_spaces(t.ring));
}

Json run_fi_build(const Instance& inst, const Resolved& opt) {
  const auto& p = require_preorder(inst, "fi-build");
  const auto t = build_target(inst, "fi-build", opt.budget);
  const auto& fi = *t.fi;
  const auto& q = fi.quotient();

  Json pairs = Json::array();
  for (const auto& [a, b] : fi.pairs()) pairs.push_back(Json::array({p.labels()[a], p.labels()[b]}));
  Json order = Json::array();
  for (std::size_t x = 0; x < q.size(); ++x)
    for (std::size_t y = 0; y < q.size(); ++y)
      if (x != y && q.leq(x, y)) order.push_back(Json::array({x, y}));
  Json structure = Json::array();
  const auto k = t.ring.rank();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const auto& c = t.ring.structure(i, j);
      if (!c.is_zero()) structure.push_back(Json{{"i", i}, {"j", j}, {"product", residues(c.entries())}});
    }
  Json idempotents = Json::array();
  for (const auto& e : t.family) idempotents.push_back(residues(e.coefficients().entries()));
  const auto family = verify_family_conditions(t.ring, t.family);

  return Json{{"rank", k},
              {"pairs", pairs},
              {"class_order", order},
              {"unit", residues(t.ring.unit().coefficients().entries())},
              {"class_idempotents", idempotents},
              {"family_conditions", Json{{"passed", family.passed}, {"checked", family.checked}}},
              {"structure", structure}};
}

Json run_verdict(const Instance& inst) {
  const auto& p = require_preorder(inst, "verdict");
  return verdict_json(p, theorem_verdict(p, require_ring(inst, "verdict")));
}

Json run_cross_check(const Instance& inst, const Resolved& opt) {
  const auto& p = require_preorder(inst, "cross-check");
  const auto rep = cross_check(p, require_ring(inst, "cross-check"), opt.budget);
  return Json{{"verdict", verdict_json(p, rep.verdict)},
              {"fi_rank", rep.fi_rank},
              {"fi", comparison_json(rep.fi)},
              {"coefficients", comparison_json(rep.coefficients)},
              {"consistent", rep.consistent}};
}

Json run_identities(const Instance& inst, const Resolved& opt) {
  const auto t = build_target(inst, "identities", opt.budget);
  const auto jder = solve_jordan_derivations(t.ring);
  const auto gens = jder.generators();
  Json per = Json::array();
  bool all = true;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const SuiteOptions so{opt.mode, opt.seed + g, opt.trials};
    const auto suite = identity_suite(t.ring, t.family, gens[g], so, t.fi ? &*t.fi : nullptr);
    const auto axioms = random_axiom_check(t.ring, gens[g], opt.seed + g, opt.trials);
    all = all && suite.all_passed() && axioms.all_passed();
    per.push_back(Json{{"generator", g}, {"identities", outcomes_json(suite)}, {"random_axioms", outcomes_json(axioms)}});
  }
  return Json{{"mode", opt.mode == SuiteMode::ExhaustiveBasis ? "exhaustive" : "randomized"},
              {"trials", opt.trials},
              {"family_size", t.family.size()},
              {"jordan", space_json(jder)},
              {"generators", per},
              {"all_passed", all}};
}

Json run_dprime(const Instance& inst, const Resolved& opt) {
  const auto t = build_target(inst, "dprime-check", opt.budget);
  const auto jder = solve_jordan_derivations(t.ring);
  const auto gens = jder.generators();
  Json per = Json::array();
  bool all = true;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const auto dp = construct_dprime(t.ring, t.family, gens[g]);
    const bool equal = dp == gens[g];
    const bool stable = construct_dprime(t.ring, t.family, dp) == dp;
    all = all && equal && stable;
    Json j{{"generator", g}, {"dprime_equals_d", equal}, {"dprime_idempotent", stable}};
    if (!equal) j["dprime"] = map_json(dp);
    per.push_back(std::move(j));
  }
  return Json{{"family_size", t.family.size()},
              {"jordan", space_json(jder)},
              {"generators", per},
              {"all_equal", all}};
}

bool table_associative(Residue m, std::size_t k, const std::vector<Residue>& c) {
  auto at = [&](std::size_t i, std::size_t j, std::size_t t) { return c[(i * k + j) * k + t]; };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l)
        for (std::size_t u = 0; u < k; ++u) {
          Residue lhs = 0, rhs = 0;
          for (std::size_t t = 0; t < k; ++t) {
            lhs += at(i, j, t) * at(t, l, u);
            rhs += at(j, l, t) * at(i, t, u);
          }
          if ((lhs - rhs) % m != 0) return false;
        }
  return true;
}

// Two-sided unit found by enumerating all m^k elements; k <= 2 here.
std::optional<std::vector<Residue>> find_unit(const StructureRing& r) {
  const auto k = r.rank();
  const auto m = r.modulus();
  std::vector<Residue> u(k, 0);
  for (;;) {
    const auto e = r.element(u);
    bool ok = true;
    for (std::size_t i = 0; ok && i < k; ++i) ok = e * r.basis(i) == r.basis(i) && r.basis(i) * e == r.basis(i);
    if (ok) return u;
    std::size_t pos = 0;
    while (pos < k && ++u[pos] == m) u[pos++] = 0;
    if (pos == k) return std::nullopt;
  }
}

Json run_search(const Instance& inst) {
  const auto& moduli = inst.task.moduli;
  const auto max_rank = inst.task.max_rank;
  std::size_t total = 0;
  for (auto m : moduli)
    for (std::size_t k = 1; k <= max_rank; ++k) {
      std::size_t n = 1;
      for (std::size_t e = 0; e < k * k * k; ++e) n *= static_cast<std::size_t>(m);
      total += n;
    }
  if (total > kSearchTableLimit) {
    throw InstanceError("search family has " + std::to_string(total) + " tables, limit " +
                        std::to_string(kSearchTableLimit));
  }

  std::size_t associative = 0, unital_found = 0;
  Json found = Json::array();
  for (auto m : moduli)
    for (std::size_t k = 1; k <= max_rank; ++k) {
      std::vector<Residue> c(k * k * k, 0);
      for (;;) {
        if (table_associative(m, k, c)) {
          ++associative;
          std::vector<ZmVector> consts;
          for (std::size_t ij = 0; ij < k * k; ++ij)
            consts.emplace_back(m, std::vector<Residue>(c.begin() + ij * k, c.begin() + (ij + 1) * k));
          const auto ring = StructureRing::build(m, k, std::move(consts));
          const auto cmp = compare_spaces(ring);
          if (!cmp.equal) {
            const auto unit = find_unit(ring);
            if (unit) ++unital_found;
            found.push_back(Json{{"modulus", m},
                                 {"rank", k},
                                 {"structure", c},
                                 {"unit", unit ? Json(*unit) : Json(nullptr)},
                                 {"der_cardinality", cmp.derivations.cardinality().str()},
                                 {"jder_cardinality", cmp.jordan.cardinality().str()},
                                 {"witness", map_json(*cmp.witness)}});
          }
        }
        std::size_t pos = 0;
        while (pos < c.size() && ++c[pos] == m) c[pos++] = 0;
        if (pos == c.size()) break;
      }
    }
  return Json{{"family",
               Json{{"moduli", moduli},
                    {"max_rank", max_rank},
                    {"tables", "every structure table of the given rank and modulus, without unit, once each"}}},
              {"tables_enumerated", total},
              {"associative_tables", associative},
              {"proper_inclusions", found},
              {"unital_proper_inclusions", unital_found},
              {"result", found.empty() ? "none found in family" : "proper inclusion found"}};
}

}  // namespace

bool is_command(const std::string& name) {
  return std::find(kCommands.begin(), kCommands.end(), name) != kCommands.end();
}

Json basis_json(const SubgroupBasis& b) {
  Json gens = Json::array();
  for (const auto& g : b.generators()) gens.push_back(residues(g.entries()));
  return Json{{"modulus", b.modulus()},
              {"dimension", b.dimension()},
              {"cardinality", b.cardinality().str()},
              {"pivots", b.pivots()},
              {"generators", gens}};
}

Json map_json(const AdditiveMap& d) {
  return Json{{"layout", "column-major"}, {"entries", residues(d.to_vector().entries())}};
}

Json run_command(const std::string& command, const Instance& inst, const RunOptions& options) {
  if (!is_command(command)) throw InstanceError("unknown command '" + command + "'");
  const auto opt = resolve(inst, options);
  Json report{{"format_version", kFormatVersion},
              {"tool", "jderiv"},
              {"command", command},
              {"input", options.input},
              {"seed", opt.seed},
              {"instance", digest(inst)}};
  Json result;
  if (command == "solve-der") {
    result = run_solve(inst, opt, command, MapKind::Derivation);
  } else if (command == "solve-jder") {
    result = run_solve(inst, opt, command, MapKind::JordanDerivation);
  } else if (command == "compare") {
    result = run_compare(inst, opt);
  } else if (command == "fi-build") {
    result = run_fi_build(inst, opt);
  } else if (command == "verdict") {
    result = run_verdict(inst);
  } else if (command == "cross-check") {
    result = run_cross_check(inst, opt);
  } else if (command == "identities") {
    result = run_identities(inst, opt);
  } else if (command == "dprime-check") {
    result = run_dprime(inst, opt);
  } else {
    result = run_search(inst);
  }
  report["result"] = std::move(result);
  return report;
}

}  // namespace jderiv::cli
