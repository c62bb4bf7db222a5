#include "instance.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace jderiv::cli {

namespace {

struct Entry {
  std::string key;
  std::string value;
  std::size_t line;
};

struct Section {
  std::size_t line = 0;
  std::vector<Entry> entries;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

template <class T>
T parse_number(const std::string& s, std::size_t line, const std::string& what) {
  T value{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) throw InstanceError(what + ": expected an integer, got '" + s + "'", line);
  return value;
}

std::vector<Residue> parse_numbers(const std::string& s, std::size_t line, const std::string& what) {
  std::vector<Residue> out;
  for (const auto& w : words(s)) out.push_back(parse_number<Residue>(w, line, what));
  return out;
}

bool parse_bool(const std::string& s, std::size_t line, const std::string& what) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw InstanceError(what + ": expected true or false, got '" + s + "'", line);
}

// Single-valued keys; reports duplicates and unknown keys.
class Keys {
 public:
  Keys(const Section& sec, const std::string& name, const std::set<std::string>& allowed,
       const std::set<std::string>& indexed = {}) {
    for (const auto& e : sec.entries) {
      const auto head = words(e.key);
      if (head.empty()) throw InstanceError("empty key in [" + name + "]", e.line);
      if (indexed.count(head[0])) {
        indexed_.push_back(e);
        continue;
      }
      if (!allowed.count(e.key)) throw InstanceError("unknown key '" + e.key + "' in [" + name + "]", e.line);
      if (!single_.emplace(e.key, e).second) throw InstanceError("duplicate key '" + e.key + "'", e.line);
    }
  }
  const Entry* get(const std::string& key) const {
    auto it = single_.find(key);
    return it == single_.end() ? nullptr : &it->second;
  }
  const Entry& require(const std::string& key, std::size_t section_line) const {
    if (auto* e = get(key)) return *e;
    throw InstanceError("missing key '" + key + "'", section_line);
  }
  const std::vector<Entry>& indexed() const { return indexed_; }

 private:
  std::map<std::string, Entry> single_;
  std::vector<Entry> indexed_;
};

std::vector<std::size_t> indices_of(const Entry& e, std::size_t count) {
  const auto w = words(e.key);
  if (w.size() != count + 1) {
    throw InstanceError("'" + w[0] + "' takes " + std::to_string(count) + " indices", e.line);
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < w.size(); ++i) out.push_back(parse_number<std::size_t>(w[i], e.line, w[0]));
  return out;
}

ZmVector vector_of(const Entry& e, Residue m, std::size_t size) {
  auto v = parse_numbers(e.value, e.line, e.key);
  if (v.size() != size) {
    throw InstanceError("'" + e.key + "' needs " + std::to_string(size) + " coefficients", e.line);
  }
  return ZmVector(m, std::move(v));
}

// Wraps library validation failures with the line of the offending section.
template <class F>
auto with_line(std::size_t line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ValidationError& e) {
    throw InstanceError(e.what(), line);
  } catch (const InvalidArgument& e) {
    throw InstanceError(e.what(), line);
  }
}

Preorder build_preorder(const Section& sec) {
  const Keys keys(sec, "preorder", {"labels", "auto_close"}, {"pair"});
  auto labels = words(keys.require("labels", sec.line).value);
  bool auto_close = true;
  if (auto* e = keys.get("auto_close")) auto_close = parse_bool(e->value, e->line, "auto_close");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& e : keys.indexed()) {
    if (trim(e.key) != "pair") throw InstanceError("unknown key '" + e.key + "' in [preorder]", e.line);
    auto w = words(e.value);
    if (w.size() != 2) throw InstanceError("pair takes two labels", e.line);
    pairs.emplace_back(w[0], w[1]);
  }
  return with_line(sec.line, [&] { return Preorder::from_pairs(labels, pairs, auto_close); });
}

BuiltinRing build_explicit(const Section& sec, const Keys& keys) {
  const auto& me = keys.require("modulus", sec.line);
  const auto& ke = keys.require("rank", sec.line);
  const auto m = parse_number<Residue>(me.value, me.line, "modulus");
  const auto k = parse_number<std::size_t>(ke.value, ke.line, "rank");
  with_line(me.line, [&] {
    check_modulus(m);
    return 0;
  });
  if (k == 0 || k > 64) throw InstanceError("rank must be between 1 and 64", ke.line);
  std::vector<ZmVector> c(k * k, ZmVector(m, k));
  std::set<std::size_t> seen;
  for (const auto& e : keys.indexed()) {
    if (words(e.key)[0] != "product") throw InstanceError("unknown key '" + e.key + "' in [ring]", e.line);
    const auto ij = indices_of(e, 2);
    if (ij[0] >= k || ij[1] >= k) throw InstanceError("product index out of range", e.line);
    if (!seen.insert(ij[0] * k + ij[1]).second) throw InstanceError("duplicate product", e.line);
    c[ij[0] * k + ij[1]] = vector_of(e, m, k);
  }
  std::optional<ZmVector> unit;
  if (auto* e = keys.get("unit")) unit = vector_of(*e, m, k);
  auto ring = with_line(sec.line, [&] { return StructureRing::build(m, k, c, unit); });
  BuiltinRing out{ring, {}};
  if (ring.has_unit()) out.family.push_back(ring.unit());
  return out;
}

BuiltinRing build_triangular(const Section& sec, const Keys& keys) {
  const auto& le = keys.require("left", sec.line);
  const auto& re = keys.require("right", sec.line);
  const auto& ke = keys.require("module_rank", sec.line);
  const auto a = with_line(le.line, [&] { return parse_ring_expression(le.value); }).ring;
  const auto b = with_line(re.line, [&] { return parse_ring_expression(re.value); }).ring;
  if (a.modulus() != b.modulus()) throw InstanceError("left and right rings differ in modulus", re.line);
  const auto km = parse_number<std::size_t>(ke.value, ke.line, "module_rank");
  const Residue m = a.modulus();
  std::vector<ZmVector> la(a.rank() * km, ZmVector(m, km)), ra(km * b.rank(), ZmVector(m, km));
  for (const auto& e : keys.indexed()) {
    const auto head = words(e.key)[0];
    const auto ij = indices_of(e, 2);
    if (head == "left_action") {
      if (ij[0] >= a.rank() || ij[1] >= km) throw InstanceError("left_action index out of range", e.line);
      la[ij[0] * km + ij[1]] = vector_of(e, m, km);
    } else if (head == "right_action") {
      if (ij[0] >= km || ij[1] >= b.rank()) throw InstanceError("right_action index out of range", e.line);
      ra[ij[0] * b.rank() + ij[1]] = vector_of(e, m, km);
    } else {
      throw InstanceError("unknown key '" + e.key + "' in [ring]", e.line);
    }
  }
  auto ring = with_line(sec.line, [&] {
    return triangular_ring(a, Bimodule::build(a, b, km, std::move(la), std::move(ra)), b);
  });
  return BuiltinRing{ring, {ring.unit()}};
}

BuiltinRing build_ring(const Section& sec, std::string& description) {
  const Keys keys(sec, "ring",
                  {"builtin", "kind", "modulus", "rank", "unit", "left", "right", "module_rank"},
                  {"product", "left_action", "right_action"});
  if (auto* b = keys.get("builtin")) {
    if (keys.get("kind")) throw InstanceError("builtin and kind are exclusive", b->line);
    for (const auto& k : {"modulus", "rank", "unit", "left", "right", "module_rank"}) {
      if (auto* e = keys.get(k)) throw InstanceError("key '" + e->key + "' needs kind = explicit or triangular", e->line);
    }
    if (!keys.indexed().empty()) {
      throw InstanceError("structure constants need kind = explicit", keys.indexed().front().line);
    }
    description = trim(b->value);
    return with_line(b->line, [&] { return parse_ring_expression(b->value); });
  }
  const auto& kind = keys.require("kind", sec.line);
  if (kind.value == "explicit") {
    for (const auto& k : {"left", "right", "module_rank"}) {
      if (auto* e = keys.get(k)) throw InstanceError("key '" + e->key + "' needs kind = triangular", e->line);
    }
    description = "explicit";
    return build_explicit(sec, keys);
  }
  if (kind.value == "triangular") {
    for (const auto& k : {"modulus", "rank", "unit"}) {
      if (auto* e = keys.get(k)) throw InstanceError("key '" + e->key + "' needs kind = explicit", e->line);
    }
    description = "triangular " + keys.require("left", sec.line).value + " | " +
                  keys.require("right", sec.line).value;
    return build_triangular(sec, keys);
  }
  throw InstanceError("unsupported ring kind '" + kind.value + "'", kind.line);
}

Task build_task(const Section& sec) {
  const Keys keys(sec, "task", {"command", "seed", "trials", "budget", "mode", "moduli", "max_rank"});
  Task t;
  if (auto* e = keys.get("command")) t.command = e->value;
  if (auto* e = keys.get("seed")) t.seed = parse_number<std::uint64_t>(e->value, e->line, "seed");
  if (auto* e = keys.get("trials")) t.trials = parse_number<std::size_t>(e->value, e->line, "trials");
  if (auto* e = keys.get("budget")) t.budget = parse_number<std::size_t>(e->value, e->line, "budget");
  if (auto* e = keys.get("max_rank")) {
    t.max_rank = parse_number<std::size_t>(e->value, e->line, "max_rank");
    if (t.max_rank < 1 || t.max_rank > 2) throw InstanceError("max_rank must be 1 or 2", e->line);
  }
  if (auto* e = keys.get("mode")) {
    if (e->value == "exhaustive") {
      t.mode = SuiteMode::ExhaustiveBasis;
    } else if (e->value == "randomized") {
      t.mode = SuiteMode::Randomized;
    } else {
      throw InstanceError("mode must be exhaustive or randomized", e->line);
    }
  }
  if (auto* e = keys.get("moduli")) {
    t.moduli = parse_numbers(e->value, e->line, "moduli");
    for (auto m : t.moduli)
      if (m < 2 || m > 16) throw InstanceError("search moduli must lie in [2, 16]", e->line);
  }
  return t;
}

}  // namespace

BuiltinRing parse_ring_expression(const std::string& expr) {
  const auto w = words(expr);
  auto number = [&](std::size_t i) {
    if (i >= w.size()) throw InvalidArgument("ring expression '" + expr + "' is incomplete");
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(w[i].data(), w[i].data() + w[i].size(), v);
    if (ec != std::errc() || ptr != w[i].data() + w[i].size()) {
      throw InvalidArgument("ring expression '" + expr + "': expected an integer, got '" + w[i] + "'");
    }
    return v;
  };
  if (w.empty()) throw InvalidArgument("empty ring expression");
  const auto& head = w[0];
  auto arity = [&](std::size_t n) {
    if (w.size() != n) throw InvalidArgument("ring expression '" + expr + "' has trailing words");
  };
  if (head == "zmod" || head == "dual") {
    const auto m = static_cast<Residue>(number(1));
    arity(2);
    auto r = head == "zmod" ? zmod_ring(m) : dual_numbers(m);
    return {r, {r.unit()}};
  }
  if (head == "zero") {
    const auto m = static_cast<Residue>(number(1));
    const auto k = number(2);
    arity(3);
    if (k == 0) throw InvalidArgument("zero ring rank must be positive");
    return {zero_product_ring(m, k), {}};
  }
  if (head == "matrix") {
    const auto n = number(1);
    if (w.size() < 4 || w[2] != "over") throw InvalidArgument("expected 'matrix n over <ring>'");
    std::string rest;
    for (std::size_t i = 3; i < w.size(); ++i) rest += (i > 3 ? " " : "") + w[i];
    const auto inner = parse_ring_expression(rest);
    const auto mr = matrix_ring(inner.ring, n);
    std::vector<RingElement> diag;
    for (std::size_t i = 0; i < n; ++i) diag.push_back(mr.matrix_unit(i, i));
    return {mr.ring, std::move(diag)};
  }
  throw InvalidArgument("unsupported ring kind '" + head + "'");
}

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::map<std::string, Section> sections;
  std::optional<int> version;
  std::string current;
  std::size_t lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw InstanceError("malformed section header", lineno);
      current = trim(line.substr(1, line.size() - 2));
      if (current != "preorder" && current != "ring" && current != "task") {
        throw InstanceError("unknown section [" + current + "]", lineno);
      }
      if (sections.count(current)) throw InstanceError("duplicate section [" + current + "]", lineno);
      sections[current].line = lineno;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InstanceError("expected key = value", lineno);
    Entry e{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno};
    if (current.empty()) {
      if (e.key != "format_version") throw InstanceError("key '" + e.key + "' outside any section", lineno);
      if (version) throw InstanceError("duplicate format_version", lineno);
      version = parse_number<int>(e.value, lineno, "format_version");
      if (*version != kFormatVersion) {
        throw InstanceError("unsupported format_version " + e.value, lineno);
      }
      continue;
    }
    sections[current].entries.push_back(std::move(e));
  }
  if (!version) throw InstanceError("missing format_version");
  Instance inst{std::nullopt, std::nullopt, "", {}, Task{}};
  if (sections.count("task")) inst.task = build_task(sections["task"]);
  if (sections.count("ring")) {
    auto ring = build_ring(sections["ring"], inst.ring_description);
    inst.ring = ring.ring;
    inst.ring_family = std::move(ring.family);
  } else if (inst.task.command != "search") {
    throw InstanceError("missing [ring] section");
  }
  if (sections.count("preorder")) inst.preorder = build_preorder(sections["preorder"]);
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

}  // namespace jderiv::cli
