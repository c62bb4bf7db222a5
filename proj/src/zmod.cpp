#include "jderiv/zmod.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

namespace jderiv {

void check_modulus(Residue m) {
  if (m < 2 || m > kMaxModulus) {
    throw InvalidArgument("modulus must lie in [2, 2^31], got " + std::to_string(m));
  }
}

Residue gcd_mod(Residue a, Residue m) { return std::gcd(reduce(a, m), m); }

namespace {

struct ExtGcd {
  Residue g, s, t;  // g = s*a + t*b
};

ExtGcd ext_gcd(Residue a, Residue b) {
  Residue old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Residue q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  return {old_r, old_s, old_t};
}

}  // namespace

std::optional<Residue> inverse_mod(Residue a, Residue m) {
  auto [g, s, t] = ext_gcd(reduce(a, m), m);
  (void)t;
  if (g != 1) return std::nullopt;
  return reduce(s, m);
}

Residue normalizing_unit(Residue a, Residue m) {
  a = reduce(a, m);
  if (a == 0) throw InvalidArgument("normalizing_unit: zero residue");
  const Residue g = std::gcd(a, m);
  const Residue mg = m / g;
  // u must invert a/g modulo m/g; any lift of that class coprime to m works.
  const Residue u0 = mg == 1 ? 0 : *inverse_mod(a / g, mg);
  for (Residue u = u0 == 0 ? mg : u0; u < m + mg; u += mg) {
    if (std::gcd(u % m, m) == 1) return u % m;
  }
  throw std::logic_error("normalizing_unit: no unit lift found");
}

// ---------------------------------------------------------------- ZmVector

ZmVector::ZmVector(Residue modulus, std::size_t size) : modulus_(modulus), entries_(size, 0) {
  check_modulus(modulus);
}

ZmVector::ZmVector(Residue modulus, std::vector<Residue> entries)
    : modulus_(modulus), entries_(std::move(entries)) {
  check_modulus(modulus);
  for (auto& e : entries_) e = jderiv::reduce(e, modulus_);
}

ZmVector ZmVector::unit_vector(Residue modulus, std::size_t size, std::size_t i) {
  ZmVector v(modulus, size);
  v.entries_.at(i) = 1;
  return v;
}

bool ZmVector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](Residue x) { return x == 0; });
}

std::size_t ZmVector::leading_index() const {
  auto it = std::find_if(entries_.begin(), entries_.end(), [](Residue x) { return x != 0; });
  return static_cast<std::size_t>(it - entries_.begin());
}

void ZmVector::require_compatible(const ZmVector& other) const {
  if (other.modulus_ != modulus_ || other.entries_.size() != entries_.size()) {
    throw InvalidArgument("vector shape or modulus mismatch");
  }
}

ZmVector& ZmVector::operator+=(const ZmVector& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] = add_mod(entries_[i], other.entries_[i], modulus_);
  }
  return *this;
}

ZmVector& ZmVector::operator-=(const ZmVector& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] = sub_mod(entries_[i], other.entries_[i], modulus_);
  }
  return *this;
}

ZmVector& ZmVector::operator*=(Residue scalar) {
  scalar = jderiv::reduce(scalar, modulus_);
  for (auto& e : entries_) e = mul_mod(e, scalar, modulus_);
  return *this;
}

void ZmVector::add_scaled(const ZmVector& other, Residue scalar) {
  require_compatible(other);
  scalar = jderiv::reduce(scalar, modulus_);
  if (scalar == 0) return;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (other.entries_[i] != 0) {
      entries_[i] = add_mod(entries_[i], mul_mod(other.entries_[i], scalar, modulus_), modulus_);
    }
  }
}

std::string ZmVector::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < entries_.size(); ++i) os << (i ? "," : "") << entries_[i];
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------- ZmMatrix

ZmMatrix::ZmMatrix(Residue modulus, std::size_t rows, std::size_t cols)
    : modulus_(modulus), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  check_modulus(modulus);
}

ZmMatrix ZmMatrix::from_rows(Residue modulus, std::size_t cols, std::span<const ZmVector> rows) {
  ZmMatrix m(modulus, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols || rows[r].modulus() != modulus) {
      throw InvalidArgument("from_rows: row shape or modulus mismatch");
    }
    std::copy(rows[r].entries().begin(), rows[r].entries().end(), m.data_.begin() + r * cols);
  }
  return m;
}

ZmMatrix ZmMatrix::from_rows(Residue modulus, const std::vector<std::vector<Residue>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  ZmMatrix m(modulus, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InvalidArgument("from_rows: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

ZmMatrix ZmMatrix::identity(Residue modulus, std::size_t n) {
  ZmMatrix m(modulus, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

ZmVector ZmMatrix::row(std::size_t r) const {
  return ZmVector(modulus_, std::vector<Residue>(data_.begin() + r * cols_,
                                                 data_.begin() + (r + 1) * cols_));
}

ZmVector ZmMatrix::column(std::size_t c) const {
  ZmVector v(modulus_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.set(r, at(r, c));
  return v;
}

std::vector<ZmVector> ZmMatrix::row_vectors() const {
  std::vector<ZmVector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

ZmMatrix ZmMatrix::transpose() const {
  ZmMatrix t(modulus_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = at(r, c);
  return t;
}

ZmVector ZmMatrix::operator*(const ZmVector& v) const {
  if (v.size() != cols_ || v.modulus() != modulus_) {
    throw InvalidArgument("matrix-vector shape or modulus mismatch");
  }
  ZmVector out(modulus_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Residue acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc = (acc + at(r, c) * v[c]) % modulus_;
    out.set(r, acc);
  }
  return out;
}

ZmMatrix ZmMatrix::operator*(const ZmMatrix& other) const {
  if (other.rows_ != cols_ || other.modulus_ != modulus_) {
    throw InvalidArgument("matrix product shape or modulus mismatch");
  }
  ZmMatrix out(modulus_, rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Residue a = at(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) {
        auto& x = out.data_[r * other.cols_ + c];
        x = (x + a * other.at(k, c)) % modulus_;
      }
    }
  return out;
}

// ---------------------------------------------------------------- Howell form

namespace {

using Row = std::vector<Residue>;

void axpy(Row& y, const Row& x, Residue a, Residue m, std::size_t from) {
  a = reduce(a, m);
  if (a == 0) return;
  for (std::size_t i = from; i < y.size(); ++i) {
    if (x[i] != 0) y[i] = (y[i] + a * x[i]) % m;
  }
}

void scale(Row& y, Residue a, Residue m, std::size_t from) {
  for (std::size_t i = from; i < y.size(); ++i) y[i] = (y[i] * a) % m;
}

bool is_zero_row(const Row& r) {
  return std::all_of(r.begin(), r.end(), [](Residue x) { return x == 0; });
}

// Unimodular combination: afterwards a[col] = gcd(a[col], b[col]) and b[col] = 0.
void combine(Row& a, Row& b, std::size_t col, Residue m) {
  const Residue x = a[col], y = b[col];
  auto [g, s, t] = ext_gcd(x, y);
  const Residue ys = y / g, xs = x / g;
  for (std::size_t i = col; i < a.size(); ++i) {
    const Residue ai = a[i], bi = b[i];
    if (ai == 0 && bi == 0) continue;
    a[i] = reduce(reduce(s, m) * ai % m + reduce(t, m) * bi % m, m);
    b[i] = reduce(ys % m * ai % m - xs % m * bi % m, m);
  }
}

// Pivot-by-pivot Howell reduction. Rows in `pool` may be in any order; each
// pivot row is combined, normalised to a divisor of m, used to clear the
// column above it, and its annihilator multiple is fed back into the pool.
std::vector<Row> howell_rows(Residue m, std::size_t cols, std::vector<Row> pool) {
  std::vector<Row> basis;
  std::vector<std::size_t> pivot_cols;
  std::erase_if(pool, is_zero_row);
  for (std::size_t c = 0; c < cols && !pool.empty(); ++c) {
    std::size_t piv = pool.size();
    for (std::size_t r = 0; r < pool.size(); ++r) {
      if (pool[r][c] == 0) continue;
      if (piv == pool.size()) {
        piv = r;
      } else {
        combine(pool[piv], pool[r], c, m);
      }
    }
    if (piv == pool.size()) continue;
    Row pivot = std::move(pool[piv]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(piv));
    std::erase_if(pool, is_zero_row);

    scale(pivot, normalizing_unit(pivot[c], m), m, c);
    const Residue p = pivot[c];
    if (p != 1) {
      Row ann = pivot;
      scale(ann, m / p, m, c);
      if (!is_zero_row(ann)) pool.push_back(std::move(ann));
    }
    for (auto& b : basis) {
      const Residue q = b[c] / p;
      if (q != 0) axpy(b, pivot, m - q % m, m, c);
    }
    basis.push_back(std::move(pivot));
    pivot_cols.push_back(c);
  }
  return basis;
}

Row to_row(const ZmVector& v) { return Row(v.entries().begin(), v.entries().end()); }

}  // namespace

// ---------------------------------------------------------------- SubgroupBasis

SubgroupBasis::SubgroupBasis(Residue modulus, std::size_t dimension)
    : modulus_(modulus), dimension_(dimension) {
  check_modulus(modulus);
}

std::vector<std::size_t> SubgroupBasis::pivots() const {
  std::vector<std::size_t> out;
  out.reserve(generators_.size());
  for (const auto& g : generators_) out.push_back(g.leading_index());
  return out;
}

void SubgroupBasis::require_compatible(const ZmVector& v) const {
  if (v.modulus() != modulus_ || v.size() != dimension_) {
    throw InvalidArgument("subgroup: vector modulus or dimension mismatch");
  }
}

ZmVector SubgroupBasis::reduce(ZmVector v) const {
  require_compatible(v);
  for (const auto& g : generators_) {
    const std::size_t c = g.leading_index();
    const Residue q = v[c] / g[c];
    if (q != 0) v.add_scaled(g, -q);
  }
  return v;
}

bool SubgroupBasis::contains(const ZmVector& v) const { return reduce(v).is_zero(); }

bool SubgroupBasis::contains(const SubgroupBasis& other) const {
  if (other.modulus_ != modulus_ || other.dimension_ != dimension_) {
    throw InvalidArgument("subgroup: modulus or dimension mismatch");
  }
  return std::all_of(other.generators_.begin(), other.generators_.end(),
                     [this](const ZmVector& g) { return contains(g); });
}

BigCount SubgroupBasis::cardinality() const {
  BigCount n = 1;
  for (const auto& g : generators_) n *= modulus_ / g[g.leading_index()];
  return n;
}

SubgroupBasis howell_form(Residue modulus, std::size_t dimension, std::vector<ZmVector> rows) {
  SubgroupBasis out(modulus, dimension);
  std::vector<Row> pool;
  pool.reserve(rows.size());
  for (const auto& r : rows) {
    out.require_compatible(r);
    pool.push_back(to_row(r));
  }
  for (auto& r : howell_rows(modulus, dimension, std::move(pool))) {
    out.generators_.emplace_back(modulus, std::move(r));
  }
  return out;
}

SubgroupBasis howell_form(const ZmMatrix& m) {
  return howell_form(m.modulus(), m.cols(), m.row_vectors());
}

SubgroupBasis kernel(const ZmMatrix& m) {
  // Howell rows of [M^T | I] whose first m.rows() entries vanish span the kernel.
  const std::size_t R = m.rows(), C = m.cols();
  const Residue mod = m.modulus();
  std::vector<Row> pool(C, Row(R + C, 0));
  for (std::size_t j = 0; j < C; ++j) {
    for (std::size_t i = 0; i < R; ++i) pool[j][i] = m.at(i, j);
    pool[j][R + j] = 1;
  }
  std::vector<ZmVector> tails;
  for (auto& r : howell_rows(mod, R + C, std::move(pool))) {
    const bool head_zero =
        std::all_of(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(R), [](Residue x) { return x == 0; });
    if (head_zero) {
      tails.emplace_back(mod, Row(r.begin() + static_cast<std::ptrdiff_t>(R), r.end()));
    }
  }
  return howell_form(mod, C, std::move(tails));
}

std::optional<ZmVector> solve_left(Residue modulus, std::size_t dimension,
                                   std::span<const ZmVector> rows, const ZmVector& target) {
  const std::size_t n = rows.size();
  if (target.size() != dimension || target.modulus() != modulus) {
    throw InvalidArgument("solve_left: target shape mismatch");
  }
  std::vector<Row> pool;
  pool.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != dimension || rows[i].modulus() != modulus) {
      throw InvalidArgument("solve_left: row shape mismatch");
    }
    Row r = to_row(rows[i]);
    r.resize(dimension + n, 0);
    r[dimension + i] = 1;
    pool.push_back(std::move(r));
  }
  Row v = to_row(target);
  v.resize(dimension + n, 0);
  for (const auto& h : howell_rows(modulus, dimension + n, std::move(pool))) {
    const std::size_t c = static_cast<std::size_t>(
        std::find_if(h.begin(), h.end(), [](Residue x) { return x != 0; }) - h.begin());
    if (c >= dimension) break;
    for (std::size_t j = 0; j < c; ++j) {
      if (v[j] != 0) return std::nullopt;
    }
    if (v[c] % h[c] != 0) return std::nullopt;
    axpy(v, h, modulus - (v[c] / h[c]) % modulus, modulus, 0);
  }
  for (std::size_t j = 0; j < dimension; ++j) {
    if (v[j] != 0) return std::nullopt;
  }
  ZmVector x(modulus, Row(v.begin() + static_cast<std::ptrdiff_t>(dimension), v.end()));
  return -x;
}

bool subgroup_contains(const SubgroupBasis& b, const ZmVector& v) { return b.contains(v); }

bool subgroup_equal(const SubgroupBasis& a, const SubgroupBasis& b) {
  if (a.modulus() != b.modulus() || a.dimension() != b.dimension()) {
    throw InvalidArgument("subgroup_equal: modulus or dimension mismatch");
  }
  return a == b;
}

BigCount subgroup_cardinality(const SubgroupBasis& b) { return b.cardinality(); }

// ---------------------------------------------------------------- RowSpanAccumulator

RowSpanAccumulator::RowSpanAccumulator(Residue modulus, std::size_t dimension, std::size_t batch)
    : basis_(modulus, dimension), batch_(std::max<std::size_t>(batch, 1)) {}

void RowSpanAccumulator::add(ZmVector row) {
  ++seen_;
  ZmVector rest = basis_.reduce(std::move(row));
  if (rest.is_zero()) return;
  pending_.push_back(std::move(rest));
  if (pending_.size() >= batch_) flush();
}

void RowSpanAccumulator::flush() {
  if (pending_.empty()) return;
  std::vector<ZmVector> rows = basis_.generators();
  rows.insert(rows.end(), std::make_move_iterator(pending_.begin()),
              std::make_move_iterator(pending_.end()));
  pending_.clear();
  basis_ = howell_form(basis_.modulus(), basis_.dimension(), std::move(rows));
}

const SubgroupBasis& RowSpanAccumulator::basis() {
  flush();
  return basis_;
}

}  // namespace jderiv
