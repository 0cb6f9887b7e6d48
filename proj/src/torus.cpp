#include "detloci/torus.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace detloci {

namespace {

std::int64_t vec_gcd(const IntVec& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  return g;
}

void require_natural_nonzero(const IntVec& v, const char* what) {
  if (v.empty()) throw std::invalid_argument(std::string(what) + ": empty vector");
  bool nonzero = false;
  for (auto x : v) {
    if (x < 0) throw std::invalid_argument(std::string(what) + ": entries must be natural numbers");
    nonzero = nonzero || x != 0;
  }
  if (!nonzero) throw std::invalid_argument(std::string(what) + ": vector must be nonzero");
}

}  // namespace

// ---------------------------------------------------------------------------
// AffineHyperplane

AffineHyperplane::AffineHyperplane(IntVec normal, std::int64_t constant)
    : c(std::move(normal)), c0(constant) {
  require_natural_nonzero(c, "hyperplane normal");
}

std::int64_t AffineHyperplane::normal_sum() const {
  return std::accumulate(c.begin(), c.end(), std::int64_t{0});
}

AffineHyperplane AffineHyperplane::primitive() const {
  std::int64_t g = std::gcd(vec_gcd(c), c0);
  AffineHyperplane out = *this;
  for (auto& x : out.c) x /= g;
  out.c0 /= g;
  return out;
}

Rational AffineHyperplane::evaluate(const std::vector<Rational>& point) const {
  Rational v = c0;
  for (std::size_t i = 0; i < c.size(); ++i) v += Rational(static_cast<long>(c[i])) * point.at(i);
  return v;
}

std::string AffineHyperplane::to_string(char symbol) const {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (c[i] != 1) out += std::to_string(c[i]) + "*";
    out += symbol + std::to_string(i + 1);
  }
  if (c0 > 0) out += "+" + std::to_string(c0);
  if (c0 < 0) out += std::to_string(c0);
  return out;
}

// ---------------------------------------------------------------------------
// PrimeTorusDivisor

PrimeTorusDivisor::PrimeTorusDivisor(IntVec exponent, TorsionAngle angle)
    : u(std::move(exponent)), xi(angle) {
  require_natural_nonzero(u, "divisor exponent");
  if (vec_gcd(u) != 1) throw std::invalid_argument("divisor exponent must be primitive");
}

bool PrimeTorusDivisor::contains(const TorsionPoint& point) const {
  if (point.size() != u.size()) throw std::invalid_argument("torsion point has wrong dimension");
  TorsionAngle acc;
  for (std::size_t i = 0; i < u.size(); ++i) acc = acc + point[i].times(u[i]);
  return acc == xi;
}

std::string PrimeTorusDivisor::to_string() const {
  std::string lhs;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    if (!lhs.empty()) lhs += "*";
    lhs += "t" + std::to_string(i + 1);
    if (u[i] != 1) lhs += "^" + std::to_string(u[i]);
  }
  return "{" + lhs + " = e(" + xi.to_string() + ")}";
}

// ---------------------------------------------------------------------------
// TorusDivisor

void TorusDivisor::add(const PrimeTorusDivisor& c, std::int64_t mult) {
  if (mult == 0) return;
  auto& slot = terms_[c];
  slot += mult;
  if (slot == 0) terms_.erase(c);
}

std::int64_t TorusDivisor::coefficient(const PrimeTorusDivisor& c) const {
  auto it = terms_.find(c);
  return it == terms_.end() ? 0 : it->second;
}

bool TorusDivisor::is_effective() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second > 0; });
}

TorusDivisor TorusDivisor::operator+(const TorusDivisor& o) const {
  TorusDivisor out = *this;
  for (const auto& [c, m] : o.terms_) out.add(c, m);
  return out;
}

TorusDivisor TorusDivisor::operator-(const TorusDivisor& o) const { return *this + (-o); }

TorusDivisor TorusDivisor::operator-() const {
  TorusDivisor out;
  for (const auto& [c, m] : terms_) out.terms_.emplace(c, -m);
  return out;
}

std::set<PrimeTorusDivisor> TorusDivisor::reduced_support() const {
  std::set<PrimeTorusDivisor> out;
  for (const auto& kv : terms_) out.insert(kv.first);
  return out;
}

// ---------------------------------------------------------------------------
// TranslatedSubtorus

TranslatedSubtorus::TranslatedSubtorus(std::size_t dim, std::vector<Equation> equations)
    : dim_(dim), equations_(std::move(equations)) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& eq : equations_) {
    if (eq.u.size() != dim_) throw std::invalid_argument("subtorus equation has wrong dimension");
    std::vector<Rational> row;
    for (auto x : eq.u) row.emplace_back(static_cast<long>(x));
    rows.push_back(std::move(row));
  }
  if (rational_rank(rows) != equations_.size())
    throw std::invalid_argument("subtorus equations must have linearly independent exponents");
  std::sort(equations_.begin(), equations_.end());
}

bool TranslatedSubtorus::contains(const TorsionPoint& point) const {
  if (point.size() != dim_) throw std::invalid_argument("torsion point has wrong dimension");
  for (const auto& eq : equations_) {
    TorsionAngle acc;
    for (std::size_t i = 0; i < dim_; ++i) acc = acc + point[i].times(eq.u[i]);
    if (acc != eq.xi) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Operations

PrimeTorusDivisor exp_hyperplane(const AffineHyperplane& h) {
  const std::int64_t g = vec_gcd(h.c);
  IntVec u = h.c;
  for (auto& x : u) x /= g;
  return PrimeTorusDivisor(std::move(u), TorsionAngle(-h.c0, g));
}

IntVec slope(const AffineHyperplane& h) {
  const std::int64_t g = vec_gcd(h.c);
  IntVec u = h.c;
  for (auto& x : u) x /= g;
  return u;
}

bool is_oblique(const AffineHyperplane& h) {
  return std::all_of(h.c.begin(), h.c.end(), [](std::int64_t x) { return x != 0; });
}

std::vector<PrimeTorusDivisor> tau_preimage(const std::vector<IntVec>& m, const PrimeTorusDivisor& c) {
  if (m.empty()) throw std::invalid_argument("tau_preimage: M has no rows");
  IntVec w;
  for (const auto& row : m) {
    if (row.size() != c.dim()) throw std::invalid_argument("tau_preimage: M has wrong number of columns");
    std::int64_t s = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] < 0) throw std::invalid_argument("tau_preimage: M must have natural entries");
      s += row[j] * c.u[j];
    }
    w.push_back(s);
  }
  const std::int64_t g = vec_gcd(w);
  if (g == 0) throw std::invalid_argument("divisor pulls back to all of the torus or empty");
  for (auto& x : w) x /= g;
  std::vector<PrimeTorusDivisor> out;
  for (const auto& eta : angle_roots(c.xi, g)) out.emplace_back(w, eta);
  return out;
}

TorsionPoint tau_image(const std::vector<IntVec>& m, const TorsionPoint& lambda) {
  if (m.size() != lambda.size()) throw std::invalid_argument("tau_image: point has wrong dimension");
  const std::size_t r = m.empty() ? 0 : m.front().size();
  TorsionPoint out(r);
  for (std::size_t k = 0; k < m.size(); ++k)
    for (std::size_t j = 0; j < r; ++j) out[j] = out[j] + lambda[k].times(m[k][j]);
  return out;
}

bool nondegeneracy_check(const std::vector<IntVec>& m, const std::vector<bool>& nonempty_mask) {
  if (m.empty()) return false;
  const std::size_t r = m.front().size();
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : m) {
    if (row.size() != r) throw std::invalid_argument("nondegeneracy_check: ragged matrix");
    std::vector<Rational> q;
    for (auto x : row) q.emplace_back(static_cast<long>(x));
    rows.push_back(std::move(q));
  }
  if (rational_rank(rows) != m.size()) return false;
  for (std::size_t j = 0; j < r && j < nonempty_mask.size(); ++j) {
    if (!nonempty_mask[j]) continue;
    std::int64_t s = 0;
    for (const auto& row : m) s += row[j];
    if (s == 0) return false;
  }
  return true;
}

}  // namespace detloci
