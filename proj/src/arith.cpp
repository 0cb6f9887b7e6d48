#include "detloci/arith.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace detloci {

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return std::lcm(a, b);
}

std::int64_t euler_phi(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("euler_phi: n must be positive");
  std::int64_t result = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

// ---------------------------------------------------------------------------
// TorsionAngle

TorsionAngle::TorsionAngle(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("torsion angle denominator must be positive");
  num %= den;
  if (num < 0) num += den;
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = den;
  num_ = num / g;
  den_ = den / g;
}

TorsionAngle TorsionAngle::from_rational(const Rational& q) {
  Rational r = q;
  r.canonicalize();
  if (!r.get_num().fits_slong_p() || !r.get_den().fits_slong_p())
    throw std::overflow_error("torsion angle out of range");
  Integer num = r.get_num();
  Integer den = r.get_den();
  Integer rem;
  mpz_fdiv_r(rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return TorsionAngle(rem.get_si(), den.get_si());
}

TorsionAngle TorsionAngle::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      std::int64_t a = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return TorsionAngle(a, 1);
    }
    std::string a_part = text.substr(0, slash), b_part = text.substr(slash + 1);
    std::int64_t a = std::stoll(a_part, &used);
    if (used != a_part.size()) throw std::invalid_argument(text);
    std::int64_t b = std::stoll(b_part, &used);
    if (used != b_part.size() || b <= 0) throw std::invalid_argument(text);
    return TorsionAngle(a, b);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("malformed torsion angle '" + text + "'");
  }
}

TorsionAngle TorsionAngle::operator+(const TorsionAngle& o) const {
  std::int64_t den = lcm64(den_, o.den_);
  return TorsionAngle(num_ * (den / den_) + o.num_ * (den / o.den_), den);
}

TorsionAngle TorsionAngle::operator-(const TorsionAngle& o) const { return *this + (-o); }

TorsionAngle TorsionAngle::operator-() const { return TorsionAngle(-num_, den_); }

TorsionAngle TorsionAngle::times(std::int64_t k) const {
  // k may be large; reduce first to stay in range.
  std::int64_t kr = k % den_;
  return TorsionAngle(num_ * kr, den_);
}

std::strong_ordering TorsionAngle::operator<=>(const TorsionAngle& o) const {
  __int128 lhs = static_cast<__int128>(num_) * o.den_;
  __int128 rhs = static_cast<__int128>(o.num_) * den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string TorsionAngle::to_string() const {
  if (num_ == 0) return "0";
  return std::to_string(num_) + "/" + std::to_string(den_);
}

// ---------------------------------------------------------------------------
// QPoly

QPoly::QPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(); }

QPoly QPoly::from_integers(const std::vector<Integer>& coeffs) {
  std::vector<Rational> c(coeffs.begin(), coeffs.end());
  return QPoly(std::move(c));
}

QPoly QPoly::monomial(const Rational& coeff, std::size_t degree) {
  std::vector<Rational> c(degree + 1);
  c[degree] = coeff;
  return QPoly(std::move(c));
}

void QPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Rational> c(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
  return QPoly(std::move(c));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
  std::vector<Rational> c(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) c[i] -= b.c[i];
  return QPoly(std::move(c));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c.size() + b.c.size() - 1);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
  }
  return QPoly(std::move(c));
}

QPolyDivision divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  QPolyDivision out;
  std::vector<Rational> r = a.c;
  if (a.degree() < b.degree()) {
    out.remainder = a;
    return out;
  }
  std::vector<Rational> q(a.c.size() - b.c.size() + 1);
  Rational inv_lead = 1 / b.lead();
  for (long k = static_cast<long>(q.size()) - 1; k >= 0; --k) {
    Rational coef = r[k + b.c.size() - 1] * inv_lead;
    q[k] = coef;
    if (coef == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) r[k + j] -= coef * b.c[j];
  }
  out.quotient = QPoly(std::move(q));
  out.remainder = QPoly(std::move(r));
  return out;
}

QPoly monic(const QPoly& p) {
  if (p.is_zero()) return p;
  QPoly out = p;
  Rational inv = 1 / p.lead();
  for (auto& x : out.c) x *= inv;
  return out;
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly r = divmod(x, y).remainder;
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

namespace {

// Returns (g, s) with s*a = g mod b, g = gcd(a, b) monic.
std::pair<QPoly, QPoly> half_xgcd(const QPoly& a, const QPoly& b) {
  QPoly r0 = a, r1 = b;
  QPoly s0 = QPoly({Rational(1)}), s1;
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    QPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  Rational inv = 1 / r0.lead();
  for (auto& x : r0.c) x *= inv;
  for (auto& x : s0.c) x *= inv;
  return {r0, s0};
}

}  // namespace

std::vector<Integer> cyclotomic_poly(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_poly: n must be >= 1");
  static std::mutex mu;
  static std::map<std::int64_t, std::vector<Integer>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  // Phi_n = (t^n - 1) / prod_{d | n, d < n} Phi_d
  std::vector<Rational> tn(n + 1);
  tn[0] = -1;
  tn[n] = 1;
  QPoly acc(std::move(tn));
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    acc = divmod(acc, QPoly::from_integers(cyclotomic_poly(d))).quotient;
  }
  std::vector<Integer> out;
  out.reserve(acc.c.size());
  for (const auto& q : acc.c) out.push_back(q.get_num());
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(n, out);
  return out;
}

std::vector<TorsionAngle> angle_roots(const TorsionAngle& xi, std::int64_t g) {
  if (g < 1) throw std::invalid_argument("angle_roots: g must be >= 1");
  std::vector<TorsionAngle> out;
  out.reserve(g);
  for (std::int64_t k = 0; k < g; ++k) out.emplace_back(xi.num() + k * xi.den(), xi.den() * g);
  std::sort(out.begin(), out.end());
  return out;
}

int unit_root_multiplicity(const QPoly& p, const TorsionAngle& xi) {
  if (p.is_zero()) throw std::domain_error("zero polynomial has infinite multiplicity");
  QPoly phi = QPoly::from_integers(cyclotomic_poly(xi.den()));
  QPoly cur = p;
  int m = 0;
  while (cur.degree() >= phi.degree()) {
    auto [q, r] = divmod(cur, phi);
    if (!r.is_zero()) break;
    cur = std::move(q);
    ++m;
  }
  return m;
}

std::size_t rational_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t ncols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      Rational f = rows[i][col] / rows[rank][col];
      for (std::size_t j = col; j < ncols; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

// ---------------------------------------------------------------------------
// CycloField

CycloField::CycloField(std::int64_t order)
    : order_(order), degree_(static_cast<std::size_t>(euler_phi(order))),
      modulus_(cyclotomic_poly(order)) {
  for (std::size_t i = 0; i + 1 < modulus_.size(); ++i)
    if (modulus_[i] != 0) tail_.emplace_back(i, modulus_[i]);
}

std::shared_ptr<const CycloField> CycloField::get(std::int64_t order) {
  if (order < 1) throw std::invalid_argument("cyclotomic order must be >= 1");
  static std::mutex mu;
  static std::map<std::int64_t, std::shared_ptr<const CycloField>> fields;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = fields[order];
  if (!slot) slot = std::make_shared<const CycloField>(order);
  return slot;
}

void CycloField::reduce(std::vector<Rational>& v) const {
  // z^phi = -sum tail_i z^i  (Phi_N is monic)
  for (std::size_t k = v.size(); k-- > degree_;) {
    if (v[k] == 0) continue;
    const std::size_t shift = k - degree_;
    for (const auto& [i, coef] : tail_) v[shift + i] -= v[k] * coef;
    v[k] = 0;
  }
  v.resize(degree_);
}

FieldPtr common_field(const FieldPtr& a, std::int64_t other_order) {
  std::int64_t n = lcm64(a->order(), other_order);
  if (n == a->order()) return a;
  return CycloField::get(n);
}

// ---------------------------------------------------------------------------
// CycloElem

CycloElem::CycloElem(FieldPtr field) : field_(std::move(field)), c_(field_->degree()) {}

CycloElem::CycloElem(FieldPtr field, const Rational& q) : CycloElem(std::move(field)) {
  c_[0] = q;
  c_[0].canonicalize();
}

CycloElem::CycloElem(FieldPtr field, std::vector<Rational> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
  if (c_.size() < field_->degree()) c_.resize(field_->degree());
  for (auto& x : c_) x.canonicalize();
  field_->reduce(c_);
}

CycloElem CycloElem::zeta_power(FieldPtr field, std::int64_t k) {
  const std::int64_t n = field->order();
  k %= n;
  if (k < 0) k += n;
  std::vector<Rational> v(static_cast<std::size_t>(k) + 1);
  v[k] = 1;
  return CycloElem(std::move(field), std::move(v));
}

CycloElem CycloElem::root(FieldPtr field, const TorsionAngle& xi) {
  if (field->order() % xi.den() != 0)
    throw std::invalid_argument("root of unity e(" + xi.to_string() + ") not in Q(zeta_" +
                                std::to_string(field->order()) + ")");
  std::int64_t k = xi.num() * (field->order() / xi.den());
  return zeta_power(std::move(field), k);
}

bool CycloElem::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
}

bool CycloElem::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& q) { return q == 0; });
}

bool CycloElem::is_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& q) { return q == 0; });
}

static void require_same(const CycloElem& a, const CycloElem& b) {
  if (a.field() != b.field())
    throw std::invalid_argument("cyclotomic elements live in different fields");
}

CycloElem CycloElem::operator+(const CycloElem& o) const {
  CycloElem r = *this;
  return r += o;
}

CycloElem CycloElem::operator-(const CycloElem& o) const {
  CycloElem r = *this;
  return r -= o;
}

CycloElem& CycloElem::operator+=(const CycloElem& o) {
  require_same(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycloElem& CycloElem::operator-=(const CycloElem& o) {
  require_same(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CycloElem CycloElem::operator-() const {
  CycloElem r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

CycloElem CycloElem::operator*(const CycloElem& o) const {
  require_same(*this, o);
  const std::size_t n = c_.size();
  if (n == 1) return CycloElem(field_, c_[0] * o.c_[0]);
  if (is_rational()) {
    CycloElem r = o;
    for (auto& q : r.c_) q *= c_[0];
    return r;
  }
  if (o.is_rational()) {
    CycloElem r = *this;
    for (auto& q : r.c_) q *= o.c_[0];
    return r;
  }
  std::vector<Rational> prod(2 * n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (o.c_[j] != 0) prod[i + j] += c_[i] * o.c_[j];
  }
  CycloElem r(field_);
  field_->reduce(prod);
  r.c_ = std::move(prod);
  return r;
}

CycloElem CycloElem::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero in cyclotomic field");
  if (is_rational()) return CycloElem(field_, 1 / c_[0]);
  auto [g, s] = half_xgcd(QPoly(c_), QPoly::from_integers(field_->modulus()));
  // Phi_N is irreducible, so g = 1 and s is the inverse.
  return CycloElem(field_, s.c);
}

CycloElem CycloElem::lifted(const FieldPtr& bigger) const {
  if (bigger == field_) return *this;
  if (bigger->order() % order() != 0)
    throw std::invalid_argument("cannot lift Q(zeta_" + std::to_string(order()) + ") into Q(zeta_" +
                                std::to_string(bigger->order()) + ")");
  const std::size_t step = static_cast<std::size_t>(bigger->order() / order());
  std::vector<Rational> v(c_.empty() ? 1 : (c_.size() - 1) * step + 1);
  for (std::size_t i = 0; i < c_.size(); ++i) v[i * step] = c_[i];
  return CycloElem(bigger, std::move(v));
}

bool CycloElem::operator==(const CycloElem& o) const { return field_ == o.field_ && c_ == o.c_; }

std::strong_ordering CycloElem::operator<=>(const CycloElem& o) const {
  if (order() != o.order()) return order() <=> o.order();
  for (std::size_t i = 0; i < c_.size(); ++i) {
    int s = cmp(c_[i], o.c_[i]);
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::vector<std::pair<Rational, TorsionAngle>> CycloElem::root_terms() const {
  std::vector<std::pair<Rational, TorsionAngle>> out;
  if (is_zero()) return out;
  if (is_rational()) {
    out.emplace_back(c_[0], TorsionAngle());
    return out;
  }
  // Look for c = q * zeta^j, walking zeta^j by multiply-by-z and reduce.
  const std::size_t d = field_->degree();
  std::size_t pivot = 0;
  while (c_[pivot] == 0) ++pivot;
  std::vector<Rational> power(d);
  power[0] = 1;
  for (std::int64_t j = 0; j < order(); ++j) {
    if (power[pivot] != 0) {
      Rational q = c_[pivot] / power[pivot];
      bool match = true;
      for (std::size_t i = 0; i < d && match; ++i) match = c_[i] == q * power[i];
      if (match) {
        out.emplace_back(q, TorsionAngle(j, order()));
        return out;
      }
    }
    power.insert(power.begin(), Rational(0));
    field_->reduce(power);
  }
  for (std::size_t j = 0; j < d; ++j)
    if (c_[j] != 0) out.emplace_back(c_[j], TorsionAngle(static_cast<std::int64_t>(j), order()));
  return out;
}

std::string CycloElem::to_string() const {
  std::string out;
  for (const auto& [coef, angle] : root_terms()) {
    Rational q = coef;
    bool neg = q < 0;
    if (neg) q = -q;
    if (!out.empty() || neg) out += neg ? "-" : "+";
    std::string root = angle.is_zero() ? "" : "e(" + angle.to_string() + ")";
    if (root.empty()) {
      out += q.get_str();
    } else if (q == 1) {
      out += root;
    } else {
      out += q.get_str() + "*" + root;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace detloci
