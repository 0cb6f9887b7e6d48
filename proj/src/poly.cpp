#include "detloci/poly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace detloci {

// ---------------------------------------------------------------------------
// Ring

Ring Ring::make(int nvars, bool laurent, std::int64_t order, char symbol) {
  if (nvars < 1) throw std::invalid_argument("ring needs at least one variable");
  return Ring{nvars, laurent, CycloField::get(order), symbol};
}

Ring Ring::with_field(FieldPtr f) const {
  Ring r = *this;
  r.field = std::move(f);
  return r;
}

int grlex_compare(const Exponent& a, const Exponent& b) {
  const int da = std::accumulate(a.begin(), a.end(), 0);
  const int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

// Accumulates terms in any order and emits the sorted, zero-free list.
class TermBuilder {
 public:
  explicit TermBuilder(const Ring& ring) : ring_(ring) {}

  void add(const Exponent& e, const CycloElem& c) {
    auto it = acc_.find(e);
    if (it == acc_.end()) {
      acc_.emplace(e, c);
    } else {
      it->second += c;
    }
  }

  LaurentPoly build() {
    LaurentPoly out(ring_);
    out.terms_.reserve(acc_.size());
    for (auto& [e, c] : acc_)
      if (!c.is_zero()) out.terms_.push_back({e, std::move(c)});
    return out;
  }

  static LaurentPoly from_sorted(const Ring& ring, std::vector<LaurentPoly::Term> terms) {
    LaurentPoly out(ring);
    out.terms_ = std::move(terms);
    return out;
  }

  static std::vector<LaurentPoly::Term>& terms_of(LaurentPoly& p) { return p.terms_; }

 private:
  struct Desc {
    bool operator()(const Exponent& a, const Exponent& b) const { return grlex_compare(a, b) > 0; }
  };
  Ring ring_;
  std::map<Exponent, CycloElem, Desc> acc_;
};

namespace {

void require_ring(const LaurentPoly& a, const LaurentPoly& b) {
  if (!(a.ring() == b.ring())) throw std::invalid_argument("polynomials live in different rings");
}

void check_exponent(const Ring& ring, const Exponent& e) {
  if (static_cast<int>(e.size()) != ring.nvars)
    throw std::invalid_argument("exponent has wrong number of variables");
  if (!ring.laurent)
    for (int x : e)
      if (x < 0) throw std::invalid_argument("negative exponent in a polynomial ring");
}

// Merge of two sorted term lists: a + sign * b.
std::vector<LaurentPoly::Term> merge(const std::vector<LaurentPoly::Term>& a,
                                     const std::vector<LaurentPoly::Term>& b, bool subtract) {
  std::vector<LaurentPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int cmp = i == a.size() ? -1 : j == b.size() ? 1 : grlex_compare(a[i].exp, b[j].exp);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back({b[j].exp, subtract ? -b[j].coeff : b[j].coeff});
      ++j;
    } else {
      CycloElem c = subtract ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
      if (!c.is_zero()) out.push_back({a[i].exp, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

Exponent add_exp(const Exponent& a, const Exponent& b) {
  Exponent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Exponent negate(const Exponent& a) {
  Exponent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly::LaurentPoly(Ring ring) : ring_(std::move(ring)) {}

LaurentPoly LaurentPoly::constant(const Ring& ring, const CycloElem& c) {
  return monomial(ring, Exponent(ring.nvars, 0), c);
}

LaurentPoly LaurentPoly::constant(const Ring& ring, const Rational& q) {
  return constant(ring, CycloElem(ring.field, q));
}

LaurentPoly LaurentPoly::monomial(const Ring& ring, Exponent exp, const CycloElem& c) {
  check_exponent(ring, exp);
  if (c.field() != ring.field) throw std::invalid_argument("coefficient field differs from ring field");
  LaurentPoly out(ring);
  if (!c.is_zero()) out.terms_.push_back({std::move(exp), c});
  return out;
}

LaurentPoly LaurentPoly::variable(const Ring& ring, int index) {
  if (index < 0 || index >= ring.nvars) throw std::out_of_range("variable index out of range");
  Exponent e(ring.nvars, 0);
  e[index] = 1;
  return monomial(ring, std::move(e), CycloElem(ring.field, Rational(1)));
}

LaurentPoly LaurentPoly::binomial(const Ring& ring, const IntVec& u, const TorsionAngle& xi) {
  if (static_cast<int>(u.size()) != ring.nvars) throw std::invalid_argument("binomial exponent has wrong length");
  Exponent e(u.begin(), u.end());
  return monomial(ring, e, CycloElem(ring.field, Rational(1))) -
         constant(ring, CycloElem::root(ring.field, xi));
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  return std::all_of(terms_[0].exp.begin(), terms_[0].exp.end(), [](int x) { return x == 0; });
}

bool LaurentPoly::is_one() const { return is_constant() && !is_zero() && terms_[0].coeff.is_one(); }

int LaurentPoly::total_degree() const {
  if (terms_.empty()) throw std::domain_error("degree of the zero polynomial");
  return std::accumulate(terms_.front().exp.begin(), terms_.front().exp.end(), 0);
}

int LaurentPoly::max_degree(int var) const {
  if (terms_.empty()) throw std::domain_error("degree of the zero polynomial");
  int m = terms_[0].exp[var];
  for (const auto& t : terms_) m = std::max(m, t.exp[var]);
  return m;
}

int LaurentPoly::min_degree(int var) const {
  if (terms_.empty()) throw std::domain_error("degree of the zero polynomial");
  int m = terms_[0].exp[var];
  for (const auto& t : terms_) m = std::min(m, t.exp[var]);
  return m;
}

bool LaurentPoly::involves(int var) const {
  return std::any_of(terms_.begin(), terms_.end(), [var](const Term& t) { return t.exp[var] != 0; });
}

Exponent LaurentPoly::min_exponents() const {
  if (terms_.empty()) return Exponent(ring_.nvars, 0);
  Exponent m = terms_[0].exp;
  for (const auto& t : terms_)
    for (int i = 0; i < ring_.nvars; ++i) m[i] = std::min(m[i], t.exp[i]);
  return m;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  require_ring(*this, o);
  return TermBuilder::from_sorted(ring_, merge(terms_, o.terms_, false));
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  require_ring(*this, o);
  return TermBuilder::from_sorted(ring_, merge(terms_, o.terms_, true));
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  require_ring(*this, o);
  if (is_zero() || o.is_zero()) return LaurentPoly(ring_);
  if (o.terms_.size() == 1) {
    // Shifting preserves a monomial order, so the product stays sorted.
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      CycloElem c = t.coeff * o.terms_[0].coeff;
      if (!c.is_zero()) out.push_back({add_exp(t.exp, o.terms_[0].exp), std::move(c)});
    }
    return TermBuilder::from_sorted(ring_, std::move(out));
  }
  if (terms_.size() == 1) return o * *this;
  TermBuilder b(ring_);
  for (const auto& x : terms_)
    for (const auto& y : o.terms_) b.add(add_exp(x.exp, y.exp), x.coeff * y.coeff);
  return b.build();
}

LaurentPoly LaurentPoly::operator*(const CycloElem& c) const {
  if (c.field() != ring_.field) throw std::invalid_argument("scalar field differs from ring field");
  if (c.is_zero()) return LaurentPoly(ring_);
  LaurentPoly out = *this;
  for (auto& t : out.terms_) t.coeff = t.coeff * c;
  return out;
}

LaurentPoly LaurentPoly::shifted(const Exponent& by) const {
  LaurentPoly out = *this;
  for (auto& t : out.terms_) {
    t.exp = add_exp(t.exp, by);
    check_exponent(ring_, t.exp);
  }
  return out;
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
  LaurentPoly result = constant(ring_, Rational(1));
  LaurentPoly base = *this;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

LaurentPoly LaurentPoly::normalized() const {
  if (is_zero()) return *this;
  LaurentPoly out = *this * terms_.front().coeff.inverse();
  if (ring_.laurent) out = out.shifted(negate(min_exponents()));
  return out;
}

LaurentPoly LaurentPoly::lifted(const FieldPtr& bigger) const {
  if (bigger == ring_.field) return *this;
  LaurentPoly out(ring_.with_field(bigger));
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back({t.exp, t.coeff.lifted(bigger)});
  return out;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  if (!(ring_ == o.ring_) || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].exp != o.terms_[i].exp || !(terms_[i].coeff == o.terms_[i].coeff)) return false;
  return true;
}

std::strong_ordering LaurentPoly::operator<=>(const LaurentPoly& o) const {
  const std::size_t n = std::min(terms_.size(), o.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = grlex_compare(terms_[i].exp, o.terms_[i].exp);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    auto cc = terms_[i].coeff <=> o.terms_[i].coeff;
    if (cc != 0) return cc;
  }
  return terms_.size() <=> o.terms_.size();
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    std::string mono;
    for (int i = 0; i < ring_.nvars; ++i) {
      if (t.exp[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_.symbol;
      if (ring_.nvars > 1) mono += std::to_string(i + 1);
      if (t.exp[i] != 1) mono += "^" + std::to_string(t.exp[i]);
    }
    for (const auto& [coef, angle] : t.coeff.root_terms()) {
      Rational q = coef;
      const bool neg = q < 0;
      if (neg) q = -q;
      if (!out.empty() || neg) out += neg ? "-" : "+";
      std::vector<std::string> parts;
      const bool bare = angle.is_zero() && mono.empty();
      if (q != 1 || bare) parts.push_back(q.get_str());
      if (!angle.is_zero()) parts.push_back("e(" + angle.to_string() + ")");
      if (!mono.empty()) parts.push_back(mono);
      for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? "*" : "") + parts[k];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Division, valuation, gcd

namespace {

// Division in the polynomial ring (all exponents nonnegative), failing as
// soon as a leading term is not divisible.
std::optional<LaurentPoly> divide_nonneg(const LaurentPoly& f, const LaurentPoly& g) {
  const Ring& ring = f.ring();
  LaurentPoly r = f;
  std::vector<LaurentPoly::Term> quotient;
  const Exponent& lg = g.leading().exp;
  const CycloElem inv = g.leading().coeff.inverse();
  while (!r.is_zero()) {
    const auto& lt = r.leading();
    Exponent e(lt.exp.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = lt.exp[i] - lg[i];
      if (e[i] < 0) return std::nullopt;
    }
    CycloElem c = lt.coeff * inv;
    std::vector<LaurentPoly::Term> scaled;
    scaled.reserve(g.size());
    for (const auto& t : g.terms()) scaled.push_back({add_exp(t.exp, e), t.coeff * c});
    r = TermBuilder::from_sorted(ring, merge(r.terms(), scaled, true));
    quotient.push_back({std::move(e), std::move(c)});
  }
  return TermBuilder::from_sorted(ring, std::move(quotient));
}

// Brings both operands into a common field.
std::pair<LaurentPoly, LaurentPoly> unify(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.ring().nvars != b.ring().nvars || a.ring().laurent != b.ring().laurent)
    throw std::invalid_argument("polynomials live in different rings");
  if (a.ring().field == b.ring().field) return {a, b};
  FieldPtr f = common_field(a.ring().field, b.ring().order());
  return {a.lifted(f), b.lifted(f)};
}

// Coefficients of f as a polynomial in variable v (keys are degrees in v).
std::map<int, LaurentPoly> coefficients_in(const LaurentPoly& f, int v) {
  std::map<int, std::vector<LaurentPoly::Term>> parts;
  for (const auto& t : f.terms()) {
    Exponent e = t.exp;
    const int d = e[v];
    e[v] = 0;
    parts[d].push_back({std::move(e), t.coeff});
  }
  std::map<int, LaurentPoly> out;
  // Zeroing one coordinate can break the grlex order; rebuild through a builder.
  for (auto& [d, terms] : parts) {
    TermBuilder b(f.ring());
    for (auto& t : terms) b.add(t.exp, t.coeff);
    out.emplace(d, b.build());
  }
  return out;
}

LaurentPoly mul_var_power(const LaurentPoly& f, int v, int d) {
  Exponent e(f.ring().nvars, 0);
  e[v] = d;
  return f.shifted(e);
}

int highest_var(const LaurentPoly& f) {
  for (int v = f.ring().nvars - 1; v >= 0; --v)
    if (f.involves(v)) return v;
  return -1;
}

LaurentPoly gcd_nonneg(const LaurentPoly& a, const LaurentPoly& b);

// gcd of the coefficients of f with respect to v (each free of v).
LaurentPoly content_in(const LaurentPoly& f, int v) {
  LaurentPoly g(f.ring());
  for (const auto& [d, c] : coefficients_in(f, v)) {
    g = g.is_zero() ? c.normalized() : gcd_nonneg(g, c);
    if (g.is_one()) break;
  }
  return g;
}

LaurentPoly exact_nonneg(const LaurentPoly& f, const LaurentPoly& g) {
  auto q = divide_nonneg(f, g);
  if (!q) throw std::logic_error("internal: expected exact division");
  return *q;
}

// Pseudo-remainder of a by b with respect to v.
LaurentPoly pseudo_remainder(const LaurentPoly& a, const LaurentPoly& b, int v) {
  auto bc = coefficients_in(b, v);
  const int db = bc.rbegin()->first;
  const LaurentPoly lb = bc.rbegin()->second;
  const LaurentPoly b_rest = b - mul_var_power(lb, v, db);
  LaurentPoly r = a;
  while (!r.is_zero()) {
    auto rc = coefficients_in(r, v);
    const int dr = rc.rbegin()->first;
    if (dr < db) break;
    const LaurentPoly lr = rc.rbegin()->second;
    // r <- lb*r - lr*v^{dr-db}*b, which cancels the top v-degree.
    LaurentPoly r_rest = r - mul_var_power(lr, v, dr);
    r = lb * r_rest - mul_var_power(lr * b_rest, v, dr - db);
  }
  return r;
}

LaurentPoly gcd_nonneg(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) return b.normalized();
  if (b.is_zero()) return a.normalized();
  const int v = std::max(highest_var(a), highest_var(b));
  if (v < 0) return LaurentPoly::constant(a.ring(), Rational(1));
  const LaurentPoly ca = content_in(a, v);
  const LaurentPoly cb = content_in(b, v);
  const LaurentPoly c = gcd_nonneg(ca, cb);
  LaurentPoly p = exact_nonneg(a, ca).normalized();
  LaurentPoly q = exact_nonneg(b, cb).normalized();
  // Primitive PRS in v.
  if (p.max_degree(v) < q.max_degree(v)) std::swap(p, q);
  while (!q.is_zero() && q.involves(v)) {
    LaurentPoly r = pseudo_remainder(p, q, v);
    p = std::move(q);
    if (r.is_zero()) {
      q = LaurentPoly(a.ring());
    } else {
      q = exact_nonneg(r, content_in(r, v)).normalized();
    }
  }
  // q nonzero and free of v means the primitive parts are coprime.
  LaurentPoly prim = q.is_zero() ? p : LaurentPoly::constant(a.ring(), Rational(1));
  return (c * prim).normalized();
}

LaurentPoly strip_monomial(const LaurentPoly& f) {
  if (f.is_zero()) return f;
  return f.shifted(negate(f.min_exponents()));
}

}  // namespace

std::optional<LaurentPoly> exact_divide(const LaurentPoly& f_in, const LaurentPoly& g_in) {
  if (g_in.is_zero()) throw std::domain_error("division by the zero polynomial");
  auto [f, g] = unify(f_in, g_in);
  if (f.is_zero()) return f;
  if (!f.ring().laurent) return divide_nonneg(f, g);
  const Exponent a = f.min_exponents(), b = g.min_exponents();
  auto q = divide_nonneg(strip_monomial(f), strip_monomial(g));
  if (!q) return std::nullopt;
  Exponent shift(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) shift[i] = a[i] - b[i];
  return q->shifted(shift);
}

int valuation_along(const LaurentPoly& f_in, const PrimeTorusDivisor& c) {
  if (f_in.is_zero()) throw std::domain_error("valuation of the zero polynomial is infinite");
  FieldPtr field = common_field(f_in.ring().field, c.xi.den());
  LaurentPoly f = f_in.lifted(field);
  const LaurentPoly h = LaurentPoly::binomial(f.ring(), c.u, c.xi);
  int m = 0;
  while (true) {
    auto q = exact_divide(f, h);
    if (!q) return m;
    f = std::move(*q);
    ++m;
  }
}

LaurentPoly gcd(const LaurentPoly& a_in, const LaurentPoly& b_in) {
  auto [a, b] = unify(a_in, b_in);
  if (a.is_zero() && b.is_zero()) return a;
  if (a.ring().laurent) return gcd_nonneg(strip_monomial(a), strip_monomial(b)).normalized();
  return gcd_nonneg(a, b);
}

CycloElem evaluate(const LaurentPoly& f, const TorsionPoint& point) {
  if (static_cast<int>(point.size()) != f.ring().nvars)
    throw std::invalid_argument("evaluation point has wrong dimension");
  std::int64_t m = f.ring().order();
  for (const auto& a : point) m = lcm64(m, a.den());
  FieldPtr field = CycloField::get(m);
  const std::int64_t step = m / f.ring().order();
  std::vector<Rational> acc(static_cast<std::size_t>(m));
  for (const auto& t : f.terms()) {
    std::int64_t k = 0;
    for (std::size_t i = 0; i < point.size(); ++i) {
      const std::int64_t ai = point[i].num() * (m / point[i].den()) % m;
      k = (k + (static_cast<std::int64_t>(t.exp[i]) % m + m) % m * ai) % m;
    }
    const auto& cs = t.coeff.coeffs();
    for (std::size_t j = 0; j < cs.size(); ++j) {
      if (cs[j] == 0) continue;
      acc[static_cast<std::size_t>((static_cast<std::int64_t>(j) * step + k) % m)] += cs[j];
    }
  }
  return CycloElem(field, std::move(acc));
}

LaurentPoly substitute_powers(const LaurentPoly& f, const IntVec& b) {
  if (static_cast<int>(b.size()) != f.ring().nvars)
    throw std::invalid_argument("substitution vector has wrong length");
  Ring one{1, true, f.ring().field, 't'};
  TermBuilder builder(one);
  for (const auto& t : f.terms()) {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < b.size(); ++i) d += b[i] * t.exp[i];
    builder.add(Exponent{static_cast<int>(d)}, t.coeff);
  }
  return builder.build();
}

// ---------------------------------------------------------------------------
// IdealGens

IdealGens::IdealGens(Ring ring, std::vector<LaurentPoly> gens) : ring_(std::move(ring)) {
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    if (!(g.ring() == ring_)) throw std::invalid_argument("generator lives in a different ring");
    LaurentPoly n = g.normalized();
    if (n.is_one()) {
      gens_ = {std::move(n)};
      return;
    }
    gens_.push_back(std::move(n));
  }
  std::sort(gens_.begin(), gens_.end());
  gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
}

IdealGens IdealGens::unit(const Ring& ring) {
  return IdealGens(ring, {LaurentPoly::constant(ring, Rational(1))});
}

bool IdealGens::contains_generator(const LaurentPoly& p) const {
  if (p.is_zero()) return true;
  const LaurentPoly n = p.normalized();
  return std::binary_search(gens_.begin(), gens_.end(), n);
}

bool IdealGens::vanishes_at(const TorsionPoint& point) const {
  for (const auto& g : gens_)
    if (!evaluate(g, point).is_zero()) return false;
  return true;
}

IdealGens IdealGens::lifted(const FieldPtr& bigger) const {
  std::vector<LaurentPoly> out;
  out.reserve(gens_.size());
  for (const auto& g : gens_) out.push_back(g.lifted(bigger));
  return IdealGens(ring_.with_field(bigger), std::move(out));
}

std::vector<std::string> IdealGens::to_strings() const {
  std::vector<std::string> out;
  out.reserve(gens_.size());
  for (const auto& g : gens_) out.push_back(g.to_string());
  return out;
}

std::optional<int> ideal_valuation(const IdealGens& ideal, const PrimeTorusDivisor& c) {
  if (ideal.is_zero()) return std::nullopt;
  int best = -1;
  for (const auto& g : ideal.gens()) {
    const int v = valuation_along(g, c);
    if (best < 0 || v < best) best = v;
    if (best == 0) break;
  }
  return best;
}

LaurentPoly gcd_generators(const IdealGens& ideal) {
  if (ideal.is_zero()) throw std::domain_error("gcd of the zero ideal is undefined");
  LaurentPoly g(ideal.ring());
  for (const auto& p : ideal.gens()) {
    g = gcd(g, p);
    if (g.is_one()) break;
  }
  return g;
}

IdealGens ideal_product(const IdealGens& a, const IdealGens& b) {
  if (!(a.ring() == b.ring())) throw std::invalid_argument("ideals live in different rings");
  std::vector<LaurentPoly> out;
  for (const auto& x : a.gens())
    for (const auto& y : b.gens()) out.push_back(x * y);
  return IdealGens(a.ring(), std::move(out));
}

}  // namespace detloci
