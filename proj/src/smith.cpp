#include "detloci/smith.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace detloci {

// ---------------------------------------------------------------------------
// UPoly

UPoly::UPoly(FieldPtr field, std::vector<CycloElem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  trim();
}

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::constant(const FieldPtr& field, const CycloElem& c) { return UPoly(field, {c}); }

UPoly UPoly::constant(const FieldPtr& field, const Rational& q) { return constant(field, CycloElem(field, q)); }

UPoly UPoly::monomial(const FieldPtr& field, const CycloElem& c, std::size_t degree) {
  std::vector<CycloElem> v(degree + 1, CycloElem(field));
  v[degree] = c;
  return UPoly(field, std::move(v));
}

UPoly UPoly::linear_root(const FieldPtr& field, const TorsionAngle& xi) {
  return UPoly(field, {-CycloElem::root(field, xi), CycloElem(field, Rational(1))});
}

UPoly UPoly::operator+(const UPoly& o) const {
  std::vector<CycloElem> v(std::max(c_.size(), o.c_.size()), CycloElem(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
  return UPoly(field_, std::move(v));
}

UPoly UPoly::operator-(const UPoly& o) const {
  std::vector<CycloElem> v(std::max(c_.size(), o.c_.size()), CycloElem(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] -= o.c_[i];
  return UPoly(field_, std::move(v));
}

UPoly UPoly::operator-() const {
  UPoly out = *this;
  for (auto& x : out.c_) x = -x;
  return out;
}

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return UPoly(field_);
  std::vector<CycloElem> v(c_.size() + o.c_.size() - 1, CycloElem(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      if (!o.c_[j].is_zero()) v[i + j] += c_[i] * o.c_[j];
  }
  return UPoly(field_, std::move(v));
}

UPoly UPoly::operator*(const CycloElem& c) const {
  UPoly out = *this;
  for (auto& x : out.c_) x = x * c;
  out.trim();
  return out;
}

UPoly UPoly::monic() const {
  if (is_zero() || lead().is_one()) return *this;
  return *this * lead().inverse();
}

UPoly UPoly::lifted(const FieldPtr& bigger) const {
  if (bigger == field_) return *this;
  std::vector<CycloElem> v;
  v.reserve(c_.size());
  for (const auto& x : c_) v.push_back(x.lifted(bigger));
  return UPoly(bigger, std::move(v));
}

UPoly UPoly::without_t_factor() const {
  std::size_t k = 0;
  while (k < c_.size() && c_[k].is_zero()) ++k;
  return UPoly(field_, std::vector<CycloElem>(c_.begin() + static_cast<long>(k), c_.end()));
}

std::string UPoly::to_string() const {
  Ring ring{1, false, field_, 't'};
  return to_laurent(*this, ring).to_string();
}

UPolyDivision divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const FieldPtr& field = a.field();
  if (a.degree() < b.degree()) return {UPoly(field), a};
  std::vector<CycloElem> r = a.coeffs();
  std::vector<CycloElem> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), CycloElem(field));
  const CycloElem inv = b.lead().inverse();
  const auto& bc = b.coeffs();
  for (long k = static_cast<long>(q.size()) - 1; k >= 0; --k) {
    CycloElem coef = r[static_cast<std::size_t>(k) + bc.size() - 1] * inv;
    if (coef.is_zero()) continue;
    for (std::size_t j = 0; j < bc.size(); ++j)
      if (!bc[j].is_zero()) r[static_cast<std::size_t>(k) + j] -= coef * bc[j];
    q[static_cast<std::size_t>(k)] = std::move(coef);
  }
  return {UPoly(field, std::move(q)), UPoly(field, std::move(r))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).remainder;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

int root_multiplicity(const UPoly& p, const TorsionAngle& xi) {
  if (p.is_zero()) throw std::domain_error("zero polynomial has infinite multiplicity");
  FieldPtr field = common_field(p.field(), xi.den());
  UPoly cur = p.lifted(field);
  const UPoly lin = UPoly::linear_root(field, xi);
  int m = 0;
  while (cur.degree() >= 1) {
    auto [q, r] = divmod(cur, lin);
    if (!r.is_zero()) break;
    cur = std::move(q);
    ++m;
  }
  return m;
}

UPoly to_upoly(const LaurentPoly& f) {
  if (f.ring().nvars != 1) throw std::invalid_argument("expected a one-variable polynomial");
  const FieldPtr& field = f.ring().field;
  if (f.is_zero()) return UPoly(field);
  if (f.min_degree(0) < 0) throw std::invalid_argument("negative exponent in a univariate polynomial");
  std::vector<CycloElem> v(static_cast<std::size_t>(f.max_degree(0)) + 1, CycloElem(field));
  for (const auto& t : f.terms()) v[static_cast<std::size_t>(t.exp[0])] = t.coeff;
  return UPoly(field, std::move(v));
}

LaurentPoly to_laurent(const UPoly& p, const Ring& ring) {
  LaurentPoly out(ring);
  const auto& c = p.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c[i].is_zero()) out += LaurentPoly::monomial(ring, Exponent{static_cast<int>(i)}, c[i].lifted(ring.field));
  return out;
}

// ---------------------------------------------------------------------------
// Smith normal form

UMatrix uidentity(const FieldPtr& field, std::size_t n) {
  UMatrix out(n, n, UPoly(field));
  for (std::size_t i = 0; i < n; ++i) out(i, i) = UPoly::constant(field, Rational(1));
  return out;
}

UMatrix umultiply(const UMatrix& a, const UMatrix& b, const FieldPtr& field) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  UMatrix out(a.rows(), b.cols(), UPoly(field));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

std::size_t SmithForm::rank() const {
  std::size_t r = 0;
  for (const auto& x : d)
    if (!x.is_zero()) ++r;
  return r;
}

namespace {

struct Reducer {
  UMatrix a, u, v, vinv;
  FieldPtr field;
  bool track = true;

  void scale_row(std::size_t t, const CycloElem& c) {
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(t, j).is_zero()) a(t, j) = a(t, j) * c;
    if (!track) return;
    for (std::size_t j = 0; j < u.cols(); ++j)
      if (!u(t, j).is_zero()) u(t, j) = u(t, j) * c;
  }

  void add_row_multiple(std::size_t target, std::size_t source, const UPoly& q) {
    // row_target -= q * row_source
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(source, j).is_zero()) a(target, j) -= q * a(source, j);
    if (!track) return;
    for (std::size_t j = 0; j < u.cols(); ++j)
      if (!u(source, j).is_zero()) u(target, j) -= q * u(source, j);
  }

  void add_col_multiple(std::size_t target, std::size_t source, const UPoly& q) {
    // col_target -= q * col_source; V^{-1} row_source += q * row_target
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (!a(i, source).is_zero()) a(i, target) -= q * a(i, source);
    if (!track) return;
    for (std::size_t i = 0; i < v.rows(); ++i)
      if (!v(i, source).is_zero()) v(i, target) -= q * v(i, source);
    for (std::size_t j = 0; j < vinv.cols(); ++j)
      if (!vinv(target, j).is_zero()) vinv(source, j) += q * vinv(target, j);
  }

  void swap_cols(std::size_t x, std::size_t y) {
    a.swap_cols(x, y);
    if (!track) return;
    v.swap_cols(x, y);
    vinv.swap_rows(x, y);
  }

  void swap_rows(std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    if (track) u.swap_rows(x, y);
  }
};

void reduce(Reducer& r) {
  const FieldPtr& field = r.field;
  const std::size_t rows = r.a.rows(), cols = r.a.cols();
  const std::size_t s = std::min(rows, cols);
  std::size_t t = 0;
  for (; t < s; ++t) {
    bool found = true;
    while (true) {
      // Lowest-degree nonzero pivot in the trailing block, ties by (row, col).
      long best = -1;
      std::size_t pi = 0, pj = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          const long d = r.a(i, j).degree();
          if (d >= 0 && (best < 0 || d < best)) {
            best = d;
            pi = i;
            pj = j;
          }
        }
      if (best < 0) {
        found = false;
        break;
      }
      if (pi != t) r.swap_rows(pi, t);
      if (pj != t) r.swap_cols(pj, t);
      if (!r.a(t, t).lead().is_one()) r.scale_row(t, r.a(t, t).lead().inverse());
      const UPoly pivot = r.a(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (r.a(i, t).is_zero()) continue;
        auto [q, rem] = divmod(r.a(i, t), pivot);
        r.add_row_multiple(i, t, q);
        if (!rem.is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (r.a(t, j).is_zero()) continue;
        auto [q, rem] = divmod(r.a(t, j), pivot);
        r.add_col_multiple(j, t, q);
        if (!rem.is_zero()) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (r.a(i, j).is_zero()) continue;
          if (!divmod(r.a(i, j), pivot).remainder.is_zero()) {
            // row_t += row_i brings the offending entry into the pivot row.
            r.add_row_multiple(t, i, UPoly::constant(field, Rational(-1)));
            divides = false;
            break;
          }
        }
      if (divides) break;
    }
    if (!found) break;
    if (!r.a(t, t).lead().is_one()) r.scale_row(t, r.a(t, t).lead().inverse());
  }
}

}  // namespace

std::vector<UPoly> invariant_factors(const UMatrix& m, const FieldPtr& field) {
  Reducer r{m, UMatrix(0, 0, UPoly(field)), UMatrix(0, 0, UPoly(field)), UMatrix(0, 0, UPoly(field)), field, false};
  reduce(r);
  std::vector<UPoly> d;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) d.push_back(r.a(i, i));
  return d;
}

SmithForm smith_normal_form(const UMatrix& m, const FieldPtr& field) {
  const std::size_t rows = m.rows(), cols = m.cols();
  Reducer r{m, uidentity(field, rows), uidentity(field, cols), uidentity(field, cols), field};
  reduce(r);
  const std::size_t s = std::min(rows, cols);
  SmithForm out;
  out.d.reserve(s);
  for (std::size_t i = 0; i < s; ++i) out.d.push_back(r.a(i, i));
  out.u = std::move(r.u);
  out.v = std::move(r.v);
  out.v_inverse = std::move(r.vinv);
  return out;
}

bool verify_smith(const UMatrix& m, const SmithForm& s, const FieldPtr& field) {
  UMatrix prod = umultiply(umultiply(s.u, m, field), s.v, field);
  for (std::size_t i = 0; i < prod.rows(); ++i)
    for (std::size_t j = 0; j < prod.cols(); ++j) {
      const UPoly expected = i == j ? s.d[i] : UPoly(field);
      if (!(prod(i, j) == expected)) return false;
    }
  if (!(umultiply(s.v, s.v_inverse, field) == uidentity(field, m.cols()))) return false;
  bool seen_zero = false;
  for (std::size_t i = 0; i < s.d.size(); ++i) {
    if (s.d[i].is_zero()) {
      seen_zero = true;
      continue;
    }
    if (seen_zero || !s.d[i].lead().is_one()) return false;
    if (i > 0 && !divmod(s.d[i], s.d[i - 1]).remainder.is_zero()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Fitting ideals and determinantal factors

UPoly fitting_ideal(const Presentation& p, int k) {
  const int n = static_cast<int>(p.generators());
  if (k < 0) return UPoly(p.field);
  if (k >= n) return UPoly::constant(p.field, Rational(1));
  const int size = n - k;
  if (static_cast<std::size_t>(size) > p.matrix.cols()) return UPoly(p.field);
  const std::vector<UPoly> d = invariant_factors(p.matrix, p.field);
  UPoly prod = UPoly::constant(p.field, Rational(1));
  for (int i = 0; i < size; ++i) prod = prod * d[static_cast<std::size_t>(i)];
  if (p.laurent) prod = prod.without_t_factor();
  return prod.monic();
}

std::vector<UPoly> determinantal_factors(const ElemMatrix& phi) {
  if (phi.rows() != phi.cols()) throw std::invalid_argument("determinantal factors need a square matrix");
  const std::size_t m = phi.rows();
  if (m == 0) return {};
  const FieldPtr field = phi(0, 0).field();
  UMatrix a(m, m, UPoly(field));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<CycloElem> c{-phi(i, j)};
      if (i == j) c.push_back(CycloElem(field, Rational(1)));
      a(i, j) = UPoly(field, std::move(c));
    }
  Presentation p{a, field, false};
  std::vector<UPoly> out;
  for (std::size_t k = 0; k <= m; ++k) out.push_back(fitting_ideal(p, static_cast<int>(k)));
  return out;
}

UPoly minimal_polynomial(const ElemMatrix& phi) {
  auto b = determinantal_factors(phi);
  if (b.empty()) throw std::invalid_argument("empty matrix has no minimal polynomial");
  return divmod(b[0], b[1]).quotient;
}

int max_jordan_size(const ElemMatrix& phi, const TorsionAngle& xi) {
  return root_multiplicity(minimal_polynomial(phi), xi);
}

// ---------------------------------------------------------------------------
// Cohomology presentations

namespace {

// The matrix times a power of t making every entry a polynomial.
UMatrix clear_denominators(const PolyMatrix& m, const FieldPtr& field) {
  int shift = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) shift = std::max(shift, -m(i, j).min_degree(0));
  UMatrix out(m.rows(), m.cols(), UPoly(field));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) out(i, j) = to_upoly(m(i, j).shifted(Exponent{shift}));
  return out;
}

}  // namespace

Presentation cohomology_presentation(const FreeComplex& f, int i) {
  if (f.ring().nvars != 1) throw std::invalid_argument("cohomology presentation needs a one-variable complex");
  const FieldPtr& field = f.ring().field;
  const UMatrix before = clear_denominators(f.differential(i - 1), field);
  const UMatrix after = clear_denominators(f.differential(i), field);
  const SmithForm s_after = smith_normal_form(after, field);
  const std::size_t rank_after = s_after.rank();
  const auto d_before = invariant_factors(before, field);
  const auto rank_before = static_cast<std::size_t>(
      std::count_if(d_before.begin(), d_before.end(), [](const UPoly& x) { return !x.is_zero(); }));
  const std::size_t n = static_cast<std::size_t>(f.rank(i));
  if (rank_before + rank_after != n)
    throw std::domain_error("cohomology in degree " + std::to_string(i) + " is not torsion");
  const UMatrix coords = umultiply(s_after.v_inverse, before, field);
  UMatrix p(n - rank_after, before.cols(), UPoly(field));
  for (std::size_t r = rank_after; r < n; ++r)
    for (std::size_t c = 0; c < before.cols(); ++c) p(r - rank_after, c) = coords(r, c);
  return Presentation{std::move(p), field, f.ring().laurent};
}

// ---------------------------------------------------------------------------
// Local invariant factors

namespace {

using Series = std::vector<CycloElem>;

std::size_t series_valuation(const Series& a) {
  std::size_t v = 0;
  while (v < a.size() && a[v].is_zero()) ++v;
  return v;
}

// Coefficients of p in powers of s = t - lambda, truncated to n terms.
Series taylor(const UPoly& p, const CycloElem& lambda, std::size_t n) {
  const FieldPtr& field = lambda.field();
  Series out(n, CycloElem(field));
  const auto& c = p.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) {
    // out = out * (s + lambda) + c_k
    for (std::size_t j = n; j-- > 0;) {
      out[j] = out[j] * lambda;
      if (j > 0) out[j] += out[j - 1];
    }
    out[0] += c[k].lifted(field);
  }
  return out;
}

// a / b for a unit series b, truncated to n terms.
Series divide_unit(const Series& a, const Series& b, std::size_t n) {
  const CycloElem inv = b[0].inverse();
  Series q(n, CycloElem(b[0].field()));
  for (std::size_t k = 0; k < n; ++k) {
    CycloElem acc = k < a.size() ? a[k] : CycloElem(b[0].field());
    for (std::size_t j = 1; j <= k && j < b.size(); ++j) acc -= b[j] * q[k - j];
    q[k] = acc * inv;
  }
  return q;
}

}  // namespace

std::vector<int> local_invariant_valuations(const PolyMatrix& m, const TorsionAngle& xi) {
  const std::size_t rows = m.rows(), cols = m.cols();
  if (rows == 0 || cols == 0) return {};
  const FieldPtr& base = m(0, 0).ring().field;
  const UMatrix a = clear_denominators(m, base);
  // Any nonzero minor has degree at most the sum of the largest column degrees.
  std::vector<long> col_degree(cols, 0);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) col_degree[j] = std::max(col_degree[j], a(i, j).degree());
  std::sort(col_degree.rbegin(), col_degree.rend());
  long bound = 0;
  for (std::size_t j = 0; j < std::min(rows, cols); ++j) bound += col_degree[j];
  const std::size_t n = static_cast<std::size_t>(bound) + 1;

  const FieldPtr field = common_field(base, xi.den());
  const CycloElem lambda = CycloElem::root(field, xi);
  std::vector<std::vector<Series>> w(rows, std::vector<Series>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) w[i][j] = taylor(a(i, j).lifted(field), lambda, n);

  std::vector<int> out;
  std::vector<std::size_t> live_rows(rows), live_cols(cols);
  for (std::size_t i = 0; i < rows; ++i) live_rows[i] = i;
  for (std::size_t j = 0; j < cols; ++j) live_cols[j] = j;
  while (!live_rows.empty() && !live_cols.empty()) {
    std::size_t best = n, pr = 0, pc = 0;
    for (std::size_t r = 0; r < live_rows.size(); ++r)
      for (std::size_t c = 0; c < live_cols.size(); ++c) {
        const std::size_t v = series_valuation(w[live_rows[r]][live_cols[c]]);
        if (v < best) {
          best = v;
          pr = r;
          pc = c;
        }
      }
    if (best == n) break;
    out.push_back(static_cast<int>(best));
    const std::size_t pi = live_rows[pr], pj = live_cols[pc];
    const Series unit(w[pi][pj].begin() + static_cast<std::ptrdiff_t>(best), w[pi][pj].end());
    for (std::size_t r : live_rows) {
      if (r == pi) continue;
      const Series& e = w[r][pj];
      const std::size_t v = series_valuation(e);
      if (v == n) continue;
      // row_r -= (e / pivot) row_pi; the quotient has valuation v - best
      const Series shifted(e.begin() + static_cast<std::ptrdiff_t>(best), e.end());
      const Series f = divide_unit(shifted, unit, n - best);
      for (std::size_t c : live_cols) {
        const Series& src = w[pi][c];
        Series& dst = w[r][c];
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t j = 0; j <= k && j < f.size(); ++j)
            if (!f[j].is_zero() && !src[k - j].is_zero()) dst[k] -= f[j] * src[k - j];
      }
    }
    live_rows.erase(live_rows.begin() + static_cast<std::ptrdiff_t>(pr));
    live_cols.erase(live_cols.begin() + static_cast<std::ptrdiff_t>(pc));
  }
  return out;
}

}  // namespace detloci
