#pragma once
// Seeded random inputs shared by property tests and the acceptance runner.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "detloci/bsloci.hpp"
#include "detloci/complexes.hpp"
#include "detloci/smith.hpp"
#include "detloci/torus.hpp"

namespace detloci::testgen {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// Angle whose denominator divides n.
inline TorsionAngle random_angle(Rng& rng, std::int64_t n) { return TorsionAngle(uniform(rng, 0, n - 1), n); }

/// Primitive nonzero vector in [0, max]^r.
inline IntVec random_primitive(Rng& rng, std::size_t r, std::int64_t max) {
  while (true) {
    IntVec u(r);
    std::int64_t g = 0;
    for (auto& x : u) {
      x = uniform(rng, 0, max);
      g = std::gcd(g, x);
    }
    if (g == 1) return u;
  }
}

inline PrimeTorusDivisor random_divisor(Rng& rng, std::size_t r, std::int64_t max_u, std::int64_t order) {
  return PrimeTorusDivisor(random_primitive(rng, r, max_u), random_angle(rng, order));
}

inline TorsionPoint random_point(Rng& rng, std::size_t r, std::int64_t order) {
  TorsionPoint p;
  for (std::size_t i = 0; i < r; ++i) p.push_back(random_angle(rng, order));
  return p;
}

inline LaurentPoly random_binomial(Rng& rng, const Ring& ring, std::int64_t max_u = 2) {
  const PrimeTorusDivisor c = random_divisor(rng, static_cast<std::size_t>(ring.nvars), max_u, ring.order());
  return LaurentPoly::binomial(ring, c.u, c.xi);
}

/// Product of 1..max_factors random binomials, each to a power 1..max_power.
inline LaurentPoly random_binomial_product(Rng& rng, const Ring& ring, int max_factors = 2, int max_power = 2,
                                           std::int64_t max_u = 2) {
  LaurentPoly p = LaurentPoly::constant(ring, Rational(1));
  const int n = static_cast<int>(uniform(rng, 1, max_factors));
  for (int i = 0; i < n; ++i) p *= random_binomial(rng, ring, max_u).pow(static_cast<unsigned>(uniform(rng, 1, max_power)));
  return p;
}

/// Small random element: a sum of up to two monomials with small coefficients.
inline LaurentPoly random_small(Rng& rng, const Ring& ring, int max_exp = 1) {
  LaurentPoly p(ring);
  const int n = static_cast<int>(uniform(rng, 1, 2));
  for (int i = 0; i < n; ++i) {
    Exponent e(static_cast<std::size_t>(ring.nvars));
    for (auto& x : e) x = static_cast<int>(uniform(rng, ring.laurent ? -max_exp : 0, max_exp));
    std::int64_t c = 0;
    while (c == 0) c = uniform(rng, -2, 2);
    p += LaurentPoly::monomial(ring, e, CycloElem(ring.field, Rational(c)));
  }
  return p;
}

inline PolyMatrix elementary(const Ring& ring, std::size_t n, std::size_t row, std::size_t col, const LaurentPoly& c) {
  PolyMatrix e = identity_matrix(ring, n);
  e(row, col) = c;
  return e;
}

/// Replaces the basis of F^degree by g applied to it; g is elementary so its
/// inverse is obtained by negating the off-diagonal entry.
inline FreeComplex change_basis(const FreeComplex& f, int degree, std::size_t row, std::size_t col,
                                const LaurentPoly& c) {
  const Ring& ring = f.ring();
  const std::size_t n = static_cast<std::size_t>(f.rank(degree));
  const PolyMatrix g = elementary(ring, n, row, col, c);
  const PolyMatrix g_inv = elementary(ring, n, row, col, -c);
  std::map<int, PolyMatrix> d;
  for (int i = f.imin(); i < f.imax(); ++i) {
    PolyMatrix m = f.differential(i);
    if (i == degree) m = multiply(ring, m, g_inv);
    if (i + 1 == degree) m = multiply(ring, g, m);
    d.emplace(i, m);
  }
  return FreeComplex(ring, f.imin(), f.imax(), f.ranks(), d);
}

/// Permutes the basis of F^degree.
inline FreeComplex permute_basis(const FreeComplex& f, int degree, const std::vector<std::size_t>& perm) {
  const Ring& ring = f.ring();
  const std::size_t n = perm.size();
  PolyMatrix p = zero_matrix(ring, n, n), p_inv = zero_matrix(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    p(perm[i], i) = LaurentPoly::constant(ring, Rational(1));
    p_inv(i, perm[i]) = LaurentPoly::constant(ring, Rational(1));
  }
  std::map<int, PolyMatrix> d;
  for (int i = f.imin(); i < f.imax(); ++i) {
    PolyMatrix m = f.differential(i);
    if (i == degree) m = multiply(ring, m, p_inv);
    if (i + 1 == degree) m = multiply(ring, p, m);
    d.emplace(i, m);
  }
  return FreeComplex(ring, f.imin(), f.imax(), f.ranks(), d);
}

/// Trivial summand [R -1-> R] in degrees p, p+1, with its basis vectors
/// moved to random positions.
inline FreeComplex pad_at_random_position(Rng& rng, const FreeComplex& f, int p) {
  FreeComplex g = pad_trivial(f, p);
  for (int deg : {p, p + 1}) {
    const std::size_t n = static_cast<std::size_t>(g.rank(deg));
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::rotate(perm.begin() + static_cast<std::ptrdiff_t>(uniform(rng, 0, static_cast<std::int64_t>(n) - 1)),
                perm.end() - 1, perm.end());
    g = permute_basis(g, deg, perm);
  }
  return g;
}

struct ComplexOptions {
  int imin = 0;
  int imax = 2;
  int max_rank = 4;
  bool torsion = false;  // every piece has torsion cohomology
  bool koszul = true;    // allow codimension-two Koszul pieces
  int max_factors = 2;
  int max_power = 2;
  std::int64_t max_u = 2;
  int conjugations = 3;
};

/// Direct sum of two-term pieces [R -h-> R] (h a binomial product), Koszul
/// pieces on two binomials and, unless torsion is requested, free pieces
/// with zero differential; then a few elementary basis changes.
inline FreeComplex random_complex(Rng& rng, const Ring& ring, const ComplexOptions& opt = {}) {
  std::map<int, int> zero_ranks;
  for (int i = opt.imin; i <= opt.imax; ++i) zero_ranks[i] = 0;
  FreeComplex f(ring, opt.imin, opt.imax, zero_ranks);
  const int pieces = static_cast<int>(uniform(rng, 1, 4));
  for (int n = 0; n < pieces; ++n) {
    int kind = static_cast<int>(uniform(rng, 0, opt.torsion ? 1 : 2));
    if (kind == 1 && !opt.koszul) kind = 0;
    FreeComplex piece = f;
    if (kind == 0 || opt.imax - opt.imin < 2 || ring.nvars < 2) {
      const int p = static_cast<int>(uniform(rng, opt.imin, opt.imax - 1));
      PolyMatrix h = zero_matrix(ring, 1, 1);
      h(0, 0) = random_binomial_product(rng, ring, opt.max_factors, opt.max_power, opt.max_u);
      if (kind == 2 && !opt.torsion) h(0, 0) = LaurentPoly(ring);
      piece = two_term(ring, p, h);
    } else if (kind == 1) {
      const int p = static_cast<int>(uniform(rng, opt.imin, opt.imax - 2));
      LaurentPoly a = random_binomial(rng, ring, opt.max_u), b = random_binomial(rng, ring, opt.max_u);
      while (!gcd(a, b).is_constant()) b = random_binomial(rng, ring, opt.max_u);
      PolyMatrix d0 = zero_matrix(ring, 2, 1), d1 = zero_matrix(ring, 1, 2);
      d0(0, 0) = a;
      d0(1, 0) = b;
      d1(0, 0) = b;
      d1(0, 1) = -a;
      piece = FreeComplex(ring, p, p + 2, {{p, 1}, {p + 1, 2}, {p + 2, 1}}, {{p, d0}, {p + 1, d1}});
    } else {
      const int p = static_cast<int>(uniform(rng, opt.imin, opt.imax));
      piece = FreeComplex(ring, p, p, {{p, 1}});
    }
    FreeComplex candidate = direct_sum(f, piece);
    bool fits = true;
    for (int i = opt.imin; i <= opt.imax; ++i) fits = fits && candidate.rank(i) <= opt.max_rank;
    if (fits) f = candidate;
  }
  if (f.ranks().empty()) return random_complex(rng, ring, opt);
  for (int n = 0; n < opt.conjugations; ++n) {
    const int deg = static_cast<int>(uniform(rng, opt.imin, opt.imax));
    const std::int64_t rk = f.rank(deg);
    if (rk < 2) continue;
    const auto row = static_cast<std::size_t>(uniform(rng, 0, rk - 1));
    auto col = static_cast<std::size_t>(uniform(rng, 0, rk - 2));
    if (col >= row) ++col;
    f = change_basis(f, deg, row, col, random_small(rng, ring));
  }
  return f;
}

/// Jordan matrix with planted blocks (eigenvalue, size), conjugated by random
/// unimodular integer matrices.
struct PlantedJordan {
  ElemMatrix matrix;
  std::vector<std::pair<TorsionAngle, int>> blocks;
};

/// The field is Q(zeta_N) for N the lcm of the eigenvalue orders.
inline PlantedJordan random_jordan(Rng& rng, int max_size, std::int64_t max_order) {
  PlantedJordan out;
  const int n = static_cast<int>(uniform(rng, 1, max_size));
  int used = 0;
  std::vector<TorsionAngle> eigen;
  const int distinct = static_cast<int>(uniform(rng, 1, std::min(n, 2)));
  std::int64_t order = 1;
  while (static_cast<int>(eigen.size()) < distinct) {
    const std::int64_t q = uniform(rng, 1, max_order);
    const TorsionAngle xi(uniform(rng, 0, q - 1), q);
    if (std::find(eigen.begin(), eigen.end(), xi) != eigen.end()) continue;
    eigen.push_back(xi);
    order = std::lcm(order, xi.den());
  }
  const FieldPtr field = CycloField::get(order);
  while (used < n) {
    const int size = static_cast<int>(uniform(rng, 1, n - used));
    out.blocks.push_back({eigen[static_cast<std::size_t>(uniform(rng, 0, distinct - 1))], size});
    used += size;
  }
  const auto un = static_cast<std::size_t>(n);
  ElemMatrix j(un, un, CycloElem(field));
  std::size_t at = 0;
  for (const auto& [xi, size] : out.blocks) {
    for (int k = 0; k < size; ++k) {
      j(at + static_cast<std::size_t>(k), at + static_cast<std::size_t>(k)) = CycloElem::root(field, xi);
      if (k + 1 < size) j(at + static_cast<std::size_t>(k), at + static_cast<std::size_t>(k) + 1) = CycloElem(field, Rational(1));
    }
    at += static_cast<std::size_t>(size);
  }
  // P J P^{-1} with P a product of integer elementary matrices.
  for (int step = 0; step < 2 * n; ++step) {
    if (n < 2) break;
    const auto r = static_cast<std::size_t>(uniform(rng, 0, n - 1));
    auto c = static_cast<std::size_t>(uniform(rng, 0, n - 2));
    if (c >= r) ++c;
    const CycloElem m(field, Rational(uniform(rng, -2, 2)));
    // rows: row_r += m row_c ; columns: col_c -= m col_r
    for (std::size_t k = 0; k < un; ++k) j(r, k) += m * j(c, k);
    for (std::size_t k = 0; k < un; ++k) j(k, c) -= m * j(k, r);
  }
  out.matrix = j;
  return out;
}

/// Random locus with hyperplanes of small natural normals and positive c0.
inline HyperplaneLocus random_locus(Rng& rng, std::size_t r, int count, std::int64_t max_c = 4,
                                    std::int64_t max_c0 = 12) {
  HyperplaneLocus l(r);
  for (int i = 0; i < count; ++i) {
    IntVec c(r, 0);
    while (std::all_of(c.begin(), c.end(), [](std::int64_t x) { return x == 0; }))
      for (auto& x : c) x = uniform(rng, 0, max_c);
    l.add(AffineHyperplane(c, uniform(rng, 1, max_c0)), uniform(rng, 1, 2));
  }
  return l;
}

}  // namespace detloci::testgen
