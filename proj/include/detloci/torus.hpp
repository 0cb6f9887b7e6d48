#pragma once
// Torsion-translated subtori of (C*)^r, prime torus divisors {t^u = xi},
// formal divisors, and the exponential image of affine hyperplanes.

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "detloci/arith.hpp"

namespace detloci {

using IntVec = std::vector<std::int64_t>;
using TorsionPoint = std::vector<TorsionAngle>;

/// {c . s + c0 = 0} with c in N^r, c != 0.
struct AffineHyperplane {
  IntVec c;
  std::int64_t c0 = 0;

  AffineHyperplane() = default;
  AffineHyperplane(IntVec normal, std::int64_t constant);

  std::size_t dim() const { return c.size(); }
  std::int64_t normal_sum() const;
  /// True when c0 > 0.
  bool positive_normal() const { return c0 > 0; }
  /// Representative of the zero set: (c, c0) divided by gcd(c, c0).
  AffineHyperplane primitive() const;
  bool same_set(const AffineHyperplane& o) const { return primitive() == o.primitive(); }
  /// Value of c . s + c0 at a rational point.
  Rational evaluate(const std::vector<Rational>& point) const;

  auto operator<=>(const AffineHyperplane&) const = default;
  std::string to_string(char symbol = 's') const;
};

/// Irreducible hypersurface {t^u = e^{2 pi i xi}}, u primitive in N^r.
struct PrimeTorusDivisor {
  IntVec u;
  TorsionAngle xi;

  PrimeTorusDivisor() = default;
  PrimeTorusDivisor(IntVec exponent, TorsionAngle angle);

  std::size_t dim() const { return u.size(); }
  bool contains(const TorsionPoint& point) const;
  PrimeTorusDivisor conjugate() const { return PrimeTorusDivisor(u, -xi); }

  auto operator<=>(const PrimeTorusDivisor&) const = default;
  std::string to_string() const;
};

/// Formal Z-combination of prime torus divisors; zero coefficients are never stored.
class TorusDivisor {
 public:
  TorusDivisor() = default;

  void add(const PrimeTorusDivisor& c, std::int64_t mult);
  std::int64_t coefficient(const PrimeTorusDivisor& c) const;
  const std::map<PrimeTorusDivisor, std::int64_t>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  bool is_effective() const;

  TorusDivisor operator+(const TorusDivisor& o) const;
  TorusDivisor operator-(const TorusDivisor& o) const;
  TorusDivisor operator-() const;
  std::set<PrimeTorusDivisor> reduced_support() const;

  bool operator==(const TorusDivisor&) const = default;

 private:
  std::map<PrimeTorusDivisor, std::int64_t> terms_;
};

/// Common zero set of t^{u_j} = xi_j with linearly independent u_j.
class TranslatedSubtorus {
 public:
  struct Equation {
    IntVec u;
    TorsionAngle xi;
    auto operator<=>(const Equation&) const = default;
  };

  TranslatedSubtorus(std::size_t dim, std::vector<Equation> equations);

  std::size_t dim() const { return dim_; }
  std::size_t codimension() const { return equations_.size(); }
  const std::vector<Equation>& equations() const { return equations_; }
  bool contains(const TorsionPoint& point) const;
  bool operator==(const TranslatedSubtorus& o) const = default;

 private:
  std::size_t dim_;
  std::vector<Equation> equations_;
};

/// Exp({c.s + c0 = 0}) = {t^{c/g} = e^{-2 pi i c0/g}}, g = gcd(c).
PrimeTorusDivisor exp_hyperplane(const AffineHyperplane& h);

/// c / gcd(c).
IntVec slope(const AffineHyperplane& h);
/// Every normal entry nonzero.
bool is_oblique(const AffineHyperplane& h);

/// Preimage of {t^u = xi} under tau_M : (C*)^p -> (C*)^r,
/// lambda -> (prod_k lambda_k^{m_k1}, ..., prod_k lambda_k^{m_kr}).
/// M is given as p rows of length r.
std::vector<PrimeTorusDivisor> tau_preimage(const std::vector<IntVec>& m, const PrimeTorusDivisor& c);

/// Image of a torsion point under tau_M.
TorsionPoint tau_image(const std::vector<IntVec>& m, const TorsionPoint& lambda);

/// rank(M) = p over Q and nonzero column sums on every column flagged in nonempty_mask.
bool nondegeneracy_check(const std::vector<IntVec>& m, const std::vector<bool>& nonempty_mask);

}  // namespace detloci
