#pragma once
// Sparse multivariate (Laurent) polynomials over Q(zeta_N), ideals given by
// canonical generator lists, and valuations along binomial divisors.

#include <optional>
#include <string>
#include <vector>

#include "detloci/arith.hpp"
#include "detloci/torus.hpp"

namespace detloci {

/// Polynomial ring descriptor.  `symbol` only affects printing ('t' for the
/// torus coordinate ring, 's' for the parameter space).
struct Ring {
  int nvars = 1;
  bool laurent = true;
  FieldPtr field;
  char symbol = 't';

  static Ring make(int nvars, bool laurent, std::int64_t order, char symbol = 't');

  std::int64_t order() const { return field->order(); }
  Ring with_field(FieldPtr f) const;
  bool operator==(const Ring& o) const {
    return nvars == o.nvars && laurent == o.laurent && field == o.field;
  }
};

using Exponent = std::vector<int>;

/// Graded-lexicographic comparison: total degree first, then lex.
int grlex_compare(const Exponent& a, const Exponent& b);

class LaurentPoly {
 public:
  struct Term {
    Exponent exp;
    CycloElem coeff;
  };

  LaurentPoly() = default;  // placeholder without ring
  explicit LaurentPoly(Ring ring);

  static LaurentPoly constant(const Ring& ring, const CycloElem& c);
  static LaurentPoly constant(const Ring& ring, const Rational& q);
  static LaurentPoly monomial(const Ring& ring, Exponent exp, const CycloElem& c);
  static LaurentPoly variable(const Ring& ring, int index);
  /// t^u - e(xi); the ring's field must contain e(xi).
  static LaurentPoly binomial(const Ring& ring, const IntVec& u, const TorsionAngle& xi);

  const Ring& ring() const { return ring_; }
  /// Terms in descending graded-lex order; coefficients are nonzero.
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  /// A nonzero constant times a monomial.
  bool is_monomial() const { return terms_.size() == 1; }
  const Term& leading() const { return terms_.front(); }

  int total_degree() const;
  int max_degree(int var) const;
  int min_degree(int var) const;
  bool involves(int var) const;
  Exponent min_exponents() const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator*(const CycloElem& c) const;
  LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
  LaurentPoly shifted(const Exponent& by) const;
  LaurentPoly pow(unsigned k) const;

  /// Leading coefficient 1; in Laurent rings also divided by the monomial
  /// t^{min exponents}, so the canonical representative of the unit class.
  LaurentPoly normalized() const;
  /// Same polynomial with coefficients viewed in a larger cyclotomic field.
  LaurentPoly lifted(const FieldPtr& bigger) const;

  bool operator==(const LaurentPoly& o) const;
  /// Total order used for canonical sorting of generator lists.
  std::strong_ordering operator<=>(const LaurentPoly& o) const;

  /// Expanded sum in the polynomial grammar, e.g. "t1*t2-e(1/3)".
  std::string to_string() const;

 private:
  friend class TermBuilder;
  Ring ring_;
  std::vector<Term> terms_;
};

/// Returns q with f = q*g in the ring of f, or nullopt.  Throws on g = 0.
std::optional<LaurentPoly> exact_divide(const LaurentPoly& f, const LaurentPoly& g);

/// Largest m with (t^u - xi)^m | f.  Throws on f = 0.
int valuation_along(const LaurentPoly& f, const PrimeTorusDivisor& c);

/// gcd computed recursively (content and primitive part one variable at a
/// time), then normalized.  gcd(0, 0) = 0.
LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);

/// Value at the torsion point (e(a_1), ..., e(a_r)), in Q(zeta_M) with
/// M = lcm of the ring order and the point denominators.
CycloElem evaluate(const LaurentPoly& f, const TorsionPoint& point);

/// Substitution t_i -> t^{b_i} into the one-variable Laurent ring.
LaurentPoly substitute_powers(const LaurentPoly& f, const IntVec& b);

/// Ideal given by a canonical generator list: zero generators dropped, each
/// normalized, sorted and deduplicated.  (0) is the empty list and (1) is
/// the single generator 1.
class IdealGens {
 public:
  explicit IdealGens(Ring ring, std::vector<LaurentPoly> gens = {});
  static IdealGens unit(const Ring& ring);
  static IdealGens zero(const Ring& ring) { return IdealGens(ring); }

  const Ring& ring() const { return ring_; }
  const std::vector<LaurentPoly>& gens() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const { return gens_.size() == 1 && gens_.front().is_one(); }
  bool contains_generator(const LaurentPoly& p) const;
  bool vanishes_at(const TorsionPoint& point) const;
  IdealGens lifted(const FieldPtr& bigger) const;

  bool operator==(const IdealGens& o) const { return ring_ == o.ring_ && gens_ == o.gens_; }
  std::vector<std::string> to_strings() const;

 private:
  Ring ring_;
  std::vector<LaurentPoly> gens_;
};

/// min over generators of valuation_along; nullopt (infinity) iff I = (0).
std::optional<int> ideal_valuation(const IdealGens& ideal, const PrimeTorusDivisor& c);

/// gcd of all generators.  Throws on I = (0).
LaurentPoly gcd_generators(const IdealGens& ideal);

/// Products of generators, canonicalized.
IdealGens ideal_product(const IdealGens& a, const IdealGens& b);

}  // namespace detloci
