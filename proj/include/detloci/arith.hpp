#pragma once
// Exact arithmetic for roots of unity and cyclotomic fields.
//
// A root of unity e^{2 pi i a/b} is a TorsionAngle (the reduced fraction a/b
// taken mod 1).  Elements of Q(zeta_N) are residues modulo the N-th
// cyclotomic polynomial with rational (GMP) coefficients.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace detloci {

using Integer = mpz_class;
using Rational = mpq_class;

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);
std::int64_t euler_phi(std::int64_t n);

/// Root of unity e^{2 pi i num/den}; always reduced with 0 <= num < den.
class TorsionAngle {
 public:
  TorsionAngle() = default;
  TorsionAngle(std::int64_t num, std::int64_t den);
  static TorsionAngle from_rational(const Rational& q);
  /// Accepts "a/b", "a" or "0".
  static TorsionAngle parse(const std::string& text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  Rational value() const { return Rational(num_, den_); }

  // Angles add when roots of unity multiply.
  TorsionAngle operator+(const TorsionAngle& o) const;
  TorsionAngle operator-(const TorsionAngle& o) const;
  TorsionAngle operator-() const;
  TorsionAngle times(std::int64_t k) const;

  bool operator==(const TorsionAngle& o) const = default;
  std::strong_ordering operator<=>(const TorsionAngle& o) const;

  std::string to_string() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Dense univariate polynomial over Q, coefficient i multiplies t^i.
/// The zero polynomial has no coefficients.
struct QPoly {
  std::vector<Rational> c;

  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs);
  static QPoly from_integers(const std::vector<Integer>& coeffs);
  static QPoly monomial(const Rational& coeff, std::size_t degree);

  bool is_zero() const { return c.empty(); }
  long degree() const { return static_cast<long>(c.size()) - 1; }
  const Rational& lead() const { return c.back(); }
  void trim();

  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  bool operator==(const QPoly& o) const { return c == o.c; }
};

struct QPolyDivision {
  QPoly quotient;
  QPoly remainder;
};
QPolyDivision divmod(const QPoly& a, const QPoly& b);
QPoly monic(const QPoly& p);
QPoly gcd(const QPoly& a, const QPoly& b);

/// Returns Phi_n with integer coefficients, lowest degree first.
std::vector<Integer> cyclotomic_poly(std::int64_t n);

/// The g distinct g-th roots of the root of unity xi, ascending by value.
std::vector<TorsionAngle> angle_roots(const TorsionAngle& xi, std::int64_t g);

/// Largest m with Phi_den(xi)^m dividing p.  Throws on p = 0.
int unit_root_multiplicity(const QPoly& p, const TorsionAngle& xi);

/// Rank over Q of a rational matrix (rows of equal length).
std::size_t rational_rank(std::vector<std::vector<Rational>> rows);

/// Q(zeta_N) presented as Q[z]/Phi_N.  Instances are shared and immutable.
class CycloField {
 public:
  static std::shared_ptr<const CycloField> get(std::int64_t order);

  std::int64_t order() const { return order_; }
  std::size_t degree() const { return degree_; }
  const std::vector<Integer>& modulus() const { return modulus_; }

  /// Reduces a coefficient vector of any length modulo Phi_N in place;
  /// the result has exactly degree() entries.
  void reduce(std::vector<Rational>& v) const;

  explicit CycloField(std::int64_t order);

 private:
  std::int64_t order_;
  std::size_t degree_;
  std::vector<Integer> modulus_;
  // Nonzero non-leading coefficients of Phi_N as (index, value).
  std::vector<std::pair<std::size_t, Integer>> tail_;
};

using FieldPtr = std::shared_ptr<const CycloField>;

/// Element of Q(zeta_N): canonical residue sum_j c_j z^j, j < phi(N).
class CycloElem {
 public:
  CycloElem() = default;  // unusable placeholder; elements need a field
  explicit CycloElem(FieldPtr field);
  CycloElem(FieldPtr field, const Rational& q);
  CycloElem(FieldPtr field, std::vector<Rational> coeffs);

  /// e^{2 pi i xi}; requires xi.den() | N.
  static CycloElem root(FieldPtr field, const TorsionAngle& xi);
  /// Power zeta_N^k for any integer k.
  static CycloElem zeta_power(FieldPtr field, std::int64_t k);

  const FieldPtr& field() const { return field_; }
  std::int64_t order() const { return field_->order(); }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;

  CycloElem operator+(const CycloElem& o) const;
  CycloElem operator-(const CycloElem& o) const;
  CycloElem operator-() const;
  CycloElem operator*(const CycloElem& o) const;
  CycloElem& operator+=(const CycloElem& o);
  CycloElem& operator-=(const CycloElem& o);
  CycloElem& operator*=(const CycloElem& o) { return *this = *this * o; }
  /// Throws std::domain_error on zero.
  CycloElem inverse() const;
  CycloElem operator/(const CycloElem& o) const { return *this * o.inverse(); }

  /// Same element viewed in Q(zeta_M); requires N | M.
  CycloElem lifted(const FieldPtr& bigger) const;

  bool operator==(const CycloElem& o) const;
  /// Total order on the power-basis coefficients (for canonical sorting).
  std::strong_ordering operator<=>(const CycloElem& o) const;

  /// Short expansion as a sum of q * e(angle): a single scaled root of unity
  /// when the element is one, otherwise the power basis.
  std::vector<std::pair<Rational, TorsionAngle>> root_terms() const;
  /// Sum of terms "q*e(a/b)" in the polynomial grammar.
  std::string to_string() const;

 private:
  FieldPtr field_;
  std::vector<Rational> c_;
};

/// Returns the field Q(zeta_lcm(a,b)).
FieldPtr common_field(const FieldPtr& a, std::int64_t other_order);

}  // namespace detloci
