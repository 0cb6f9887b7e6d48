#pragma once
// Univariate polynomials over Q(zeta_N), Smith normal form, Fitting ideals,
// determinantal factors and cohomology presentations of one-variable complexes.

#include <string>
#include <vector>

#include "detloci/complexes.hpp"

namespace detloci {

/// Dense polynomial in t over Q(zeta_N); coefficient i multiplies t^i.
class UPoly {
 public:
  UPoly() = default;  // placeholder without field
  explicit UPoly(FieldPtr field) : field_(std::move(field)) {}
  UPoly(FieldPtr field, std::vector<CycloElem> coeffs);

  static UPoly constant(const FieldPtr& field, const CycloElem& c);
  static UPoly constant(const FieldPtr& field, const Rational& q);
  static UPoly monomial(const FieldPtr& field, const CycloElem& c, std::size_t degree);
  /// t - e(xi); the field must contain e(xi).
  static UPoly linear_root(const FieldPtr& field, const TorsionAngle& xi);

  const FieldPtr& field() const { return field_; }
  const std::vector<CycloElem>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const CycloElem& lead() const { return c_.back(); }

  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator-() const;
  UPoly operator*(const UPoly& o) const;
  UPoly operator*(const CycloElem& c) const;
  UPoly& operator+=(const UPoly& o) { return *this = *this + o; }
  UPoly& operator-=(const UPoly& o) { return *this = *this - o; }

  UPoly monic() const;
  UPoly lifted(const FieldPtr& bigger) const;
  /// Removes the largest power of t dividing the polynomial.
  UPoly without_t_factor() const;

  bool operator==(const UPoly& o) const { return field_ == o.field_ && c_ == o.c_; }
  std::string to_string() const;

 private:
  void trim();
  FieldPtr field_;
  std::vector<CycloElem> c_;
};

struct UPolyDivision {
  UPoly quotient;
  UPoly remainder;
};
UPolyDivision divmod(const UPoly& a, const UPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);
/// Largest m with (t - e(xi))^m | p, lifting into a larger field if needed.
/// Throws on p = 0.
int root_multiplicity(const UPoly& p, const TorsionAngle& xi);

/// Conversion from a one-variable polynomial with no negative exponents.
UPoly to_upoly(const LaurentPoly& f);
LaurentPoly to_laurent(const UPoly& p, const Ring& ring);

using UMatrix = Matrix<UPoly>;

UMatrix uidentity(const FieldPtr& field, std::size_t n);
UMatrix umultiply(const UMatrix& a, const UMatrix& b, const FieldPtr& field);

/// U * M * V = diag(d); V * Vinv = I.  Nonzero d monic, d_1 | d_2 | ..., zeros last.
struct SmithForm {
  UMatrix u;
  UMatrix v;
  UMatrix v_inverse;
  std::vector<UPoly> d;
  std::size_t rank() const;
};

SmithForm smith_normal_form(const UMatrix& m, const FieldPtr& field);
/// Diagonal of the Smith form without the transforms.
std::vector<UPoly> invariant_factors(const UMatrix& m, const FieldPtr& field);
/// Exact re-check of U*M*V = D and V*Vinv = I.
bool verify_smith(const UMatrix& m, const SmithForm& s, const FieldPtr& field);

/// Presentation of a module as the cokernel of `matrix` (columns are
/// relations, rows are generators).  `laurent` marks modules over the
/// Laurent ring, whose Fitting ideals ignore powers of t.
struct Presentation {
  UMatrix matrix;
  FieldPtr field;
  bool laurent = false;
  std::size_t generators() const { return matrix.rows(); }
};

/// Monic generator of Fitt_k (zero polynomial for the zero ideal).
UPoly fitting_ideal(const Presentation& p, int k);

/// b_k generating I_{m-k}(tI - phi) for k = 0..m.
std::vector<UPoly> determinantal_factors(const ElemMatrix& phi);
UPoly minimal_polynomial(const ElemMatrix& phi);
int max_jordan_size(const ElemMatrix& phi, const TorsionAngle& xi);

/// Presentation of H^i of a one-variable complex.  Throws std::domain_error
/// naming the degree when H^i is not torsion.
Presentation cohomology_presentation(const FreeComplex& f, int i);

/// Valuations at t = e(xi) of the nonzero invariant factors of a one-variable
/// matrix, ascending.  Exact: computed over power series in t - e(xi) to a
/// precision above every minor degree.
std::vector<int> local_invariant_valuations(const PolyMatrix& m, const TorsionAngle& xi);

}  // namespace detloci
