#pragma once
// Bounded complexes of free modules over a (Laurent) polynomial ring, minors
// ideals of their differentials, and the determinantal ideals built from them.

#include <map>
#include <optional>
#include <vector>

#include "detloci/matrix.hpp"
#include "detloci/poly.hpp"

namespace detloci {

using PolyMatrix = Matrix<LaurentPoly>;
using ElemMatrix = Matrix<CycloElem>;

PolyMatrix zero_matrix(const Ring& ring, std::size_t rows, std::size_t cols);
PolyMatrix identity_matrix(const Ring& ring, std::size_t n);
PolyMatrix multiply(const Ring& ring, const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix block_diagonal(const Ring& ring, const PolyMatrix& a, const PolyMatrix& b);
bool is_zero_matrix(const PolyMatrix& m);

/// Largest matrix dimension accepted by minor enumeration.
inline constexpr std::size_t kMaxMinorDim = 12;

/// Ideal of all m x m minors.  m <= 0 gives (1), m > min(rows, cols) gives (0).
/// Throws std::length_error for matrices larger than 12 x 12.
IdealGens minors_ideal(const Ring& ring, const PolyMatrix& m, int size);

/// True when every size-m minor of `m` lies in `target`, certified by
/// recursive first-row Laplace expansion: each minor is a listed generator,
/// zero, or a combination of smaller minors that are themselves certified.
bool minors_certified_in(const Ring& ring, const PolyMatrix& m, int size, const IdealGens& target);

/// F^imin -> ... -> F^imax with d^i : F^i -> F^{i+1} of shape rank(i+1) x rank(i).
class FreeComplex {
 public:
  /// Missing differentials are zero.  Throws std::invalid_argument on shape
  /// mismatch or d^{i+1} d^i != 0.
  FreeComplex(Ring ring, int imin, int imax, std::map<int, int> ranks,
              std::map<int, PolyMatrix> differentials = {});

  const Ring& ring() const { return ring_; }
  int imin() const { return imin_; }
  int imax() const { return imax_; }
  int rank(int i) const;
  /// d^i; a zero matrix of the right shape when none was given.
  PolyMatrix differential(int i) const;
  const std::map<int, int>& ranks() const { return ranks_; }

 private:
  Ring ring_;
  int imin_;
  int imax_;
  std::map<int, int> ranks_;
  std::map<int, PolyMatrix> d_;
};

/// r_i(F) = sum_{l >= i} (-1)^{l-i} rank F^l.
int euler_truncation(const FreeComplex& f, int i);

/// I_{r_i - k}(d^{i-1}).
IdealGens cdf_ideal(const FreeComplex& f, int i, int k);
/// I_{rank F^i - k + 1}(d^{i-1} (+) d^i).
IdealGens jump_ideal(const FreeComplex& f, int i, int k);

/// t_j -> t^{b_j} into the one-variable Laurent ring.
FreeComplex base_change(const FreeComplex& f, const IntVec& b);

/// Complex concentrated in degrees (i, i+1) with the given differential.
FreeComplex two_term(const Ring& ring, int degree, const PolyMatrix& d);
FreeComplex direct_sum(const FreeComplex& a, const FreeComplex& b);
/// F (+) [R --1--> R] with the trivial summand in degrees (p, p+1).
FreeComplex pad_trivial(const FreeComplex& f, int p);

ElemMatrix evaluate_matrix(const PolyMatrix& m, const TorsionPoint& point, const FieldPtr& field);
std::size_t field_rank(ElemMatrix m);
/// dim H^l of F evaluated at the torsion point, for every l in range.
std::map<int, int> cohomology_dims(const FreeComplex& f, const TorsionPoint& point);

}  // namespace detloci
