#pragma once
// Determinantal-factor divisors, minimal divisors and orders along binomial
// prime divisors, and the one-parameter specialization pipeline.

#include <optional>
#include <vector>

#include "detloci/complexes.hpp"
#include "detloci/smith.hpp"
#include "detloci/torus.hpp"

namespace detloci {

inline constexpr int kDefaultBound = 4;

/// Every (u, xi) with |u|_inf <= bound and den(xi) <= bound * (max entry
/// degree) whose binomial divides the gcd of I^i_0 for some degree i.
/// Sorted and deduplicated.  Throws std::domain_error naming the degree when
/// some I^i_0 is the zero ideal.
std::vector<PrimeTorusDivisor> candidate_divisors(const FreeComplex& e, int bound = kDefaultBound);

struct DegreeSupport {
  int degree = 0;
  TorusDivisor delta0;
  TorusDivisor delta1;
  TorusDivisor minimal;  // delta0 - delta1
  bool effective = true;
};

struct SupportReport {
  std::vector<PrimeTorusDivisor> candidates;
  std::vector<DegreeSupport> degrees;

  /// Coefficient of c in M^i (0 when absent).
  std::int64_t ord(int degree, const PrimeTorusDivisor& c) const;
};

SupportReport support_report(const FreeComplex& e, const std::vector<PrimeTorusDivisor>& candidates);

struct GenericPoint {
  TorsionAngle lambda;
  IntVec b;
  /// (lambda^{b_1}, ..., lambda^{b_r}).
  TorsionPoint point() const;
};

/// First (lambda, b) in the enumeration order (|b| ascending, then b
/// lexicographic, entries in 1..bound; lambda ascending among the nonzero
/// (u.b)-th roots of xi) whose point lies on c and on no divisor in `avoid`.
/// Throws std::runtime_error "increase bound" when none exists.
GenericPoint generic_point_on_divisor(const PrimeTorusDivisor& c, const std::vector<PrimeTorusDivisor>& avoid,
                                      int bound = kDefaultBound);

struct SpecializationResult {
  std::int64_t ord = 0;
  int jordan = 0;
  GenericPoint point;
  /// The point avoids every other candidate divisor.
  bool generic = true;
  std::vector<PrimeTorusDivisor> candidates;
};

/// Picks a generic point on c automatically.
SpecializationResult specialization_multiplicity(const FreeComplex& e, const PrimeTorusDivisor& c, int degree,
                                                 int bound = kDefaultBound);
/// Uses the supplied specialization (lambda, b); lambda^{u.b} must equal xi.
SpecializationResult specialization_multiplicity(const FreeComplex& e, const PrimeTorusDivisor& c, int degree,
                                                 const GenericPoint& at, int bound = kDefaultBound);

/// Largest Jordan block at e(lambda) of the monodromy on H^i of base_change(e, b).
int specialized_jordan(const FreeComplex& e, int degree, const GenericPoint& at);

}  // namespace detloci
