#include "detloci/support.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace detloci {

namespace {

int max_entry_degree(const FreeComplex& e) {
  int best = 1;
  for (int i = e.imin(); i < e.imax(); ++i) {
    const PolyMatrix d = e.differential(i);
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t c = 0; c < d.cols(); ++c) {
        const LaurentPoly& p = d(r, c);
        if (p.is_zero()) continue;
        for (int v = 0; v < e.ring().nvars; ++v) best = std::max(best, p.max_degree(v) - p.min_degree(v));
      }
  }
  return best;
}

// Primitive nonzero vectors in [0, bound]^r, lexicographic.
std::vector<IntVec> primitive_exponents(int r, int bound) {
  std::vector<IntVec> out;
  IntVec u(static_cast<std::size_t>(r), 0);
  while (true) {
    std::size_t k = u.size();
    while (k > 0 && u[k - 1] == bound) u[--k] = 0;
    if (k == 0) break;
    ++u[k - 1];
    std::int64_t g = 0;
    for (auto x : u) g = std::gcd(g, x);
    if (g == 1) out.push_back(u);
  }
  return out;
}

// Vectors in [1, bound]^r with the given entry sum, lexicographic.
void compositions(std::size_t r, std::int64_t sum, std::int64_t bound, IntVec& prefix, std::vector<IntVec>& out) {
  if (prefix.size() + 1 == r) {
    if (sum >= 1 && sum <= bound) {
      prefix.push_back(sum);
      out.push_back(prefix);
      prefix.pop_back();
    }
    return;
  }
  const std::int64_t remaining = static_cast<std::int64_t>(r - prefix.size() - 1);
  for (std::int64_t x = 1; x <= bound && sum - x >= remaining; ++x) {
    prefix.push_back(x);
    compositions(r, sum - x, bound, prefix, out);
    prefix.pop_back();
  }
}

// On {t^u = xi} a monomial depends only on its class modulo Zu, so g vanishes there
// exactly when xi is a root of every class polynomial.  Returns their monic gcd.
UPoly class_gcd(const LaurentPoly& g, const IntVec& u) {
  std::size_t j0 = 0;
  while (u[j0] == 0) ++j0;
  std::map<IntVec, std::vector<const LaurentPoly::Term*>> classes;
  for (const auto& t : g.terms()) {
    IntVec key(u.size());
    for (std::size_t j = 0; j < u.size(); ++j)
      key[j] = static_cast<std::int64_t>(t.exp[j]) * u[j0] - static_cast<std::int64_t>(t.exp[j0]) * u[j];
    classes[key].push_back(&t);
  }
  const FieldPtr& field = g.ring().field;
  UPoly out(field);
  for (const auto& [key, terms] : classes) {
    int low = terms.front()->exp[j0];
    for (const auto* t : terms) low = std::min(low, t->exp[j0]);
    UPoly p(field);
    for (const auto* t : terms)
      p += UPoly::monomial(field, t->coeff, static_cast<std::size_t>((t->exp[j0] - low) / u[j0]));
    out = gcd(out, p);
    if (out.degree() == 0) break;
  }
  return out;
}

}  // namespace

std::vector<PrimeTorusDivisor> candidate_divisors(const FreeComplex& e, int bound) {
  if (bound < 1) throw std::invalid_argument("search bound must be positive");
  std::vector<LaurentPoly> gcds;
  for (int i = e.imin(); i <= e.imax(); ++i) {
    const IdealGens ideal = cdf_ideal(e, i, 0);
    if (ideal.is_zero())
      throw std::domain_error("complex is not torsion in degree " + std::to_string(i) + " (I^" +
                              std::to_string(i) + "_0 is zero)");
    if (ideal.is_unit()) continue;
    LaurentPoly g = gcd_generators(ideal);
    if (!g.is_constant()) gcds.push_back(std::move(g));
  }
  std::vector<PrimeTorusDivisor> out;
  if (gcds.empty()) return out;
  const std::int64_t max_den = static_cast<std::int64_t>(bound) * max_entry_degree(e);
  const std::int64_t n = e.ring().order();
  const Ring line{1, false, e.ring().field, 't'};
  for (const IntVec& u : primitive_exponents(e.ring().nvars, bound)) {
    std::vector<UPoly> restricted;
    std::vector<const LaurentPoly*> live;
    for (const auto& g : gcds) {
      UPoly p = class_gcd(g, u);
      if (p.degree() <= 0) continue;
      restricted.push_back(std::move(p));
      live.push_back(&g);
    }
    if (live.empty()) continue;
    std::vector<LaurentPoly> on_line;
    for (const auto& p : restricted) on_line.push_back(to_laurent(p, line));
    for (std::int64_t q = 1; q <= max_den; ++q) {
      // Degree of e(a/q) over the coefficient field.
      const long root_degree = static_cast<long>(euler_phi(lcm64(q, n)) / euler_phi(n));
      if (std::none_of(restricted.begin(), restricted.end(),
                       [&](const UPoly& p) { return p.degree() >= root_degree; }))
        continue;
      for (std::int64_t a = 0; a < q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        const PrimeTorusDivisor c(u, TorsionAngle(a, q));
        for (std::size_t w = 0; w < live.size(); ++w) {
          if (restricted[w].degree() < root_degree) continue;
          if (!evaluate(on_line[w], {c.xi}).is_zero()) continue;
          if (valuation_along(*live[w], c) > 0) {
            out.push_back(c);
            break;
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::int64_t SupportReport::ord(int degree, const PrimeTorusDivisor& c) const {
  for (const auto& d : degrees)
    if (d.degree == degree) return d.minimal.coefficient(c);
  return 0;
}

SupportReport support_report(const FreeComplex& e, const std::vector<PrimeTorusDivisor>& candidates) {
  SupportReport report;
  report.candidates = candidates;
  std::sort(report.candidates.begin(), report.candidates.end());
  if (std::adjacent_find(report.candidates.begin(), report.candidates.end()) != report.candidates.end())
    throw std::invalid_argument("candidate divisors must be distinct");
  for (int i = e.imin(); i <= e.imax(); ++i) {
    DegreeSupport deg;
    deg.degree = i;
    const IdealGens i0 = cdf_ideal(e, i, 0);
    if (i0.is_zero())
      throw std::domain_error("infinite valuation: I^" + std::to_string(i) + "_0 is the zero ideal");
    if (!i0.is_unit()) {
      const IdealGens i1 = cdf_ideal(e, i, 1);
      for (const auto& c : report.candidates) {
        const int v0 = *ideal_valuation(i0, c);
        if (v0 == 0) continue;
        deg.delta0.add(c, v0);
        deg.delta1.add(c, *ideal_valuation(i1, c));
      }
    }
    deg.minimal = deg.delta0 - deg.delta1;
    deg.effective = deg.minimal.is_effective();
    report.degrees.push_back(std::move(deg));
  }
  return report;
}

TorsionPoint GenericPoint::point() const {
  TorsionPoint p;
  p.reserve(b.size());
  for (auto x : b) p.push_back(lambda.times(x));
  return p;
}

GenericPoint generic_point_on_divisor(const PrimeTorusDivisor& c, const std::vector<PrimeTorusDivisor>& avoid,
                                      int bound) {
  if (std::find(avoid.begin(), avoid.end(), c) != avoid.end())
    throw std::invalid_argument("divisor " + c.to_string() + " is in its own avoid list");
  if (bound < 1) throw std::invalid_argument("search bound must be positive");
  const std::size_t r = c.dim();
  for (std::int64_t total = static_cast<std::int64_t>(r); total <= static_cast<std::int64_t>(r) * bound; ++total) {
    std::vector<IntVec> bs;
    IntVec prefix;
    compositions(r, total, bound, prefix, bs);
    for (const auto& b : bs) {
      std::int64_t w = 0;
      for (std::size_t j = 0; j < r; ++j) w += c.u[j] * b[j];
      for (const auto& lambda : angle_roots(c.xi, w)) {
        if (lambda.is_zero()) continue;
        GenericPoint gp{lambda, b};
        const TorsionPoint p = gp.point();
        if (!c.contains(p)) continue;
        const bool clear =
            std::none_of(avoid.begin(), avoid.end(), [&](const PrimeTorusDivisor& x) { return x.contains(p); });
        if (clear) return gp;
      }
    }
  }
  throw std::runtime_error("no generic point on " + c.to_string() + " within bound " + std::to_string(bound) +
                           "; increase bound");
}

int specialized_jordan(const FreeComplex& e, int degree, const GenericPoint& at) {
  const FreeComplex special = base_change(e, at.b);
  // Torsion H^i is the torsion of coker d_{i-1}, so its annihilator is the last invariant factor.
  const auto before = local_invariant_valuations(special.differential(degree - 1), at.lambda);
  const auto after = local_invariant_valuations(special.differential(degree), at.lambda);
  if (before.size() + after.size() != static_cast<std::size_t>(special.rank(degree)))
    throw std::domain_error("cohomology in degree " + std::to_string(degree) + " is not torsion");
  return before.empty() ? 0 : before.back();
}

namespace {

SpecializationResult specialize_at(const FreeComplex& e, const PrimeTorusDivisor& c, int degree,
                                   std::vector<PrimeTorusDivisor> candidates, const GenericPoint& at) {
  SpecializationResult out;
  out.candidates = candidates;
  if (std::find(candidates.begin(), candidates.end(), c) == candidates.end()) candidates.push_back(c);
  out.ord = support_report(e, candidates).ord(degree, c);
  out.point = at;
  const TorsionPoint p = at.point();
  out.generic = std::none_of(out.candidates.begin(), out.candidates.end(),
                             [&](const PrimeTorusDivisor& x) { return !(x == c) && x.contains(p); });
  out.jordan = specialized_jordan(e, degree, at);
  return out;
}

}  // namespace

SpecializationResult specialization_multiplicity(const FreeComplex& e, const PrimeTorusDivisor& c, int degree,
                                                 int bound) {
  auto candidates = candidate_divisors(e, bound);
  std::vector<PrimeTorusDivisor> others;
  for (const auto& x : candidates)
    if (!(x == c)) others.push_back(x);
  const GenericPoint at = generic_point_on_divisor(c, others, bound);
  return specialize_at(e, c, degree, std::move(candidates), at);
}

SpecializationResult specialization_multiplicity(const FreeComplex& e, const PrimeTorusDivisor& c, int degree,
                                                 const GenericPoint& at, int bound) {
  if (!c.contains(at.point()))
    throw std::invalid_argument("specialization point does not lie on " + c.to_string());
  return specialize_at(e, c, degree, candidate_divisors(e, bound), at);
}

}  // namespace detloci
