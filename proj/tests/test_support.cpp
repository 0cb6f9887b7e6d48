#include <doctest.h>

#include <map>
#include <set>

#include "detloci/io.hpp"
#include "detloci/support.hpp"
#include "generators.hpp"

using namespace detloci;

namespace {

const Ring R2 = Ring::make(2, true, 3);
const std::string kH = "t1*t2-e(1/3)";
const PrimeTorusDivisor kC({1, 1}, TorsionAngle(1, 3));

LaurentPoly P(const std::string& s, const Ring& ring = R2) { return parse_poly(s, ring); }

FreeComplex single(const LaurentPoly& h) {
  PolyMatrix m = zero_matrix(h.ring(), 1, 1);
  m(0, 0) = h;
  return two_term(h.ring(), 0, m);
}

FreeComplex diag_h() {
  const LaurentPoly h = P(kH);
  PolyMatrix m = zero_matrix(R2, 2, 2);
  m(0, 0) = h * h;
  m(1, 1) = h;
  return two_term(R2, 0, m);
}

TorusDivisor times(std::int64_t k, const PrimeTorusDivisor& c) {
  TorusDivisor d;
  d.add(c, k);
  return d;
}

const DegreeSupport& degree(const SupportReport& r, int i) {
  for (const auto& d : r.degrees)
    if (d.degree == i) return d;
  throw std::out_of_range("degree");
}

int max_entry_degree(const FreeComplex& e) {
  int best = 1;
  for (int i = e.imin(); i < e.imax(); ++i) {
    const PolyMatrix d = e.differential(i);
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t c = 0; c < d.cols(); ++c)
        if (!d(r, c).is_zero())
          for (int v = 0; v < e.ring().nvars; ++v)
            best = std::max(best, d(r, c).max_degree(v) - d(r, c).min_degree(v));
  }
  return best;
}

}  // namespace

TEST_CASE("candidate divisors examples") {
  CHECK(candidate_divisors(single(P(kH)), 3) == std::vector<PrimeTorusDivisor>{kC});
  CHECK(candidate_divisors(diag_h(), 3) == std::vector<PrimeTorusDivisor>{kC});
  CHECK(candidate_divisors(single(P("1"))).empty());
  CHECK_THROWS_AS(candidate_divisors(single(P(kH)), 0), std::invalid_argument);
}

TEST_CASE("candidate search rejects non-torsion complexes") {
  const FreeComplex free_piece(R2, 0, 1, {{0, 1}, {1, 1}});
  try {
    candidate_divisors(free_piece);
    FAIL("expected domain_error");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("degree 1") != std::string::npos);
  }
}

TEST_CASE("support report examples") {
  const SupportReport diag = support_report(diag_h(), {kC});
  const auto& d1 = degree(diag, 1);
  CHECK(d1.delta0 == times(3, kC));
  CHECK(d1.delta1 == times(1, kC));
  CHECK(d1.minimal == times(2, kC));
  CHECK(d1.effective);
  CHECK(diag.ord(1, kC) == 2);
  CHECK(diag.ord(0, kC) == 0);
  CHECK(degree(diag, 0).minimal.empty());

  CHECK(support_report(single(P(kH)), {kC}).ord(1, kC) == 1);

  const SupportReport sum = support_report(direct_sum(diag_h(), single(P(kH))), {kC});
  CHECK(degree(sum, 1).delta0 == times(4, kC));
  CHECK(degree(sum, 1).delta1 == times(2, kC));
  CHECK(degree(sum, 1).minimal == times(2, kC));

  CHECK_THROWS_AS(support_report(diag_h(), {kC, kC}), std::invalid_argument);
}

TEST_CASE("generic point examples") {
  const PrimeTorusDivisor t1_is_1({1, 0}, TorsionAngle());
  auto a = generic_point_on_divisor(kC, {t1_is_1}, 8);
  CHECK(a.lambda == TorsionAngle(1, 6));
  CHECK(a.b == IntVec{1, 1});

  auto b = generic_point_on_divisor(PrimeTorusDivisor({1, 0}, TorsionAngle(1, 6)), {});
  CHECK(b.lambda == TorsionAngle(1, 6));
  CHECK(b.b == IntVec{1, 1});

  auto c = generic_point_on_divisor(PrimeTorusDivisor({1, 1}, TorsionAngle()),
                                    {PrimeTorusDivisor({1, 1}, TorsionAngle(1, 2))});
  CHECK(c.lambda == TorsionAngle(1, 2));
  CHECK(c.b == IntVec{1, 1});

  CHECK_THROWS_AS(generic_point_on_divisor(kC, {kC}), std::invalid_argument);
  // Every point of {t1 = 1} with entries in [1, 1] is (lambda, lambda) and lies on {t1 t2 = 1}.
  CHECK_THROWS_AS(generic_point_on_divisor(t1_is_1, {PrimeTorusDivisor({1, 1}, TorsionAngle())}, 1),
                  std::runtime_error);
}

TEST_CASE("specialization examples") {
  const auto s = specialization_multiplicity(diag_h(), kC, 1, GenericPoint{TorsionAngle(1, 9), {1, 2}});
  CHECK(s.ord == 2);
  CHECK(s.jordan == 2);
  CHECK(s.generic);

  const auto auto_pick = specialization_multiplicity(diag_h(), kC, 1);
  CHECK(auto_pick.ord == 2);
  CHECK(auto_pick.jordan == 2);

  const auto one = specialization_multiplicity(single(P(kH)), kC, 1);
  CHECK(one.ord == 1);
  CHECK(one.jordan == 1);

  const auto none = specialization_multiplicity(single(P("t1-1")), kC, 1);
  CHECK(none.ord == 0);
  CHECK(none.jordan == 0);

  CHECK_THROWS_AS(specialization_multiplicity(diag_h(), kC, 1, GenericPoint{TorsionAngle(1, 5), {1, 1}}),
                  std::invalid_argument);
}

TEST_CASE("collision point is reported as non-generic") {
  const FreeComplex e = single(P("t1-1") * P("t2-1"));
  const PrimeTorusDivisor c({1, 0}, TorsionAngle());
  const auto s = specialization_multiplicity(e, c, 1, GenericPoint{TorsionAngle(), {1, 1}});
  CHECK(s.ord == 1);
  CHECK_FALSE(s.generic);
  CHECK(s.jordan == 2);
  const auto g = specialization_multiplicity(e, c, 1);
  CHECK(g.generic);
  CHECK(g.ord == g.jordan);
}

TEST_CASE("property: minimal divisors are effective") {
  testgen::Rng rng(21);
  const Ring ring = Ring::make(2, true, 4);
  for (int trial = 0; trial < 30; ++trial) {
    const FreeComplex e = testgen::random_complex(rng, ring, {.torsion = true});
    const SupportReport rep = support_report(e, candidate_divisors(e));
    for (const auto& d : rep.degrees) {
      CHECK(d.effective);
      CHECK(d.minimal.is_effective());
      CHECK(d.minimal == d.delta0 - d.delta1);
    }
  }
}

TEST_CASE("property: minimal divisor matches the annihilator of two-term sums") {
  testgen::Rng rng(22);
  const Ring ring = Ring::make(2, true, 6);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<PrimeTorusDivisor> primes;
    while (primes.size() < 3) {
      const auto c = testgen::random_divisor(rng, 2, 2, 6);
      if (std::find(primes.begin(), primes.end(), c) == primes.end()) primes.push_back(c);
    }
    std::map<std::pair<int, std::size_t>, std::int64_t> expected;
    std::map<int, int> zero{{0, 0}, {1, 0}, {2, 0}};
    FreeComplex e(ring, 0, 2, zero);
    const int pieces = static_cast<int>(testgen::uniform(rng, 1, 4));
    for (int n = 0; n < pieces; ++n) {
      const int p = static_cast<int>(testgen::uniform(rng, 0, 1));
      const auto which = static_cast<std::size_t>(testgen::uniform(rng, 0, 2));
      const auto m = testgen::uniform(rng, 1, 3);
      PolyMatrix h = zero_matrix(ring, 1, 1);
      h(0, 0) = LaurentPoly::binomial(ring, primes[which].u, primes[which].xi).pow(static_cast<unsigned>(m));
      e = direct_sum(e, two_term(ring, p, h));
      auto& slot = expected[{p + 1, which}];
      slot = std::max(slot, m);
    }
    const SupportReport rep = support_report(e, primes);
    for (int i = 0; i <= 2; ++i)
      for (std::size_t w = 0; w < primes.size(); ++w) {
        const auto it = expected.find({i, w});
        CHECK(rep.ord(i, primes[w]) == (it == expected.end() ? 0 : it->second));
      }
  }
}

TEST_CASE("property: order equals Jordan size at generic points") {
  testgen::Rng rng(23);
  const Ring ring = Ring::make(2, true, 4);
  int compared = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const FreeComplex e = testgen::random_complex(rng, ring, {.torsion = true, .koszul = false});
    const auto candidates = candidate_divisors(e);
    const SupportReport rep = support_report(e, candidates);
    for (const auto& d : rep.degrees)
      for (const auto& [c, ord] : d.minimal.terms()) {
        const auto s = specialization_multiplicity(e, c, d.degree);
        REQUIRE(s.generic);
        CHECK(s.ord == ord);
        CHECK(s.jordan == s.ord);
        ++compared;
      }
  }
  CHECK(compared > 20);
}

TEST_CASE("property: candidates commute with base change") {
  testgen::Rng rng(24);
  const Ring ring = Ring::make(2, true, 4);
  for (int trial = 0; trial < 30; ++trial) {
    const FreeComplex e = testgen::random_complex(rng, ring, {.imax = 1, .torsion = true, .max_factors = 2});
    const IntVec b{testgen::uniform(rng, 1, 3), testgen::uniform(rng, 1, 3)};
    std::set<PrimeTorusDivisor> expected;
    for (const auto& c : candidate_divisors(e))
      for (const auto& d : tau_preimage({b}, c)) expected.insert(d);
    const FreeComplex special = base_change(e, b);
    std::int64_t max_den = 1;
    for (const auto& d : expected) max_den = std::max(max_den, d.xi.den());
    const int deg = max_entry_degree(special);
    const int bound = std::max<int>(kDefaultBound, static_cast<int>((max_den + deg - 1) / deg));
    const auto got = candidate_divisors(special, bound);
    CHECK(std::set<PrimeTorusDivisor>(got.begin(), got.end()) == expected);
  }
}
