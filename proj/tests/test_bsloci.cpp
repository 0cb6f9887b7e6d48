#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

#include "detloci/bsloci.hpp"
#include "detloci/fixtures.hpp"
#include "detloci/io.hpp"
#include "generators.hpp"

using namespace detloci;

namespace {

AffineHyperplane H(const std::string& s, std::size_t r = 2) { return parse_hyperplane(s, r); }

std::vector<AffineHyperplane> members(const HyperplaneLocus& l) {
  std::vector<AffineHyperplane> out;
  for (const auto& e : l.hyperplanes()) out.push_back(e.h);
  return out;
}

std::vector<AffineHyperplane> hs(std::vector<std::string> texts) {
  std::vector<AffineHyperplane> out;
  for (const auto& t : texts) out.push_back(H(t));
  std::sort(out.begin(), out.end());
  return out;
}

std::set<AffineHyperplane> zero_sets(const HyperplaneLocus& l) {
  std::set<AffineHyperplane> out;
  for (const auto& e : l.hyperplanes()) out.insert(e.h.primitive());
  return out;
}

PrimeTorusDivisor D(IntVec u, std::int64_t a, std::int64_t b) { return PrimeTorusDivisor(std::move(u), TorsionAngle(a, b)); }

// Components whose combine is independent of the permutation: hyperplanes in
// the single coordinate s_j on component j, plus oblique families c.s + a
// with constants [a, a + c_j + spread] on component j.
std::vector<HyperplaneLocus> synthesized_components(testgen::Rng& rng, std::size_t r) {
  std::vector<HyperplaneLocus> comps(r, HyperplaneLocus(r));
  for (std::size_t j = 0; j < r; ++j) {
    const int n = static_cast<int>(testgen::uniform(rng, 0, 2));
    for (int k = 0; k < n; ++k) {
      IntVec c(r, 0);
      c[j] = testgen::uniform(rng, 1, 4);
      comps[j].add(AffineHyperplane(c, testgen::uniform(rng, 1, 9)));
    }
  }
  const int families = static_cast<int>(testgen::uniform(rng, 1, 2));
  for (int f = 0; f < families; ++f) {
    IntVec c(r);
    for (auto& x : c) x = testgen::uniform(rng, 1, 4);
    const std::int64_t a = testgen::uniform(rng, 1, 6);
    const std::int64_t spread = testgen::uniform(rng, 0, 2);
    for (std::size_t j = 0; j < r; ++j)
      for (std::int64_t k = a; k <= a + c[j] + spread; ++k) comps[j].add(AffineHyperplane(c, k));
  }
  return comps;
}

std::vector<IntVec> permutations(std::size_t r) {
  IntVec pi(r);
  std::iota(pi.begin(), pi.end(), 1);
  std::vector<IntVec> out;
  do out.push_back(pi);
  while (std::next_permutation(pi.begin(), pi.end()));
  return out;
}

}  // namespace

TEST_CASE("locus construction") {
  HyperplaneLocus l(2);
  l.add(H("s1+1"));
  l.add(H("s1+1"), 2);
  l.add(H("2*s1+2"));
  CHECK(l.hyperplanes().size() == 2);
  CHECK(l.multiplicity(H("s1+1")) == 3);
  CHECK(l.has_set(H("3*s1+3")));
  l.raise(H("3*s1+3"), 5);
  CHECK(l.hyperplanes().size() == 2);
  CHECK(std::max(l.multiplicity(H("s1+1")), l.multiplicity(H("2*s1+2"))) == 5);
  l.raise(H("s2+4"), 2);
  CHECK(l.multiplicity(H("s2+4")) == 2);
  CHECK_THROWS_AS(LinearPiece({H("s1+1")}), std::invalid_argument);
  CHECK_THROWS_AS(LinearPiece({H("s1+1"), H("2*s1+5")}), std::invalid_argument);
  CHECK(LinearPiece({H("s1+1"), H("s2+1")}) == LinearPiece({H("2*s2+2"), H("s1+1")}));
}

TEST_CASE("translate examples") {
  const auto moved = translate_locus(make_locus(2, {"3*s1+3*s2+4"}), {1, 0});
  CHECK(members(moved) == hs({"3*s1+3*s2+7"}));
  const auto bf = fixture::cusp_bf();
  CHECK(members(translate_locus(bf, {0, 0})) == members(bf));
  CHECK(members(translate_locus(make_locus(2, {"s2+1"}), {1, 0})) == hs({"s2+1"}));
  const auto piece = translate_locus(fixture::cusp_bi(), {1, 1});
  CHECK(piece.pieces().front() == LinearPiece({H("s1+2"), H("s2+2")}));
  CHECK_THROWS_AS(translate_locus(bf, {1}), std::invalid_argument);
}

TEST_CASE("combine examples") {
  const std::vector<HyperplaneLocus> comps{fixture::quartic_be1(), fixture::quartic_be2()};
  const auto expected = members(fixture::quartic_bf());
  const auto id = combine_bm(comps, {1, 1}, {1, 2});
  const auto swapped = combine_bm(comps, {1, 1}, {2, 1});
  CHECK(members(id) == expected);
  CHECK(members(swapped) == expected);
  for (const auto& e : id.hyperplanes()) CHECK(e.mult == 1);

  const auto only_first = combine_bm(comps, {1, 0}, {1, 2});
  CHECK(members(only_first) == members(fixture::quartic_be1()));

  CHECK_THROWS_AS(combine_bm(comps, {0, 0}, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(combine_bm(comps, {1, 1}, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(combine_bm(comps, {1, 1, 1}, {1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(combine_bm({fixture::quartic_be1(), HyperplaneLocus(3)}, {1, 1}, {1, 2}), std::invalid_argument);
}

TEST_CASE("containment examples") {
  const auto r = containment_check(fixture::cusp_bi(), fixture::cusp_bf());
  CHECK(r.contained);
  CHECK_FALSE(r.witness);
  REQUIRE(r.covers.size() == 3);
  CHECK(std::none_of(r.covers.begin(), r.covers.end(), [](const std::string& s) { return s.empty(); }));
  CHECK(containment_check(make_locus(2, {}, {{"s1+1", "s2+1"}}), make_locus(2, {"6*s1+6"})).contained);

  CHECK(containment_check(make_locus(2, {"s1+1"}), fixture::lines_bf()).contained);

  const auto fail = containment_check(make_locus(2, {"s1+2"}), make_locus(2, {"s1+1"}));
  CHECK_FALSE(fail.contained);
  REQUIRE(fail.witness);
  CHECK(*fail.witness == std::vector<Rational>{Rational(-2), Rational(0)});
  CHECK(fail.failing == "s1+2");

  CHECK_FALSE(containment_check(make_locus(2, {}, {{"s1+1", "s2+1"}}), make_locus(2, {"s1+s2+1"})).contained);
  CHECK(same_locus(fixture::cusp_bf(), translate_locus(fixture::cusp_bf(), {0, 0})));
}

TEST_CASE("oblique part and exp") {
  CHECK(members(oblique_part(fixture::cusp_bf())) ==
        hs({"3*s1+3*s2+4", "3*s1+3*s2+5", "3*s1+3*s2+7", "3*s1+3*s2+8"}));
  CHECK(members(oblique_part(fixture::cusp_bi())) == hs({"3*s1+3*s2+4", "3*s1+3*s2+5"}));
  CHECK(exp_oblique_equal(fixture::cusp_bf(), fixture::cusp_bi()));
  CHECK(exp_locus(oblique_part(fixture::cusp_bf())) ==
        std::set<PrimeTorusDivisor>{D({1, 1}, 2, 3), D({1, 1}, 1, 3)});
  CHECK(exp_locus(oblique_part(fixture::quartic_bi())) == std::set<PrimeTorusDivisor>{D({4, 1}, 0, 1)});
  CHECK(oblique_part(fixture::lines_bf()).empty());
  CHECK_FALSE(exp_oblique_equal(fixture::cusp_bf(), fixture::quartic_bf()));
}

TEST_CASE("polar candidate filter examples") {
  const auto bf = fixture::cusp_bf();
  const auto a = polar_candidate_filter(H("3*s1+3*s2+10"), bf);
  CHECK(a.m == 1);
  CHECK(a.k == 1);
  const auto b = polar_candidate_filter(H("3*s1+3*s2+4"), bf);
  CHECK(b.m == 0);
  CHECK(b.k == 0);
  const auto c = polar_candidate_filter(H("3*s1+3*s2+1"), bf);
  CHECK(c.m == 0);
  CHECK_FALSE(c.k);
  CHECK_THROWS_AS(polar_candidate_filter(H("s1+s2"), bf), std::invalid_argument);
}

TEST_CASE("propagation examples") {
  const auto one = propagate_polar(make_locus(2, {"s1+s2+1"}), 1);
  CHECK(members(one) == hs({"s1+s2+1", "s1+s2+2"}));
  CHECK(one.multiplicity(H("s1+s2+2")) == 1);

  PolarModel p(2);
  p.add(H("2*s1+1"), 2);
  CHECK(members(propagate_polar(p, 0)) == members(p));
  const auto two = propagate_polar(p, 1);
  CHECK(members(two) == hs({"2*s1+1", "2*s1+3"}));
  CHECK(two.multiplicity(H("2*s1+3")) == 2);
  CHECK(two.multiplicity(H("2*s1+1")) == 2);
  CHECK(members(propagate_polar(p, 3)) == hs({"2*s1+1", "2*s1+3", "2*s1+5", "2*s1+7"}));
  CHECK_THROWS_AS(propagate_polar(p, -1), std::invalid_argument);
}

TEST_CASE("slice examples") {
  const auto poles = specialize_slice(fixture::cusp_bf(), {1, 2});
  std::vector<Rational> expected{Rational(-7, 6), Rational(-1), Rational(-8, 9), Rational(-5, 6),
                                 Rational(-7, 9), Rational(-5, 9), Rational(-1, 2), Rational(-4, 9)};
  REQUIRE(poles.size() == expected.size());
  for (std::size_t i = 0; i < poles.size(); ++i) {
    CHECK(poles[i].pole == expected[i]);
    CHECK(poles[i].generic);
    CHECK(poles[i].order_sum == 1);
  }

  const auto diag = specialize_slice(fixture::cusp_bf(), {1, 1});
  const auto minus_one = std::find_if(diag.begin(), diag.end(), [](const SlicePole& p) { return p.pole == -1; });
  REQUIRE(minus_one != diag.end());
  CHECK_FALSE(minus_one->generic);
  CHECK(minus_one->order_sum == 2);
  CHECK(minus_one->sources.size() == 2);

  const auto single = specialize_slice(make_locus(2, {"2*s1+s2+3"}), {4, 1});
  REQUIRE(single.size() == 1);
  CHECK(single[0].pole == Rational(-1, 3));
  CHECK(single[0].generic);

  CHECK_THROWS_AS(specialize_slice(fixture::cusp_bf(), {1, 0}), std::invalid_argument);
}

TEST_CASE("slope sets") {
  CHECK(slope_set(fixture::cusp_bf()) == std::set<IntVec>{{1, 0}, {0, 1}, {1, 1}});
  CHECK(slope_set(fixture::lines_bf()) == std::set<IntVec>{{1, 0}, {0, 1}});
  CHECK(slope_set(HyperplaneLocus(2)).empty());
  CHECK(slope_set(fixture::cusp_bf()) == slope_set(propagate_polar(fixture::cusp_bf(), 2)));
  CHECK(slope_set(fixture::quartic_bf()) == slope_set(propagate_polar(fixture::quartic_bf(), 2)));
}

TEST_CASE("order sums along translation classes") {
  const auto c = D({1, 1}, 2, 3);
  CHECK(ord_sum_check(c, fixture::cusp_bf(), 1));
  CHECK_FALSE(ord_sum_check(c, fixture::cusp_bf(), 2));
  CHECK(max_class_sum(c, fixture::cusp_bf()) == 1);
  CHECK_FALSE(ord_sum_check(c, HyperplaneLocus(2), 1));
  CHECK(max_class_sum(D({4, 1}, 0, 1), fixture::quartic_bf()) == 2);
  CHECK(max_class_sum(D({1, 0}, 0, 1), fixture::quartic_be1()) == 2);
}

TEST_CASE("inclusion chain on the fixtures") {
  for (const auto& [bi, bf, parts] :
       {std::tuple{fixture::cusp_bi(), fixture::cusp_bf(), std::vector{fixture::cusp_be1(), fixture::cusp_be2()}},
        std::tuple{fixture::quartic_bi(), fixture::quartic_bf(),
                   std::vector{fixture::quartic_be1(), fixture::quartic_be2()}}}) {
    CHECK(containment_check(bi, bf).contained);
    for (const auto& p : parts) CHECK(containment_check(bi, p).contained);
    for (const auto& e : bi.hyperplanes()) CHECK(is_oblique(e.h));
    CHECK(containment_check(bf, translate_locus(bf, {0, 0})).contained);
  }
}

TEST_CASE("property: combine is permutation invariant on consistent components") {
  testgen::Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = static_cast<std::size_t>(testgen::uniform(rng, 1, 3));
    const auto comps = synthesized_components(rng, r);
    IntVec m(r);
    do
      for (auto& x : m) x = testgen::uniform(rng, 0, 3);
    while (std::all_of(m.begin(), m.end(), [](auto x) { return x == 0; }));
    const auto perms = permutations(r);
    const auto reference = combine_bm(comps, m, perms.front());
    for (const auto& pi : perms) {
      const auto other = combine_bm(comps, m, pi);
      CHECK(zero_sets(other) == zero_sets(reference));
      CHECK(same_locus(other, reference));
    }
  }
}

TEST_CASE("property: combined locus lies in the union of diagonal translates") {
  testgen::Rng rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = static_cast<std::size_t>(testgen::uniform(rng, 1, 3));
    const auto comps = synthesized_components(rng, r);
    IntVec ones(r, 1), id(r);
    std::iota(id.begin(), id.end(), 1);
    const auto bf = combine_bm(comps, ones, id);
    IntVec m(r);
    do
      for (auto& x : m) x = testgen::uniform(rng, 0, 3);
    while (std::all_of(m.begin(), m.end(), [](auto x) { return x == 0; }));
    const std::int64_t top = *std::max_element(m.begin(), m.end());
    std::vector<HyperplaneLocus> shifted;
    for (std::int64_t k = 0; k < top; ++k) shifted.push_back(translate_locus(bf, IntVec(r, k)));
    CHECK(containment_check(combine_bm(comps, m, id), set_union(shifted)).contained);
  }
  const std::vector<HyperplaneLocus> cusp{fixture::cusp_be1(), fixture::cusp_be2()};
  CHECK(same_locus(combine_bm(cusp, {1, 1}, {1, 2}), fixture::cusp_bf()));
  CHECK(same_locus(combine_bm(cusp, {1, 1}, {2, 1}), fixture::cusp_bf()));
}

TEST_CASE("property: slice poles map to the preimage of exp") {
  testgen::Rng rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = static_cast<std::size_t>(testgen::uniform(rng, 1, 3));
    const auto l = testgen::random_locus(rng, r, 1, 6, 30);
    const AffineHyperplane h = l.hyperplanes().front().h;
    IntVec b(r);
    for (auto& x : b) x = testgen::uniform(rng, 1, 5);
    const auto poles = specialize_slice(l, b);
    REQUIRE(poles.size() == 1);
    const TorsionAngle angle = TorsionAngle::from_rational(poles[0].pole);
    const auto pre = tau_preimage({b}, exp_hyperplane(h));
    CHECK(std::any_of(pre.begin(), pre.end(), [&](const PrimeTorusDivisor& d) { return d.xi == angle; }));
    TorsionPoint image;
    for (auto x : b) image.push_back(angle.times(x));
    CHECK(exp_hyperplane(h).contains(image));
  }
}
