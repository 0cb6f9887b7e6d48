#include "detloci/fixtures.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "detloci/io.hpp"

namespace detloci {

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::reference:
      return "reference";
    case Provenance::recomputed:
      return "recomputed";
    case Provenance::convention:
      return "convention";
  }
  return "unknown";
}

bool FixtureResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

HyperplaneLocus make_locus(std::size_t r, const std::vector<std::string>& hyperplanes,
                           const std::vector<std::vector<std::string>>& pieces) {
  HyperplaneLocus l(r);
  for (const auto& h : hyperplanes) l.add(parse_hyperplane(h, r));
  for (const auto& p : pieces) {
    std::vector<AffineHyperplane> eqs;
    for (const auto& h : p) eqs.push_back(parse_hyperplane(h, r));
    l.add_piece(LinearPiece(std::move(eqs)));
  }
  return l;
}

namespace fixture {

HyperplaneLocus cusp_bf() {
  return make_locus(2, {"6*s1+5", "6*s1+6", "6*s1+7", "s2+1", "3*s1+3*s2+4", "3*s1+3*s2+5", "3*s1+3*s2+7",
                        "3*s1+3*s2+8"});
}

HyperplaneLocus cusp_bi() { return make_locus(2, {"3*s1+3*s2+4", "3*s1+3*s2+5"}, {{"s1+1", "s2+1"}}); }

HyperplaneLocus cusp_be1() {
  return make_locus(2, {"s1+1", "6*s1+5", "6*s1+7", "3*s1+3*s2+4", "3*s1+3*s2+5"});
}

HyperplaneLocus cusp_be2() { return make_locus(2, {"s2+1", "3*s1+3*s2+4", "3*s1+3*s2+5"}); }

HyperplaneLocus quartic_be1() {
  HyperplaneLocus l = make_locus(2, {"8*s1+5", "8*s1+7", "8*s1+9", "8*s1+11", "4*s1+s2+3", "4*s1+s2+4",
                                     "4*s1+s2+5", "4*s1+s2+6", "4*s1+s2+7", "4*s1+s2+8"});
  l.add(parse_hyperplane("s1+1", 2), 2);
  return l;
}

HyperplaneLocus quartic_be2() { return make_locus(2, {"s2+1", "4*s1+s2+3", "4*s1+s2+4", "4*s1+s2+5"}); }

HyperplaneLocus quartic_bi() {
  return make_locus(2, {"4*s1+s2+3", "4*s1+s2+4", "4*s1+s2+5"},
                    {{"4*s1+5", "s2+1"}, {"2*s1+3", "s2+1"}, {"s1+1", "s2+1"}});
}

HyperplaneLocus quartic_bf() {
  return make_locus(2, {"s1+1", "s2+1", "8*s1+5", "8*s1+7", "8*s1+9", "8*s1+11", "4*s1+s2+3", "4*s1+s2+4",
                        "4*s1+s2+5", "4*s1+s2+6", "4*s1+s2+7", "4*s1+s2+8", "4*s1+s2+9"});
}

HyperplaneLocus lines_bf() { return make_locus(2, {"s1+1", "s2+1"}); }

FreeComplex koszul() {
  const Ring ring = Ring::make(2, true, 1, 't');
  const LaurentPoly f = parse_poly("t1-1", ring), g = parse_poly("t2-1", ring);
  PolyMatrix d0 = zero_matrix(ring, 2, 1);
  d0(0, 0) = f;
  d0(1, 0) = g;
  PolyMatrix d1 = zero_matrix(ring, 1, 2);
  d1(0, 0) = g;
  d1(0, 1) = LaurentPoly(ring) - f;
  return FreeComplex(ring, 0, 2, {{0, 1}, {1, 2}, {2, 1}}, {{0, d0}, {1, d1}});
}

}  // namespace fixture

namespace {

using CheckFn = std::function<CheckResult()>;

PrimeTorusDivisor div(IntVec u, std::int64_t a, std::int64_t b) { return PrimeTorusDivisor(std::move(u), TorsionAngle(a, b)); }

template <class Range>
std::string join(const Range& items) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& x : items) {
    if (!first) out << ", ";
    first = false;
    out << x;
  }
  out << "}";
  return out.str();
}

std::string str(const IntVec& v) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ")";
  return out.str();
}

std::string str(const std::set<PrimeTorusDivisor>& s) {
  std::vector<std::string> parts;
  for (const auto& c : s) parts.push_back(c.to_string());
  return join(parts);
}

std::string str(const std::set<IntVec>& s) {
  std::vector<std::string> parts;
  for (const auto& v : s) parts.push_back(str(v));
  return join(parts);
}

std::string str(const HyperplaneLocus& l) {
  std::vector<std::string> parts;
  for (const auto& e : l.hyperplanes()) parts.push_back(e.h.to_string());
  for (const auto& p : l.pieces()) parts.push_back(p.to_string());
  return join(parts);
}

template <class T>
CheckResult expect_equal(std::string name, Provenance prov, const T& got, const T& expected) {
  CheckResult r{std::move(name), prov, got == expected, {}};
  r.detail = r.pass ? "got " + str(got) : "got " + str(got) + ", expected " + str(expected);
  return r;
}

CheckResult expect_true(std::string name, Provenance prov, bool value, std::string detail) {
  return CheckResult{std::move(name), prov, value, std::move(detail)};
}

CheckResult expect_same_locus(std::string name, Provenance prov, const HyperplaneLocus& got,
                              const HyperplaneLocus& expected) {
  const bool ok = same_locus(got, expected);
  return CheckResult{std::move(name), prov, ok,
                     ok ? "got " + str(got) : "got " + str(got) + ", expected " + str(expected)};
}

std::set<IntVec> oblique_slopes(const HyperplaneLocus& l) { return slope_set(oblique_part(l)); }

bool conjugation_closed(const HyperplaneLocus& l) {
  const auto s = exp_locus(l);
  return std::all_of(s.begin(), s.end(), [&](const PrimeTorusDivisor& c) { return s.count(c.conjugate()) > 0; });
}

bool all_oblique(const HyperplaneLocus& l) {
  return std::all_of(l.hyperplanes().begin(), l.hyperplanes().end(),
                     [](const HyperplaneLocus::Entry& e) { return is_oblique(e.h); });
}

std::string slice_text(const std::vector<SlicePole>& poles) {
  std::vector<std::string> parts;
  for (const auto& p : poles)
    parts.push_back(p.pole.get_str() + (p.generic ? "" : "[x" + std::to_string(p.order_sum) + "]"));
  return join(parts);
}

std::vector<CheckFn> cusp_checks() {
  using P = Provenance;
  std::vector<CheckFn> checks;
  checks.push_back([] {
    const std::set<PrimeTorusDivisor> expected{div({1, 0}, 1, 6), div({1, 0}, 5, 6), div({1, 0}, 0, 1),
                                               div({0, 1}, 0, 1), div({1, 1}, 1, 3), div({1, 1}, 2, 3)};
    return expect_equal("exp of Z(B_F) is the six reference divisors", P::reference, exp_locus(fixture::cusp_bf()),
                        expected);
  });
  checks.push_back([] {
    return expect_equal("slopes of Z(B_F)", P::reference, slope_set(fixture::cusp_bf()),
                        std::set<IntVec>{{1, 0}, {0, 1}, {1, 1}});
  });
  checks.push_back([] {
    return expect_equal("unique oblique slope (1,1)", P::reference, oblique_slopes(fixture::cusp_bf()),
                        std::set<IntVec>{{1, 1}});
  });
  const std::vector<std::pair<std::string, std::function<HyperplaneLocus()>>> loci{
      {"B_F", fixture::cusp_bf}, {"B_F^I", fixture::cusp_bi}, {"B_F^e1", fixture::cusp_be1},
      {"B_F^e2", fixture::cusp_be2}};
  for (std::size_t a = 0; a < loci.size(); ++a)
    for (std::size_t b = a + 1; b < loci.size(); ++b)
      checks.push_back([la = loci[a], lb = loci[b]] {
        const auto x = la.second(), y = lb.second();
        const auto ex = exp_locus(oblique_part(x));
        return expect_true("oblique exp of " + la.first + " equals that of " + lb.first, P::reference,
                           exp_oblique_equal(x, y), "oblique exp " + str(ex));
      });
  checks.push_back([] {
    const std::set<PrimeTorusDivisor> expected{div({1, 1}, 1, 3), div({1, 1}, 2, 3)};
    return expect_equal("oblique exp is {t1*t2 = e(1/3)}, {t1*t2 = e(2/3)}", P::reference,
                        exp_locus(oblique_part(fixture::cusp_bf())), expected);
  });
  checks.push_back([] {
    const ContainmentResult r = containment_check(fixture::cusp_bi(), fixture::cusp_bf());
    const HyperplaneLocus piece = make_locus(2, {}, {{"s1+1", "s2+1"}});
    const bool by_6s1 = containment_check(piece, make_locus(2, {"6*s1+6"})).contained;
    const bool ok = r.contained && by_6s1;
    return expect_true("Z(B_F^I) inside Z(B_F), piece also inside 6*s1+6", P::recomputed, ok, join(r.covers));
  });
  checks.push_back([] {
    const bool ok = containment_check(fixture::cusp_bi(), fixture::cusp_be1()).contained &&
                    containment_check(fixture::cusp_bi(), fixture::cusp_be2()).contained;
    return expect_true("Z(B_F^I) inside Z(B_F^e1) and Z(B_F^e2)", P::recomputed, ok, ok ? "contained" : "not contained");
  });
  checks.push_back([] {
    return expect_true("hyperplanes of Z(B_F^I) are oblique", P::recomputed, all_oblique(fixture::cusp_bi()),
                       str(fixture::cusp_bi()));
  });
  checks.push_back([] {
    return expect_true("exp of Z(B_F) is closed under conjugation", P::recomputed, conjugation_closed(fixture::cusp_bf()),
                       str(exp_locus(fixture::cusp_bf())));
  });
  checks.push_back([] {
    const auto poles = specialize_slice(fixture::cusp_bf(), {1, 2});
    std::vector<Rational> got;
    bool generic = true;
    for (const auto& p : poles) {
      got.push_back(p.pole);
      generic = generic && p.generic && p.order_sum == 1;
    }
    std::vector<Rational> expected{Rational(-5, 6), Rational(-1), Rational(-7, 6), Rational(-1, 2),
                                   Rational(-4, 9), Rational(-5, 9), Rational(-7, 9), Rational(-8, 9)};
    std::sort(expected.begin(), expected.end());
    return expect_true("slice b=(1,2): eight generic poles", P::recomputed, generic && got == expected,
                       slice_text(poles));
  });
  checks.push_back([] {
    const auto poles = specialize_slice(fixture::cusp_bf(), {1, 1});
    const auto it = std::find_if(poles.begin(), poles.end(), [](const SlicePole& p) { return p.pole == -1; });
    const bool ok = it != poles.end() && !it->generic && it->order_sum == 2;
    return expect_true("slice b=(1,1): pole -1 non-generic of order sum 2", P::recomputed, ok, slice_text(poles));
  });
  checks.push_back([] {
    const auto bf = fixture::cusp_bf();
    const auto r1 = polar_candidate_filter(parse_hyperplane("3*s1+3*s2+10", 2), bf);
    const auto r2 = polar_candidate_filter(parse_hyperplane("3*s1+3*s2+4", 2), bf);
    const auto r3 = polar_candidate_filter(parse_hyperplane("3*s1+3*s2+1", 2), bf);
    const bool ok = r1.m == 1 && r1.k == 1 && r2.m == 0 && r2.k == 0 && r3.m == 0 && !r3.k;
    auto show = [](const FilterResult& r) {
      return "(m=" + std::to_string(r.m) + ",k=" + (r.k ? std::to_string(*r.k) : "none") + ")";
    };
    return expect_true("box filter on 3*s1+3*s2+{10,4,1}", P::recomputed, ok, show(r1) + " " + show(r2) + " " + show(r3));
  });
  checks.push_back([] {
    const PrimeTorusDivisor c = div({1, 1}, 2, 3);
    const bool ok = ord_sum_check(c, fixture::cusp_bf(), 1) && !ord_sum_check(c, fixture::cusp_bf(), 2);
    return expect_true("translation-class order sum at {t1*t2 = e(2/3)} is 1", P::recomputed, ok,
                       "max class sum " + std::to_string(max_class_sum(c, fixture::cusp_bf())));
  });
  checks.push_back([] {
    return expect_equal("slopes agree with the propagated polar model", P::recomputed,
                        slope_set(propagate_polar(fixture::cusp_bf(), 2)), slope_set(fixture::cusp_bf()));
  });
  return checks;
}

std::vector<CheckFn> quartic_checks() {
  using P = Provenance;
  std::vector<CheckFn> checks;
  for (const IntVec& pi : std::vector<IntVec>{{1, 2}, {2, 1}})
    checks.push_back([pi] {
      const auto got = combine_bm({fixture::quartic_be1(), fixture::quartic_be2()}, {1, 1}, pi);
      return expect_same_locus("combine with m=(1,1), pi=" + str(pi) + " gives the reference Z(B_F)", P::reference, got,
                               fixture::quartic_bf());
    });
  checks.push_back([] {
    const auto got = combine_bm({fixture::quartic_be1(), fixture::quartic_be2()}, {1, 1}, {1, 2});
    const std::set<PrimeTorusDivisor> expected{div({1, 0}, 0, 1), div({0, 1}, 0, 1), div({1, 0}, 1, 8),
                                               div({1, 0}, 3, 8), div({1, 0}, 5, 8), div({1, 0}, 7, 8),
                                               div({4, 1}, 0, 1)};
    return expect_equal("exp of combined locus", P::reference, exp_locus(got), expected);
  });
  checks.push_back([] {
    return expect_equal("unique oblique slope (4,1)", P::reference, oblique_slopes(fixture::quartic_bf()),
                        std::set<IntVec>{{4, 1}});
  });
  checks.push_back([] {
    return expect_equal("oblique exp of Z(B_F^I) is {t1^4*t2 = 1}", P::reference,
                        exp_locus(oblique_part(fixture::quartic_bi())),
                        std::set<PrimeTorusDivisor>{div({4, 1}, 0, 1)});
  });
  checks.push_back([] {
    return expect_true("hyperplanes of Z(B_F^I) are oblique", P::recomputed, all_oblique(fixture::quartic_bi()),
                       str(fixture::quartic_bi()));
  });
  checks.push_back([] {
    const bool ok = containment_check(fixture::quartic_bi(), fixture::quartic_bf()).contained;
    return expect_true("Z(B_F^I) inside Z(B_F)", P::recomputed, ok, ok ? "contained" : "not contained");
  });
  checks.push_back([] {
    return expect_true("exp of Z(B_F) is closed under conjugation", P::recomputed,
                       conjugation_closed(fixture::quartic_bf()), str(exp_locus(fixture::quartic_bf())));
  });
  checks.push_back([] {
    return expect_equal("slopes agree with the propagated polar model", P::recomputed,
                        slope_set(propagate_polar(fixture::quartic_bf(), 2)), slope_set(fixture::quartic_bf()));
  });
  return checks;
}

std::vector<CheckFn> lines_checks() {
  using P = Provenance;
  std::vector<CheckFn> checks;
  checks.push_back([] {
    return expect_equal("slopes {(1,0),(0,1)}", P::reference, slope_set(fixture::lines_bf()),
                        std::set<IntVec>{{1, 0}, {0, 1}});
  });
  checks.push_back([] {
    return expect_equal("exp is {t1 = 1}, {t2 = 1}", P::reference, exp_locus(fixture::lines_bf()),
                        std::set<PrimeTorusDivisor>{div({1, 0}, 0, 1), div({0, 1}, 0, 1)});
  });
  checks.push_back([] {
    return expect_true("no oblique part", P::recomputed, oblique_part(fixture::lines_bf()).empty(), "empty");
  });
  return checks;
}

std::vector<CheckFn> koszul_checks() {
  using P = Provenance;
  std::vector<CheckFn> checks;
  const auto gens = [](const IdealGens& i) { return join(i.to_strings()); };
  checks.push_back([gens] {
    const FreeComplex f = fixture::koszul();
    const IdealGens i1 = cdf_ideal(f, 1, 0), i2 = cdf_ideal(f, 2, 0);
    const IdealGens expected(f.ring(), {parse_poly("t1-1", f.ring()), parse_poly("t2-1", f.ring())});
    const bool ok = i1 == expected && i2 == expected;
    return expect_true("cdf ideals in degrees 1 and 2 are (t1-1, t2-1)", P::recomputed, ok, gens(i1) + " " + gens(i2));
  });
  checks.push_back([gens] {
    const FreeComplex f = fixture::koszul();
    const Ring& ring = f.ring();
    const LaurentPoly a = parse_poly("t1-1", ring), b = parse_poly("t2-1", ring);
    const IdealGens expected(ring, {a * a, a * b, b * b});
    const IdealGens got = jump_ideal(f, 1, 1);
    return expect_true("jump ideal J^1_1 is (f^2, f*g, g^2)", P::recomputed, got == expected, gens(got));
  });
  checks.push_back([] {
    const FreeComplex f = fixture::koszul();
    std::string detail;
    bool ok = true;
    for (const auto& c : {div({1, 0}, 0, 1), div({0, 1}, 0, 1), div({1, 1}, 0, 1)}) {
      for (int j = 0; j <= 2; ++j) {
        const auto vj = ideal_valuation(jump_ideal(f, 1, j), c);
        std::optional<int> best;
        for (int k = 0; k <= j - 1; ++k) {
          const auto a = ideal_valuation(cdf_ideal(f, 1, k), c), b = ideal_valuation(cdf_ideal(f, 2, j - 1 - k), c);
          if (!a || !b) continue;
          best = best ? std::min(*best, *a + *b) : *a + *b;
        }
        ok = ok && vj == best;
        detail += c.to_string() + " j=" + std::to_string(j) + ":" + (vj ? std::to_string(*vj) : "inf") + " ";
      }
    }
    return expect_true("valuation of J equals the min-convolution of cdf valuations", P::recomputed, ok, detail);
  });
  return checks;
}

struct Entry {
  std::string name;
  std::string description;
  std::function<std::vector<CheckFn>()> checks;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {"cusp", "F = (x^2 z - y^3, z): reference B_F, B_F^I, B_F^e1, B_F^e2", cusp_checks},
      {"quartic", "F = (x^4 + y^4 + x^2 y z, z): reference B_F^e1, B_F^e2, B_F^I", quartic_checks},
      {"lines", "F = (x1 + x2^b, x1^c + x2): B_F = (s1+1)(s2+1)", lines_checks},
      {"koszul", "Koszul complex on t1-1, t2-1", koszul_checks},
  };
  return entries;
}

}  // namespace

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& e : registry()) out.push_back(e.name);
  return out;
}

FixtureResult run_fixture(const std::string& name) {
  for (const auto& e : registry()) {
    if (e.name != name) continue;
    FixtureResult result{e.name, e.description, {}};
    for (const auto& check : e.checks()) {
      try {
        result.checks.push_back(check());
      } catch (const std::exception& ex) {
        result.checks.push_back(CheckResult{"(exception)", Provenance::recomputed, false, ex.what()});
      }
    }
    return result;
  }
  throw std::invalid_argument("unknown fixture '" + name + "'");
}

std::vector<FixtureResult> run_all_fixtures() {
  std::vector<FixtureResult> out;
  for (const auto& name : fixture_names()) out.push_back(run_fixture(name));
  return out;
}

std::vector<std::pair<std::string, HyperplaneLocus>> exported_loci() {
  return {{"cusp_bf", fixture::cusp_bf()},         {"cusp_bi", fixture::cusp_bi()},
          {"cusp_be1", fixture::cusp_be1()},       {"cusp_be2", fixture::cusp_be2()},
          {"quartic_be1", fixture::quartic_be1()}, {"quartic_be2", fixture::quartic_be2()},
          {"quartic_bi", fixture::quartic_bi()},   {"quartic_bf", fixture::quartic_bf()},
          {"lines_bf", fixture::lines_bf()}};
}

}  // namespace detloci
