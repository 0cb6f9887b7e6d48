#include <doctest.h>

#include <functional>

#include "detloci/fixtures.hpp"
#include "detloci/io.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace detloci;

namespace {

std::string data_path(const std::string& name) { return std::string(DETLOCI_DATA_DIR) + "/" + name; }

std::size_t error_position(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.position();
  }
  FAIL("expected a parse error");
  return 0;
}

}  // namespace

TEST_CASE("root order scan") {
  CHECK(root_order_in("t1*t2-e(1/3)") == 3);
  CHECK(root_order_in("e(1/4)*t1+e(5/6)") == 12);
  CHECK(root_order_in("t1-1") == 1);
}

TEST_CASE("polynomial parsing") {
  const Ring r3 = Ring::make(2, true, 3);
  const LaurentPoly h = parse_poly("t1*t2-e(1/3)", r3);
  CHECK(h.to_string() == "t1*t2-e(1/3)");
  CHECK(h == LaurentPoly::binomial(r3, {1, 1}, TorsionAngle(1, 3)));
  CHECK(parse_poly(" t1 * t2 - e(1/3) ", r3) == h);
  CHECK(parse_poly("t1^-1+2/3*t2^2", r3).terms().size() == 2);
  CHECK(parse_poly("0", r3).is_zero());
  const Ring one = Ring::make(1, false, 1);
  CHECK(parse_poly("t^2-1", one) == parse_poly("t1^2-1", one));
  CHECK_THROWS_AS(parse_poly("t1*t2-e(1/3)", Ring::make(2, true, 1)), ParseError);
}

TEST_CASE("parse errors carry positions") {
  const Ring poly = Ring::make(2, false, 1);
  CHECK(error_position([&] { parse_poly("t1^-2+1", poly); }) == 3);
  CHECK(error_position([&] { parse_poly("t1+(t2-1)", poly); }) == 3);
  CHECK(error_position([&] { parse_poly("t3", poly); }) == 1);
  CHECK(error_position([&] { parse_poly("t1+x", poly); }) == 3);
  CHECK(error_position([&] { parse_poly("", poly); }) == 0);
  try {
    parse_poly("t1^-2+1", poly);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("position 3") != std::string::npos);
    CHECK(std::string(e.what()).find("non-Laurent") != std::string::npos);
  }
}

TEST_CASE("hyperplane, list and divisor parsing") {
  CHECK(parse_hyperplane("3*s1+3*s2+4", 2) == AffineHyperplane({3, 3}, 4));
  CHECK(parse_hyperplane("s2+1", 2) == AffineHyperplane({0, 1}, 1));
  CHECK(parse_hyperplane("6*s1", 2) == AffineHyperplane({6, 0}, 0));
  CHECK_THROWS_AS(parse_hyperplane("s1*s2+1", 2), ParseError);
  CHECK_THROWS_AS(parse_hyperplane("1/2*s1+1", 2), ParseError);
  CHECK_THROWS_AS(parse_hyperplane("-s1+1", 2), ParseError);
  CHECK(parse_int_list("1, 2,3") == IntVec{1, 2, 3});
  CHECK_THROWS_AS(parse_int_list("1,,2"), ParseError);
  CHECK(parse_divisor("1,1:1/3") == PrimeTorusDivisor({1, 1}, TorsionAngle(1, 3)));
  CHECK_THROWS_AS(parse_divisor("1,1"), ParseError);
}

TEST_CASE("cyclotomic order resolution") {
  const Json doc = parse_json_text(R"j({"ring":{"nvars":2,"cyclotomic_order":4},"rows":[["t1-e(1/6)"]]})j");
  CHECK(resolve_order(doc, std::nullopt) == 12);
  CHECK(resolve_order(doc, 6) == 6);
  CHECK(resolve_order(doc, 18) == 18);
  CHECK_THROWS_AS(resolve_order(doc, 4), InputError);
  CHECK_THROWS_AS(resolve_order(doc, 0), InputError);
  const MatrixInput m = read_matrix(parse_json_text(R"j({"ring":{"nvars":2},"rows":[["t1*t2-e(1/3)"]]})j"));
  CHECK(m.ring.order() == 3);
  CHECK_FALSE(m.ring.laurent);
}

TEST_CASE("complex files") {
  const FreeComplex k = read_complex(load_json_file(data_path("koszul.json")));
  const FreeComplex expected = fixture::koszul();
  CHECK(k.imin() == 0);
  CHECK(k.imax() == 2);
  CHECK(k.ranks() == expected.ranks());
  for (int i = 0; i < 2; ++i) {
    const PolyMatrix a = k.differential(i), b = expected.differential(i);
    REQUIRE(a.rows() == b.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c) CHECK(a(r, c).to_string() == b(r, c).to_string());
  }
  const FreeComplex d = read_complex(load_json_file(data_path("diag_h.json")));
  CHECK(d.ring().order() == 3);

  CHECK_THROWS_AS(read_complex(parse_json_text(R"j({"degrees":[0,1]})j")), InputError);
  CHECK_THROWS_AS(read_complex(parse_json_text(R"j({"ring":{"nvars":1},"degrees":[0,1],"ranks":{"0":1,"1":1},
      "differentials":{"0":[["t"],["1"]]}})j")),
                  InputError);
  CHECK_THROWS_AS(read_complex(parse_json_text(R"j({"ring":{"nvars":1},"degrees":[0,2],"ranks":{"0":1,"1":1,"2":1},
      "differentials":{"0":[["t"]],"1":[["t"]]}})j")),
                  InputError);
}

TEST_CASE("json errors") {
  try {
    parse_json_text("{\"r\": 2,,}");
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
  CHECK_THROWS_AS(load_json_file(data_path("does_not_exist.json")), InputError);
  CHECK_THROWS_AS(read_locus(parse_json_text(R"j({"hyperplanes":[]})j")), InputError);
  CHECK_THROWS_AS(read_locus(parse_json_text(R"j({"r":2,"hyperplanes":[{"c":[1],"c0":1}]})j")), InputError);
  CHECK_THROWS_AS(read_locus(parse_json_text(R"j({"r":2,"hyperplanes":[{"c":[0,0],"c0":1}]})j")), InputError);
}

TEST_CASE("locus forms agree") {
  const Json a = parse_json_text(R"j({"r":2,"hyperplanes":["6*s1+5",{"c":[3,3],"c0":4,"mult":2}],
      "pieces":[["s1+1","s2+1"]]})j");
  const Json b = parse_json_text(R"j({"r":2,"hyperplanes":[{"text":"3*s1+3*s2+4","mult":2},{"c":[6,0],"c0":5}],
      "pieces":[{"hyperplanes":[{"c":[1,0],"c0":1},{"c":[0,1],"c0":1}]}]})j");
  CHECK(to_json(read_locus(a)) == to_json(read_locus(b)));
  CHECK(read_locus(a).multiplicity(AffineHyperplane({3, 3}, 4)) == 2);
}

TEST_CASE("data files match the fixture registry") {
  for (const auto& [name, locus] : exported_loci()) {
    CAPTURE(name);
    const HyperplaneLocus from_file = read_locus(load_json_file(data_path(name + ".json")));
    CHECK(to_json(from_file) == to_json(locus));
  }
}

TEST_CASE("property: locus json round trip") {
  testgen::Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = static_cast<std::size_t>(testgen::uniform(rng, 1, 3));
    HyperplaneLocus l = testgen::random_locus(rng, r, static_cast<int>(testgen::uniform(rng, 0, 6)));
    if (r >= 2) {
      IntVec e1(r, 0), e2(r, 0);
      e1[0] = 1;
      e2[1] = 1;
      l.add_piece(LinearPiece({AffineHyperplane(e1, testgen::uniform(rng, 1, 5)),
                               AffineHyperplane(e2, testgen::uniform(rng, 1, 5))}));
    }
    const Json j = to_json(l);
    CHECK(to_json(read_locus(parse_json_text(j.dump()))) == j);
    CHECK(j.dump() == to_json(read_locus(j)).dump());
  }
}

TEST_CASE("property: printed polynomials parse back") {
  testgen::Rng rng(42);
  const Ring ring = Ring::make(2, true, 12);
  for (int trial = 0; trial < 200; ++trial) {
    const LaurentPoly f = testgen::random_binomial_product(rng, ring, 3, 2, 3) + testgen::random_small(rng, ring, 2);
    const LaurentPoly g = parse_poly(f.to_string(), ring);
    CHECK(g == f);
    CHECK(to_json(g).dump() == to_json(f).dump());
  }
}
