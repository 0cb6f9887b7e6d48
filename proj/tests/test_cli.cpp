#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "detloci/cli.hpp"
#include "detloci/io.hpp"

using namespace detloci;

namespace {

std::string data(const std::string& name) { return std::string(DETLOCI_DATA_DIR) + "/" + name; }

struct Run {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("fixtures subcommand") {
  const Run all = run({"fixtures", "run", "all"});
  CHECK(all.code == kExitOk);
  const Json report = all.json();
  for (const auto& f : report["fixtures"]) CHECK(f["pass"].get<bool>());
  const Run list = run({"fixtures", "list"});
  CHECK(list.code == kExitOk);
  CHECK(list.out.find("cusp") != std::string::npos);
  CHECK(run({"fixtures", "run", "nope"}).code == kExitInputError);
}

TEST_CASE("fixture export reproduces the data files") {
  const auto dir = std::filesystem::temp_directory_path() / "detloci_export_test";
  std::filesystem::remove_all(dir);
  REQUIRE(run({"fixtures", "export", "--dir", dir.string()}).code == kExitOk);
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    CAPTURE(entry.path().string());
    const Json mine = load_json_file(entry.path().string());
    const Json shipped = load_json_file(data(entry.path().filename().string()));
    CHECK(mine == shipped);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("exp lists the six divisors of the cusp locus") {
  const Run r = run({"exp", "--locus", data("cusp_bf.json")});
  REQUIRE(r.code == kExitOk);
  std::set<std::string> texts;
  const Json report = r.json();
  for (const auto& d : report["divisors"]) texts.insert(d["text"].get<std::string>());
  CHECK(texts == std::set<std::string>{"{t1 = e(0)}", "{t1 = e(1/6)}", "{t1 = e(5/6)}", "{t2 = e(0)}",
                                       "{t1*t2 = e(1/3)}", "{t1*t2 = e(2/3)}"});
}

TEST_CASE("combine under the swapped permutation") {
  const Run r = run({"combine", "--m", "1,1", "--e1", data("quartic_be1.json"), "--e2", data("quartic_be2.json"),
                     "--pi", "2,1"});
  REQUIRE(r.code == kExitOk);
  const Json expected = to_json(read_locus(load_json_file(data("quartic_bf.json"))));
  CHECK(r.json()["hyperplanes"] == expected["hyperplanes"]);
  CHECK(run({"combine", "--m", "1,1,1", "--e1", data("quartic_be1.json"), "--e2", data("quartic_be2.json")}).code ==
        kExitInputError);
}

TEST_CASE("exit codes") {
  CHECK(run({"contain", "--inner", data("cusp_bi.json"), "--outer", data("cusp_bf.json")}).code == kExitOk);
  const Run fail = run({"contain", "--inner", data("cusp_bf.json"), "--outer", data("cusp_bi.json")});
  CHECK(fail.code == kExitCheckFailed);
  CHECK(fail.json()["contained"] == false);
  CHECK(fail.json().contains("witness"));

  const Run reject = run({"filter", "--locus", data("cusp_bf.json"), "--hyperplane", "3*s1+3*s2+1"});
  CHECK(reject.code == kExitOk);
  CHECK(reject.json()["accepted"] == false);

  const Run missing = run({"exp", "--locus", data("missing.json")});
  CHECK(missing.code == kExitInputError);
  CHECK(missing.out.empty());
  CHECK_FALSE(missing.err.empty());

  CHECK(run({"frobnicate"}).code == kExitInputError);
  CHECK(run({"contain", "--inner", data("cusp_bf.json"), "--outer", data("koszul.json")}).code == kExitInputError);
  CHECK(run({"slice", "--locus", data("cusp_bf.json"), "--b", "1,0"}).code == kExitInputError);
  CHECK(run({"slice", "--locus", data("cusp_bf.json"), "--b", "1,2,3"}).code == kExitInputError);
  CHECK(run({"support", "--complex", data("diag_h.json"), "--divisor", "1,1,1:1/3"}).code == kExitInputError);
}

TEST_CASE("parse errors are position annotated") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = (dir / "detloci_bad_matrix.json").string();
  {
    std::ofstream f(path);
    f << R"j({"ring":{"nvars":1,"laurent":false},"rows":[["t^-1"]]})j";
  }
  const Run r = run({"smith", "--matrix", path});
  CHECK(r.code == kExitInputError);
  CHECK(r.err.find("position 2") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("algebra subcommands") {
  const Run cdf = run({"cdf", "--complex", data("koszul.json"), "-i", "2", "-k", "0"});
  REQUIRE(cdf.code == kExitOk);
  CHECK(cdf.json()["ideal"]["generators"].size() == 2);

  const Run smith = run({"smith", "--matrix", data("smith_example.json")});
  REQUIRE(smith.code == kExitOk);
  CHECK(smith.json()["invariant_factors"] == Json::array({"1", "t^2"}));

  const Run det = run({"detfactors", "--matrix", data("jordan_example.json"), "--eigenvalue", "1/6"});
  REQUIRE(det.code == kExitOk);
  CHECK(det.json()["max_jordan_block"]["size"] == 2);

  const Run support = run({"support", "--complex", data("diag_h.json")});
  REQUIRE(support.code == kExitOk);
  const Json spec = support.json()["specialization"];
  REQUIRE(spec.size() == 1);
  CHECK(spec[0]["ord"] == 2);
  CHECK(spec[0]["jordan"] == 2);
}

TEST_CASE("output is byte identical across runs") {
  const std::vector<std::vector<std::string>> commands{
      {"exp", "--locus", data("cusp_bf.json")},
      {"slice", "--locus", data("cusp_bf.json"), "--b", "1,1"},
      {"propagate", "--locus", data("cusp_bf.json"), "--steps", "2"},
      {"support", "--complex", data("koszul.json")},
      {"fixtures", "run", "all"},
  };
  for (const auto& args : commands) {
    const Run a = run(args), b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}
