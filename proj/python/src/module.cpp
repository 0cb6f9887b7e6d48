#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "detloci/bsloci.hpp"
#include "detloci/cli.hpp"
#include "detloci/io.hpp"
#include "detloci/support.hpp"

namespace py = pybind11;
using namespace detloci;

namespace {

Json parse(const std::string& text) { return parse_json_text(text); }

std::string exp_of(const std::string& locus) {
  Json out = Json::array();
  for (const auto& c : exp_locus(read_locus(parse(locus)))) {
    Json j = to_json(c);
    j["text"] = c.to_string();
    out.push_back(std::move(j));
  }
  return out.dump();
}

std::string combine(const std::vector<std::string>& components, const IntVec& m, const IntVec& pi) {
  std::vector<HyperplaneLocus> loci;
  for (const auto& c : components) loci.push_back(read_locus(parse(c)));
  return to_json(combine_bm(loci, m, pi)).dump();
}

bool contains(const std::string& inner, const std::string& outer) {
  return containment_check(read_locus(parse(inner)), read_locus(parse(outer))).contained;
}

std::string cdf(const std::string& complex, int i, int k) {
  return to_json(cdf_ideal(read_complex(parse(complex)), i, k)).dump();
}

std::string jump(const std::string& complex, int i, int k) {
  return to_json(jump_ideal(read_complex(parse(complex)), i, k)).dump();
}

std::string support(const std::string& complex) {
  const FreeComplex e = read_complex(parse(complex));
  return to_json(support_report(e, candidate_divisors(e))).dump();
}

py::tuple cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Core bindings; see the detloci package for the dict-based API";
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  m.def("exp_locus", &exp_of, py::arg("locus"));
  m.def("combine", &combine, py::arg("components"), py::arg("m"), py::arg("pi"));
  m.def("contains", &contains, py::arg("inner"), py::arg("outer"));
  m.def("cdf", &cdf, py::arg("complex"), py::arg("i"), py::arg("k"));
  m.def("jump", &jump, py::arg("complex"), py::arg("i"), py::arg("k"));
  m.def("support", &support, py::arg("complex"));
  m.def("cli", &cli, py::arg("args"));
}
