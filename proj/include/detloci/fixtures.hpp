#pragma once
// Worked examples as executable fixtures: the loci of three plane-curve
// examples and a Koszul complex, each with named checks.

#include <string>
#include <vector>

#include "detloci/bsloci.hpp"
#include "detloci/complexes.hpp"

namespace detloci {

/// Where an expected value comes from: a published reference value, a value
/// recomputed by hand from reference data, or a definitional convention.
enum class Provenance { reference, recomputed, convention };
const char* provenance_name(Provenance p);

struct CheckResult {
  std::string name;
  Provenance provenance = Provenance::reference;
  bool pass = false;
  std::string detail;
};

struct FixtureResult {
  std::string name;
  std::string description;
  std::vector<CheckResult> checks;
  bool pass() const;
};

std::vector<std::string> fixture_names();
/// Throws std::invalid_argument for an unknown name.
FixtureResult run_fixture(const std::string& name);
std::vector<FixtureResult> run_all_fixtures();

/// Builds a locus from hyperplane strings such as "3*s1+3*s2+4"; each inner
/// vector of `pieces` lists the equations of one linear piece.
HyperplaneLocus make_locus(std::size_t r, const std::vector<std::string>& hyperplanes,
                           const std::vector<std::vector<std::string>>& pieces = {});

namespace fixture {
// x^2 z - y^3, z
HyperplaneLocus cusp_bf();
HyperplaneLocus cusp_bi();
HyperplaneLocus cusp_be1();
HyperplaneLocus cusp_be2();
// x^4 + y^4 + x^2 y z, z
HyperplaneLocus quartic_be1();
HyperplaneLocus quartic_be2();
HyperplaneLocus quartic_bi();
HyperplaneLocus quartic_bf();
// two transversal lines
HyperplaneLocus lines_bf();
/// A -> A^2 -> A with d0 = (t1-1, t2-1)^T and d1 = (t2-1, -(t1-1)).
FreeComplex koszul();
}  // namespace fixture

/// Named example data files: name -> JSON text written by `fixtures export`.
std::vector<std::pair<std::string, HyperplaneLocus>> exported_loci();

}  // namespace detloci
