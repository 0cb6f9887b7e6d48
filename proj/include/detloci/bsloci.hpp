#pragma once
// Linear loci in parameter space: hyperplane multisets with higher
// codimension pieces, their translates, unions, containments, polar-model
// propagation and one-parameter slices.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "detloci/torus.hpp"

namespace detloci {

/// Common zero set of at least two hyperplanes with independent normals.
struct LinearPiece {
  std::vector<AffineHyperplane> equations;

  explicit LinearPiece(std::vector<AffineHyperplane> eqs);
  std::size_t dim() const { return equations.front().dim(); }
  /// Primitive equations, sorted; equal keys mean equal equation systems.
  std::vector<AffineHyperplane> key() const;
  bool operator==(const LinearPiece& o) const { return key() == o.key(); }
  std::string to_string(char symbol = 's') const;
};

class HyperplaneLocus {
 public:
  struct Entry {
    AffineHyperplane h;
    std::int64_t mult = 1;
  };

  explicit HyperplaneLocus(std::size_t r = 0) : r_(r) {}

  std::size_t dim() const { return r_; }
  /// Merges identical (c, c0) into one entry with summed multiplicity.
  void add(const AffineHyperplane& h, std::int64_t mult = 1);
  /// Raises the member with the same zero set to multiplicity >= mult, or adds h.
  void raise(const AffineHyperplane& h, std::int64_t mult);
  void add_piece(const LinearPiece& p);

  /// Sorted by (c, c0).
  const std::vector<Entry>& hyperplanes() const { return hyperplanes_; }
  const std::vector<LinearPiece>& pieces() const { return pieces_; }
  bool empty() const { return hyperplanes_.empty() && pieces_.empty(); }
  std::int64_t multiplicity(const AffineHyperplane& h) const;
  /// Some member hyperplane has the same zero set as h.
  bool has_set(const AffineHyperplane& h) const;

 private:
  std::size_t r_;
  std::vector<Entry> hyperplanes_;
  std::vector<LinearPiece> pieces_;
};

/// The hyperplanes {c.s + c0 + c.v = 0}, pieces translated memberwise.
HyperplaneLocus translate_locus(const HyperplaneLocus& l, const IntVec& v);

/// Set union with hyperplanes and pieces deduplicated by zero set;
/// multiplicities become 1.
HyperplaneLocus set_union(const std::vector<HyperplaneLocus>& loci);

/// Union over j with m_{pi(j)} > 0 and 0 <= k < m_{pi(j)} of the translate of
/// components[pi(j)] by sum_{l<j} m_{pi(l)} e_{pi(l)} + k e_{pi(j)}.
/// `pi` is a permutation of 1..r.
HyperplaneLocus combine_bm(const std::vector<HyperplaneLocus>& components, const IntVec& m, const IntVec& pi);

struct ContainmentResult {
  bool contained = true;
  /// For each hyperplane and then each piece of the left locus, the member
  /// of the right locus containing it (empty string when none does).
  std::vector<std::string> covers;
  /// A rational point of the left locus outside the right one.
  std::optional<std::vector<Rational>> witness;
  std::string failing;
};

ContainmentResult containment_check(const HyperplaneLocus& inner, const HyperplaneLocus& outer);
/// Mutual containment.
bool same_locus(const HyperplaneLocus& a, const HyperplaneLocus& b);

HyperplaneLocus oblique_part(const HyperplaneLocus& l);
/// Reduced Exp images of the hyperplanes.
std::set<PrimeTorusDivisor> exp_locus(const HyperplaneLocus& l);
bool exp_oblique_equal(const HyperplaneLocus& a, const HyperplaneLocus& b);
std::set<IntVec> slope_set(const HyperplaneLocus& l);

struct FilterResult {
  std::int64_t m = 0;
  std::optional<std::int64_t> k;
};
/// Throws std::invalid_argument when c0 <= 0.
FilterResult polar_candidate_filter(const AffineHyperplane& c, const HyperplaneLocus& zbf);

/// Multiplicities are polar orders (lower bounds after propagation).
using PolarModel = HyperplaneLocus;
PolarModel propagate_polar(const PolarModel& p, int steps);

struct SlicePole {
  Rational pole;
  std::int64_t order_sum = 0;
  bool generic = true;
  std::vector<AffineHyperplane> sources;
};
/// Sorted by pole.  Throws std::invalid_argument unless every b_i > 0.
std::vector<SlicePole> specialize_slice(const PolarModel& p, const IntVec& b);

/// Max over 1-translation classes of the summed multiplicities of member
/// hyperplanes with Exp equal to c, compared against target.
bool ord_sum_check(const PrimeTorusDivisor& c, const HyperplaneLocus& zbf, std::int64_t target);
std::int64_t max_class_sum(const PrimeTorusDivisor& c, const HyperplaneLocus& zbf);

}  // namespace detloci
