#include "detloci/bsloci.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace detloci {

namespace {

using RatRow = std::vector<Rational>;

RatRow augmented(const AffineHyperplane& h) {
  RatRow row;
  row.reserve(h.dim() + 1);
  for (auto x : h.c) row.emplace_back(static_cast<long>(x));
  row.emplace_back(static_cast<long>(h.c0));
  return row;
}

struct Rref {
  std::vector<RatRow> rows;
  std::vector<std::size_t> pivots;
};

// Reduced row echelon form over the first `ncols` columns.
Rref rref(std::vector<RatRow> rows, std::size_t ncols) {
  Rref out;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const Rational inv = 1 / rows[rank][col];
    for (auto& x : rows[rank]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      const Rational f = rows[i][col];
      for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] -= f * rows[rank][j];
    }
    out.pivots.push_back(col);
    ++rank;
  }
  rows.resize(rank);
  out.rows = std::move(rows);
  return out;
}

bool in_rowspan(const std::vector<RatRow>& system, const RatRow& row) {
  const std::size_t base = rational_rank(system);
  std::vector<RatRow> extended = system;
  extended.push_back(row);
  return rational_rank(std::move(extended)) == base;
}

std::vector<RatRow> system_of(const std::vector<AffineHyperplane>& eqs) {
  std::vector<RatRow> rows;
  for (const auto& h : eqs) rows.push_back(augmented(h));
  return rows;
}

bool vanishes(const AffineHyperplane& h, const RatRow& point) { return h.evaluate(point) == 0; }

bool inside_member(const HyperplaneLocus& outer, const RatRow& point) {
  for (const auto& e : outer.hyperplanes())
    if (vanishes(e.h, point)) return true;
  for (const auto& p : outer.pieces())
    if (std::all_of(p.equations.begin(), p.equations.end(),
                    [&](const AffineHyperplane& h) { return vanishes(h, point); }))
      return true;
  return false;
}

// A point of the solution set of `eqs` outside every member of `outer`,
// searched along a moment curve through the particular solution.
std::optional<RatRow> witness_point(const std::vector<AffineHyperplane>& eqs, const HyperplaneLocus& outer) {
  const std::size_t r = eqs.front().dim();
  const Rref red = rref(system_of(eqs), r);
  RatRow particular(r);
  std::vector<bool> is_pivot(r, false);
  for (std::size_t i = 0; i < red.pivots.size(); ++i) {
    particular[red.pivots[i]] = -red.rows[i][r];
    is_pivot[red.pivots[i]] = true;
  }
  std::vector<RatRow> basis;
  for (std::size_t f = 0; f < r; ++f) {
    if (is_pivot[f]) continue;
    RatRow v(r);
    v[f] = 1;
    for (std::size_t i = 0; i < red.pivots.size(); ++i) v[red.pivots[i]] = -red.rows[i][f];
    basis.push_back(std::move(v));
  }
  for (long n = 0; n < 100000; ++n) {
    RatRow point = particular;
    Rational power = n;
    for (const auto& v : basis) {
      for (std::size_t j = 0; j < r; ++j) point[j] += power * v[j];
      power *= n;
    }
    if (!inside_member(outer, point)) return point;
    if (basis.empty()) break;
  }
  return std::nullopt;
}

// First member of `outer` containing the solution set of `eqs`.
std::string covering_member(const std::vector<AffineHyperplane>& eqs, const HyperplaneLocus& outer) {
  const auto sys = system_of(eqs);
  for (const auto& e : outer.hyperplanes()) {
    if (eqs.size() == 1 ? e.h.same_set(eqs.front()) : in_rowspan(sys, augmented(e.h))) return e.h.to_string();
  }
  for (const auto& p : outer.pieces()) {
    const bool all = std::all_of(p.equations.begin(), p.equations.end(),
                                 [&](const AffineHyperplane& h) { return in_rowspan(sys, augmented(h)); });
    if (all) return p.to_string();
  }
  return {};
}

std::string describe(const std::vector<AffineHyperplane>& eqs) {
  std::string out;
  for (const auto& h : eqs) out += (out.empty() ? "" : ", ") + h.to_string();
  return eqs.size() == 1 ? out : "{" + out + "}";
}

}  // namespace

// ---------------------------------------------------------------------------
// LinearPiece and HyperplaneLocus

LinearPiece::LinearPiece(std::vector<AffineHyperplane> eqs) : equations(std::move(eqs)) {
  if (equations.size() < 2) throw std::invalid_argument("a linear piece needs at least two hyperplanes");
  std::vector<RatRow> normals;
  for (const auto& h : equations) {
    if (h.dim() != equations.front().dim()) throw std::invalid_argument("piece hyperplanes differ in dimension");
    RatRow row;
    for (auto x : h.c) row.emplace_back(static_cast<long>(x));
    normals.push_back(std::move(row));
  }
  if (rational_rank(normals) != equations.size())
    throw std::invalid_argument("piece hyperplanes must have linearly independent normals");
}

std::vector<AffineHyperplane> LinearPiece::key() const {
  std::vector<AffineHyperplane> k;
  for (const auto& h : equations) k.push_back(h.primitive());
  std::sort(k.begin(), k.end());
  return k;
}

std::string LinearPiece::to_string(char symbol) const {
  std::string out;
  for (const auto& h : equations) out += (out.empty() ? "" : ", ") + h.to_string(symbol);
  return "{" + out + "}";
}

void HyperplaneLocus::add(const AffineHyperplane& h, std::int64_t mult) {
  if (h.dim() != r_) throw std::invalid_argument("hyperplane dimension differs from the locus dimension");
  if (mult < 1) throw std::invalid_argument("hyperplane multiplicity must be positive");
  auto it = std::lower_bound(hyperplanes_.begin(), hyperplanes_.end(), h,
                             [](const Entry& e, const AffineHyperplane& x) { return e.h < x; });
  if (it != hyperplanes_.end() && it->h == h) {
    it->mult += mult;
  } else {
    hyperplanes_.insert(it, Entry{h, mult});
  }
}

void HyperplaneLocus::raise(const AffineHyperplane& h, std::int64_t mult) {
  for (auto& e : hyperplanes_)
    if (e.h.same_set(h)) {
      e.mult = std::max(e.mult, mult);
      return;
    }
  add(h, mult);
}

void HyperplaneLocus::add_piece(const LinearPiece& p) {
  if (p.dim() != r_) throw std::invalid_argument("piece dimension differs from the locus dimension");
  if (std::find(pieces_.begin(), pieces_.end(), p) != pieces_.end()) return;
  pieces_.push_back(p);
  std::sort(pieces_.begin(), pieces_.end(),
            [](const LinearPiece& a, const LinearPiece& b) { return a.key() < b.key(); });
}

std::int64_t HyperplaneLocus::multiplicity(const AffineHyperplane& h) const {
  for (const auto& e : hyperplanes_)
    if (e.h == h) return e.mult;
  return 0;
}

bool HyperplaneLocus::has_set(const AffineHyperplane& h) const {
  return std::any_of(hyperplanes_.begin(), hyperplanes_.end(), [&](const Entry& e) { return e.h.same_set(h); });
}

// ---------------------------------------------------------------------------
// Operations

namespace {

AffineHyperplane translated(const AffineHyperplane& h, const IntVec& v) {
  std::int64_t shift = 0;
  for (std::size_t i = 0; i < h.dim(); ++i) shift += h.c[i] * v[i];
  return AffineHyperplane(h.c, h.c0 + shift);
}

}  // namespace

HyperplaneLocus translate_locus(const HyperplaneLocus& l, const IntVec& v) {
  if (v.size() != l.dim()) throw std::invalid_argument("translation vector has wrong dimension");
  HyperplaneLocus out(l.dim());
  for (const auto& e : l.hyperplanes()) out.add(translated(e.h, v), e.mult);
  for (const auto& p : l.pieces()) {
    std::vector<AffineHyperplane> eqs;
    for (const auto& h : p.equations) eqs.push_back(translated(h, v));
    out.add_piece(LinearPiece(std::move(eqs)));
  }
  return out;
}

HyperplaneLocus set_union(const std::vector<HyperplaneLocus>& loci) {
  if (loci.empty()) return HyperplaneLocus(0);
  HyperplaneLocus out(loci.front().dim());
  for (const auto& l : loci) {
    if (l.dim() != out.dim()) throw std::invalid_argument("loci differ in dimension");
    for (const auto& e : l.hyperplanes())
      if (!out.has_set(e.h)) out.add(e.h, 1);
    for (const auto& p : l.pieces()) out.add_piece(p);
  }
  return out;
}

HyperplaneLocus combine_bm(const std::vector<HyperplaneLocus>& components, const IntVec& m, const IntVec& pi) {
  const std::size_t r = components.size();
  if (r == 0) throw std::invalid_argument("combine needs at least one component");
  if (m.size() != r || pi.size() != r)
    throw std::invalid_argument("dimension mismatch: " + std::to_string(r) + " components, m of length " +
                                std::to_string(m.size()) + ", pi of length " + std::to_string(pi.size()));
  for (const auto& c : components)
    if (c.dim() != r) throw std::invalid_argument("dimension mismatch: component locus is not in dimension " +
                                                  std::to_string(r));
  std::vector<bool> seen(r, false);
  for (auto p : pi) {
    if (p < 1 || p > static_cast<std::int64_t>(r) || seen[p - 1])
      throw std::invalid_argument("pi must be a permutation of 1.." + std::to_string(r));
    seen[p - 1] = true;
  }
  if (std::any_of(m.begin(), m.end(), [](std::int64_t x) { return x < 0; }))
    throw std::invalid_argument("m must be a natural vector");
  if (std::all_of(m.begin(), m.end(), [](std::int64_t x) { return x == 0; }))
    throw std::invalid_argument("m must be nonzero");
  std::vector<HyperplaneLocus> parts;
  IntVec offset(r, 0);
  for (std::size_t j = 0; j < r; ++j) {
    const std::size_t idx = static_cast<std::size_t>(pi[j] - 1);
    for (std::int64_t k = 0; k < m[idx]; ++k) {
      IntVec shift = offset;
      shift[idx] += k;
      parts.push_back(translate_locus(components[idx], shift));
    }
    offset[idx] += m[idx];
  }
  return set_union(parts);
}

ContainmentResult containment_check(const HyperplaneLocus& inner, const HyperplaneLocus& outer) {
  if (inner.dim() != outer.dim()) throw std::invalid_argument("loci differ in dimension");
  ContainmentResult out;
  auto check = [&](const std::vector<AffineHyperplane>& eqs) {
    std::string cover = covering_member(eqs, outer);
    if (cover.empty() && out.contained) {
      out.contained = false;
      out.failing = describe(eqs);
      if (auto w = witness_point(eqs, outer)) out.witness = std::move(*w);
    }
    out.covers.push_back(std::move(cover));
  };
  for (const auto& e : inner.hyperplanes()) check({e.h});
  for (const auto& p : inner.pieces()) check(p.equations);
  return out;
}

bool same_locus(const HyperplaneLocus& a, const HyperplaneLocus& b) {
  return containment_check(a, b).contained && containment_check(b, a).contained;
}

HyperplaneLocus oblique_part(const HyperplaneLocus& l) {
  HyperplaneLocus out(l.dim());
  for (const auto& e : l.hyperplanes())
    if (is_oblique(e.h)) out.add(e.h, e.mult);
  return out;
}

std::set<PrimeTorusDivisor> exp_locus(const HyperplaneLocus& l) {
  std::set<PrimeTorusDivisor> out;
  for (const auto& e : l.hyperplanes()) out.insert(exp_hyperplane(e.h));
  return out;
}

bool exp_oblique_equal(const HyperplaneLocus& a, const HyperplaneLocus& b) {
  return exp_locus(oblique_part(a)) == exp_locus(oblique_part(b));
}

std::set<IntVec> slope_set(const HyperplaneLocus& l) {
  std::set<IntVec> out;
  for (const auto& e : l.hyperplanes()) out.insert(slope(e.h));
  return out;
}

FilterResult polar_candidate_filter(const AffineHyperplane& c, const HyperplaneLocus& zbf) {
  if (c.c0 <= 0) throw std::invalid_argument("polar candidate needs c0 > 0, got " + std::to_string(c.c0));
  const std::int64_t sum = c.normal_sum();
  FilterResult out;
  out.m = c.c0 / sum;
  for (std::int64_t k = 0; k <= out.m; ++k)
    if (zbf.has_set(AffineHyperplane(c.c, c.c0 - k * sum))) {
      out.k = k;
      break;
    }
  return out;
}

PolarModel propagate_polar(const PolarModel& p, int steps) {
  if (steps < 0) throw std::invalid_argument("steps must be natural");
  PolarModel current = p;
  for (int round = 0; round < steps; ++round) {
    PolarModel next = current;
    for (const auto& e : current.hyperplanes())
      for (std::size_t i = 0; i < e.h.dim(); ++i)
        next.raise(AffineHyperplane(e.h.c, e.h.c0 + e.h.c[i]), e.mult);
    current = std::move(next);
  }
  return current;
}

std::vector<SlicePole> specialize_slice(const PolarModel& p, const IntVec& b) {
  if (b.size() != p.dim()) throw std::invalid_argument("slice direction has wrong dimension");
  for (auto x : b)
    if (x <= 0) throw std::invalid_argument("slice direction must have positive entries");
  std::map<Rational, SlicePole> groups;
  for (const auto& e : p.hyperplanes()) {
    std::int64_t cb = 0;
    for (std::size_t i = 0; i < b.size(); ++i) cb += e.h.c[i] * b[i];
    Rational pole(-e.h.c0, cb);
    pole.canonicalize();
    auto& g = groups[pole];
    g.pole = pole;
    g.order_sum += e.mult;
    g.sources.push_back(e.h);
  }
  std::vector<SlicePole> out;
  for (auto& [pole, g] : groups) {
    g.generic = g.sources.size() == 1;
    out.push_back(std::move(g));
  }
  return out;
}

std::int64_t max_class_sum(const PrimeTorusDivisor& c, const HyperplaneLocus& zbf) {
  std::map<std::pair<IntVec, std::int64_t>, std::int64_t> classes;
  for (const auto& e : zbf.hyperplanes()) {
    if (!(exp_hyperplane(e.h) == c)) continue;
    const AffineHyperplane prim = e.h.primitive();
    const std::int64_t s = prim.normal_sum();
    const std::int64_t residue = ((prim.c0 % s) + s) % s;
    classes[{prim.c, residue}] += e.mult;
  }
  std::int64_t best = 0;
  for (const auto& [key, sum] : classes) best = std::max(best, sum);
  return best;
}

bool ord_sum_check(const PrimeTorusDivisor& c, const HyperplaneLocus& zbf, std::int64_t target) {
  return max_class_sum(c, zbf) >= target;
}

}  // namespace detloci
