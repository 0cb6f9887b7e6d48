#include "detloci/complexes.hpp"

#include <bit>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace detloci {

PolyMatrix zero_matrix(const Ring& ring, std::size_t rows, std::size_t cols) {
  return PolyMatrix(rows, cols, LaurentPoly(ring));
}

PolyMatrix identity_matrix(const Ring& ring, std::size_t n) {
  PolyMatrix out = zero_matrix(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = LaurentPoly::constant(ring, Rational(1));
  return out;
}

PolyMatrix multiply(const Ring& ring, const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  PolyMatrix out = zero_matrix(ring, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

PolyMatrix block_diagonal(const Ring& ring, const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix out = zero_matrix(ring, a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

bool is_zero_matrix(const PolyMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Minors

namespace {

using Mask = std::uint32_t;

// Determinants of square submatrices, memoized by (row mask, column mask).
class MinorTable {
 public:
  MinorTable(const Ring& ring, const PolyMatrix& m) : ring_(ring), m_(m) {
    if (m.rows() > kMaxMinorDim || m.cols() > kMaxMinorDim)
      throw std::length_error("matrix of size " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                              " exceeds the 12x12 minor enumeration limit");
  }

  const LaurentPoly& det(Mask rows, Mask cols) {
    const std::uint64_t key = (static_cast<std::uint64_t>(rows) << 16) | cols;
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    LaurentPoly value(ring_);
    if (rows == 0) {
      value = LaurentPoly::constant(ring_, Rational(1));
    } else {
      const int r0 = std::countr_zero(rows);
      const Mask rest = rows & (rows - 1);
      bool negative = false;
      for (Mask c = cols; c != 0; c &= c - 1) {
        const int j = std::countr_zero(c);
        const LaurentPoly& entry = m_(r0, j);
        if (!entry.is_zero()) {
          LaurentPoly term = entry * det(rest, cols & ~(Mask{1} << j));
          value = negative ? value - term : value + term;
        }
        negative = !negative;
      }
    }
    return memo_.emplace(key, std::move(value)).first->second;
  }

  const PolyMatrix& matrix() const { return m_; }

 private:
  Ring ring_;
  const PolyMatrix& m_;
  std::unordered_map<std::uint64_t, LaurentPoly> memo_;
};

// Subsets of {0..n-1} of the given size, increasing as integers.
std::vector<Mask> subsets(std::size_t n, int size) {
  std::vector<Mask> out;
  if (size < 0 || static_cast<std::size_t>(size) > n) return out;
  if (size == 0) return {0};
  Mask s = (Mask{1} << size) - 1;
  const Mask limit = Mask{1} << n;
  while (s < limit) {
    out.push_back(s);
    const Mask c = s & (~s + 1);
    const Mask r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
  return out;
}

}  // namespace

IdealGens minors_ideal(const Ring& ring, const PolyMatrix& m, int size) {
  if (size <= 0) return IdealGens::unit(ring);
  if (static_cast<std::size_t>(size) > std::min(m.rows(), m.cols())) return IdealGens::zero(ring);
  MinorTable table(ring, m);
  std::vector<LaurentPoly> gens;
  const auto row_sets = subsets(m.rows(), size);
  const auto col_sets = subsets(m.cols(), size);
  for (Mask r : row_sets)
    for (Mask c : col_sets) {
      const LaurentPoly& d = table.det(r, c);
      if (!d.is_zero()) gens.push_back(d);
    }
  return IdealGens(ring, std::move(gens));
}

bool minors_certified_in(const Ring& ring, const PolyMatrix& m, int size, const IdealGens& target) {
  if (target.is_unit()) return true;
  if (size <= 0) return false;  // the minor 1 is not in a proper ideal
  if (static_cast<std::size_t>(size) > std::min(m.rows(), m.cols())) return true;
  MinorTable table(ring, m);
  std::unordered_map<std::uint64_t, bool> memo;
  auto certified = [&](auto&& self, Mask rows, Mask cols) -> bool {
    const std::uint64_t key = (static_cast<std::uint64_t>(rows) << 16) | cols;
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    const LaurentPoly& d = table.det(rows, cols);
    bool ok = d.is_zero() || target.contains_generator(d);
    if (!ok && rows != 0) {
      ok = true;
      const int r0 = std::countr_zero(rows);
      for (Mask c = cols; c != 0 && ok; c &= c - 1) {
        const int j = std::countr_zero(c);
        if (m(r0, j).is_zero()) continue;
        ok = self(self, rows & (rows - 1), cols & ~(Mask{1} << j));
      }
    }
    memo.emplace(key, ok);
    return ok;
  };
  for (Mask r : subsets(m.rows(), size))
    for (Mask c : subsets(m.cols(), size))
      if (!certified(certified, r, c)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// FreeComplex

FreeComplex::FreeComplex(Ring ring, int imin, int imax, std::map<int, int> ranks,
                         std::map<int, PolyMatrix> differentials)
    : ring_(std::move(ring)), imin_(imin), imax_(imax), ranks_(std::move(ranks)), d_(std::move(differentials)) {
  if (imin_ > imax_) throw std::invalid_argument("complex degree range is empty");
  for (auto it = ranks_.begin(); it != ranks_.end();) {
    if (it->second < 0) throw std::invalid_argument("negative rank in degree " + std::to_string(it->first));
    if (it->second > 0 && (it->first < imin_ || it->first > imax_))
      throw std::invalid_argument("rank given outside the degree range at degree " + std::to_string(it->first));
    it = it->second == 0 ? ranks_.erase(it) : std::next(it);
  }
  for (const auto& [i, m] : d_) {
    const std::string where = "differential d^" + std::to_string(i);
    if (m.rows() != static_cast<std::size_t>(rank(i + 1)) || m.cols() != static_cast<std::size_t>(rank(i)))
      throw std::invalid_argument(where + " has shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                  ", expected " + std::to_string(rank(i + 1)) + "x" + std::to_string(rank(i)));
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (!(m(r, c).ring() == ring_)) throw std::invalid_argument(where + " has an entry in a different ring");
  }
  for (int i = imin_; i < imax_; ++i) {
    auto a = d_.find(i), b = d_.find(i + 1);
    if (a == d_.end() || b == d_.end()) continue;
    if (!is_zero_matrix(multiply(ring_, b->second, a->second)))
      throw std::invalid_argument("d^" + std::to_string(i + 1) + " * d^" + std::to_string(i) + " is not zero");
  }
}

int FreeComplex::rank(int i) const {
  auto it = ranks_.find(i);
  return it == ranks_.end() ? 0 : it->second;
}

PolyMatrix FreeComplex::differential(int i) const {
  auto it = d_.find(i);
  if (it != d_.end()) return it->second;
  return zero_matrix(ring_, rank(i + 1), rank(i));
}

int euler_truncation(const FreeComplex& f, int i) {
  int r = 0;
  for (const auto& [l, n] : f.ranks())
    if (l >= i) r += ((l - i) % 2 == 0) ? n : -n;
  return r;
}

IdealGens cdf_ideal(const FreeComplex& f, int i, int k) {
  return minors_ideal(f.ring(), f.differential(i - 1), euler_truncation(f, i) - k);
}

IdealGens jump_ideal(const FreeComplex& f, int i, int k) {
  return minors_ideal(f.ring(), block_diagonal(f.ring(), f.differential(i - 1), f.differential(i)),
                      f.rank(i) - k + 1);
}

FreeComplex base_change(const FreeComplex& f, const IntVec& b) {
  if (static_cast<int>(b.size()) != f.ring().nvars)
    throw std::invalid_argument("specialization vector has length " + std::to_string(b.size()) + ", expected " +
                                std::to_string(f.ring().nvars));
  for (auto x : b) {
    if (x == 0) throw std::invalid_argument("degenerate specialization");
    if (x < 0) throw std::invalid_argument("specialization exponents must be positive");
  }
  Ring one{1, true, f.ring().field, 't'};
  std::map<int, PolyMatrix> d;
  for (int i = f.imin(); i < f.imax(); ++i) {
    PolyMatrix src = f.differential(i);
    PolyMatrix dst = zero_matrix(one, src.rows(), src.cols());
    for (std::size_t r = 0; r < src.rows(); ++r)
      for (std::size_t c = 0; c < src.cols(); ++c) dst(r, c) = substitute_powers(src(r, c), b);
    d.emplace(i, std::move(dst));
  }
  return FreeComplex(one, f.imin(), f.imax(), f.ranks(), std::move(d));
}

FreeComplex two_term(const Ring& ring, int degree, const PolyMatrix& d) {
  std::map<int, int> ranks{{degree, static_cast<int>(d.cols())}, {degree + 1, static_cast<int>(d.rows())}};
  return FreeComplex(ring, degree, degree + 1, std::move(ranks), {{degree, d}});
}

FreeComplex direct_sum(const FreeComplex& a, const FreeComplex& b) {
  if (!(a.ring() == b.ring())) throw std::invalid_argument("direct sum of complexes over different rings");
  const int lo = std::min(a.imin(), b.imin()), hi = std::max(a.imax(), b.imax());
  std::map<int, int> ranks;
  for (int i = lo; i <= hi; ++i) ranks[i] = a.rank(i) + b.rank(i);
  std::map<int, PolyMatrix> d;
  for (int i = lo; i < hi; ++i)
    d.emplace(i, block_diagonal(a.ring(), a.differential(i), b.differential(i)));
  return FreeComplex(a.ring(), lo, hi, std::move(ranks), std::move(d));
}

FreeComplex pad_trivial(const FreeComplex& f, int p) {
  PolyMatrix one = identity_matrix(f.ring(), 1);
  return direct_sum(f, two_term(f.ring(), p, one));
}

ElemMatrix evaluate_matrix(const PolyMatrix& m, const TorsionPoint& point, const FieldPtr& field) {
  ElemMatrix out(m.rows(), m.cols(), CycloElem(field));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) out(i, j) = evaluate(m(i, j), point).lifted(field);
  return out;
}

std::size_t field_rank(ElemMatrix m) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t piv = rank;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(piv, rank);
    const CycloElem inv = m(rank, col).inverse();
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      if (m(i, col).is_zero()) continue;
      const CycloElem factor = m(i, col) * inv;
      for (std::size_t j = col; j < m.cols(); ++j)
        if (!m(rank, j).is_zero()) m(i, j) -= factor * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

std::map<int, int> cohomology_dims(const FreeComplex& f, const TorsionPoint& point) {
  std::int64_t order = f.ring().order();
  for (const auto& a : point) order = lcm64(order, a.den());
  FieldPtr field = CycloField::get(order);
  std::map<int, int> d_rank;
  for (int i = f.imin() - 1; i <= f.imax(); ++i)
    d_rank[i] = static_cast<int>(field_rank(evaluate_matrix(f.differential(i), point, field)));
  std::map<int, int> out;
  for (int i = f.imin(); i <= f.imax(); ++i) out[i] = f.rank(i) - d_rank[i] - d_rank[i - 1];
  return out;
}

}  // namespace detloci
