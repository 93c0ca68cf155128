#ifndef COMMCI_LINALG_HPP
#define COMMCI_LINALG_HPP

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "commci/field.hpp"

namespace commci {

/// Row-oriented sparse matrix over a coefficient field. Rows need not be sorted.
template <class F>
struct SparseMatrix {
  using Coeff = typename F::value_type;
  using Row = std::vector<std::pair<std::uint32_t, Coeff>>;

  std::size_t nrows = 0;
  std::size_t ncols = 0;
  std::vector<Row> rows;

  SparseMatrix() = default;
  SparseMatrix(std::size_t r, std::size_t c) : nrows(r), ncols(c), rows(r) {}

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.size();
    return n;
  }
};

/// Rank over GF(p): rows are reduced one at a time against a growing set of
/// normalized pivot rows, shortest rows first.
inline std::size_t rank(const SparseMatrix<PrimeField>& m, const PrimeField& fld) {
  const std::uint64_t p = fld.modulus();
  std::vector<std::size_t> order(m.rows.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return m.rows[a].size() < m.rows[b].size(); });

  // pivot_row[c] = index into pivots, or -1
  std::vector<std::int64_t> pivot_of(m.ncols, -1);
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> pivots;
  std::vector<std::uint64_t> dense(m.ncols, 0);
  std::vector<std::uint32_t> touched;

  for (std::size_t ri : order) {
    const auto& row = m.rows[ri];
    if (row.empty()) continue;
    std::uint32_t lo = static_cast<std::uint32_t>(m.ncols);
    for (const auto& [c, v] : row) {
      dense[c] = (dense[c] + v) % p;
      lo = std::min(lo, c);
    }
    std::int64_t found = -1;
    for (std::uint32_t c = lo; c < m.ncols; ++c) {
      std::uint64_t v = dense[c] % p;
      dense[c] = v;
      if (v == 0) continue;
      if (pivot_of[c] >= 0) {
        std::uint64_t f = p - v;
        for (const auto& [pc, pv] : pivots[pivot_of[c]]) dense[pc] = (dense[pc] + f * pv) % p;
        continue;
      }
      found = c;
      break;
    }
    if (found >= 0) {
      std::uint32_t inv = fld.inv(static_cast<std::uint32_t>(dense[found]));
      std::vector<std::pair<std::uint32_t, std::uint32_t>> piv;
      for (std::uint32_t c = static_cast<std::uint32_t>(found); c < m.ncols; ++c) {
        std::uint64_t v = dense[c] % p;
        if (v) piv.emplace_back(c, static_cast<std::uint32_t>(v * inv % p));
        dense[c] = 0;
      }
      pivot_of[found] = static_cast<std::int64_t>(pivots.size());
      pivots.push_back(std::move(piv));
    } else {
      std::fill(dense.begin() + lo, dense.end(), 0);
    }
  }
  return pivots.size();
}

/// Rank over Q by fraction-free (Bareiss) elimination on integer rows.
/// Each row is first scaled by the lcm of its denominators, which keeps rank.
inline std::size_t rank(const SparseMatrix<RationalField>& m, const RationalField&) {
  const std::size_t R = m.nrows, C = m.ncols;
  if (R == 0 || C == 0) return 0;
  std::vector<std::vector<mpz_class>> a(R, std::vector<mpz_class>(C, 0));
  for (std::size_t r = 0; r < R; ++r) {
    mpz_class den = 1;
    for (const auto& [c, v] : m.rows[r]) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
    for (const auto& [c, v] : m.rows[r]) {
      mpq_class scaled = v * den;
      a[r][c] += scaled.get_num();
    }
  }
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < C && rank < R; ++col) {
    std::size_t piv = rank;
    while (piv < R && a[piv][col] == 0) ++piv;
    if (piv == R) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = rank + 1; r < R; ++r) {
      for (std::size_t c = col + 1; c < C; ++c) {
        a[r][c] = a[r][c] * a[rank][col] - a[r][col] * a[rank][c];
        mpz_divexact(a[r][c].get_mpz_t(), a[r][c].get_mpz_t(), prev.get_mpz_t());
      }
      a[r][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

/// True when a*b is the zero matrix (a is rows x k, b is k x cols).
template <class F>
bool product_is_zero(const SparseMatrix<F>& a, const SparseMatrix<F>& b, const F& fld) {
  std::vector<typename F::value_type> acc(b.ncols, fld.zero());
  std::vector<char> hit(b.ncols, 0);
  for (const auto& row : a.rows) {
    std::vector<std::uint32_t> used;
    for (const auto& [k, v] : row)
      for (const auto& [c, w] : b.rows[k]) {
        if (!hit[c]) {
          hit[c] = 1;
          used.push_back(c);
        }
        acc[c] = fld.add(acc[c], fld.mul(v, w));
      }
    bool zero = true;
    for (auto c : used) {
      if (!fld.is_zero(acc[c])) zero = false;
      acc[c] = fld.zero();
      hit[c] = 0;
    }
    if (!zero) return false;
  }
  return true;
}

}  // namespace commci

#endif
