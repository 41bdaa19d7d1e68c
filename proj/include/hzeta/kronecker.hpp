#pragma once

// Exact-rational Hankel determinants and minimal linear recurrences.
//
// A power series with rational coefficients is a rational function exactly
// when its Hankel determinants vanish from some order on (Kronecker). Nothing
// here can decide that from a finite prefix; every report is "up to the
// scanned order and length".

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hzeta/errors.hpp"

namespace hzeta {

struct RationalSequence {
  std::vector<mpq_class> values;  // c_1..c_M
  std::string origin;

  std::size_t size() const { return values.size(); }
  // 1-based access.
  const mpq_class& operator[](std::size_t m) const { return values[m - 1]; }
};

// Fraction-free determinant of an integer matrix (Bareiss); the matrix is consumed.
inline mpz_class bareiss_det(std::vector<std::vector<mpz_class>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// det (c_{offset+i+j-1})_{1<=i,j<=n}, exact.
inline mpq_class exact_hankel_det(const RationalSequence& seq, std::size_t n, std::size_t offset = 0) {
  if (n < 1) throw DomainError("exact_hankel_det: n must be >= 1");
  if (offset + 2 * n - 1 > seq.size())
    throw DomainError("exact_hankel_det: sequence of length " + std::to_string(seq.size()) +
                      " too short for n = " + std::to_string(n) + " at offset " + std::to_string(offset));
  // Clear denominators with the lcm L of the entries used: det = det(L H) / L^n.
  mpz_class L = 1;
  for (std::size_t m = offset + 1; m <= offset + 2 * n - 1; ++m)
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), seq[m].get_den_mpz_t());
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const mpq_class& c = seq[offset + i + j + 1];
      a[i][j] = c.get_num() * (L / c.get_den());
    }
  mpz_class Ln;
  mpz_pow_ui(Ln.get_mpz_t(), L.get_mpz_t(), n);
  mpq_class det(bareiss_det(std::move(a)), Ln);
  det.canonicalize();
  return det;
}

// Basis of the right nullspace of a rational matrix, via reduced row echelon form.
inline std::vector<std::vector<mpq_class>> rational_nullspace(std::vector<std::vector<mpq_class>> a,
                                                              std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[row], a[p]);
    const mpq_class inv = 1 / a[row][c];
    for (std::size_t j = c; j < cols; ++j) a[row][j] *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c] == 0) continue;
      const mpq_class f = a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[r][j] -= f * a[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  std::vector<std::vector<mpq_class>> basis;
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<mpq_class> v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

struct RecurrenceReport {
  bool found = false;
  std::size_t order = 0;                // k
  std::vector<mpq_class> coefficients;  // r_0..r_k with r_k = 1
  std::size_t valid_from = 0;           // m_1 (1-based)
  std::size_t scanned_max_order = 0;
};

// True when r_0 c_m + ... + r_k c_{m+k} = 0 for every m in [from, M-k].
inline bool verify_recurrence(const RationalSequence& seq, const std::vector<mpq_class>& r, std::size_t from) {
  if (r.empty() || from < 1) return false;
  const std::size_t k = r.size() - 1;
  for (std::size_t m = from; m + k <= seq.size(); ++m) {
    mpq_class acc = 0;
    for (std::size_t i = 0; i <= k; ++i) acc += r[i] * seq[m + i];
    if (acc != 0) return false;
  }
  return true;
}

// Minimal-order rational recurrence holding on the tail m >= m_1.
//
// Orders are tried in increasing k. For each k the full tail (m_1 = 1) is
// tried first; later starts are accepted only while the shifted system still
// has at least k + 2 equations, so a recurrence is never read off a square
// system alone.
inline RecurrenceReport find_recurrence(const RationalSequence& seq, std::size_t max_order) {
  if (max_order < 1) throw DomainError("find_recurrence: max_order must be >= 1");
  const std::size_t M = seq.size();
  if (M < 2 * max_order + 1)
    throw DomainError("find_recurrence: need at least " + std::to_string(2 * max_order + 1) +
                      " terms for max_order " + std::to_string(max_order));
  RecurrenceReport report;
  report.scanned_max_order = max_order;
  for (std::size_t k = 0; k <= max_order; ++k) {
    for (std::size_t m1 = 1; m1 + k <= M; ++m1) {
      const std::size_t equations = M - k - m1 + 1;
      if (equations < (m1 == 1 ? k + 1 : k + 2)) break;
      std::vector<std::vector<mpq_class>> rows;
      rows.reserve(equations);
      for (std::size_t m = m1; m + k <= M; ++m) {
        std::vector<mpq_class> row;
        for (std::size_t i = 0; i <= k; ++i) row.push_back(seq[m + i]);
        rows.push_back(std::move(row));
      }
      auto basis = rational_nullspace(std::move(rows), k + 1);
      if (basis.size() != 1) continue;
      auto r = std::move(basis.front());
      if (r[0] == 0 || r[k] == 0) continue;
      const mpq_class lead = r[k];
      for (auto& v : r) v /= lead;
      report.found = true;
      report.order = k;
      report.coefficients = std::move(r);
      report.valid_from = m1;
      return report;
    }
  }
  return report;
}

struct RationalityScan {
  std::vector<std::pair<std::size_t, bool>> flags;  // (n, det is zero)
  std::optional<std::size_t> zero_from;            // all computed flags zero for n >= this
};

inline RationalityScan rationality_scan(const RationalSequence& seq) {
  if (seq.size() < 3) throw DomainError("rationality_scan: need at least 3 terms");
  RationalityScan out;
  const std::size_t top = (seq.size() + 1) / 2;
  for (std::size_t n = 1; n <= top; ++n) out.flags.emplace_back(n, exact_hankel_det(seq, n, 0) == 0);
  for (std::size_t i = out.flags.size(); i-- > 0;) {
    if (!out.flags[i].second) break;
    out.zero_from = out.flags[i].first;
  }
  return out;
}

}  // namespace hzeta
