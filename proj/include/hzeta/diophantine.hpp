#pragma once

// Denominator-growth witnesses from determinant magnitudes.
//
// If every zeta(a m + b) up to m = 2n were rational with common denominators
// q_m, then q_{n+1} ... q_{2n} |H_n| >= 1 whenever H_n != 0. A uniform bound
// q_m <= C^m makes the product at most C^{n(3n+1)/2}, so each computed H_n
// refutes every base C below C_n = |H_n|^{-2/(n(3n+1))}.

#include <algorithm>
#include <string>
#include <vector>

#include "hzeta/bigreal.hpp"
#include "hzeta/errors.hpp"
#include "hzeta/hankel.hpp"

namespace hzeta {

struct WitnessRow {
  long n = 0;
  BigReal log10_inv_h;          // -log10 |H_n|
  BigReal product_bound_log10;  // lower bound for log10(q_{n+1} ... q_{2n})
  BigReal base;                 // C_n
  bool trivial = false;         // C_n <= 1 refutes nothing
  std::string exponent_basis;   // "progression" or a caveat for other index kinds
};

inline BigReal product_bound(const HankelResult& res) {
  if (res.sign == 0) throw DomainError("product_bound: determinant is zero");
  return -res.log10_abs;
}

// Exponent n(3n+1)/2 of the uniform bound on q_{n+1} ... q_{2n}.
inline long witness_exponent(long n) { return n * (3 * n + 1) / 2; }

inline WitnessRow growth_witness(const HankelResult& res) {
  if (res.sign == 0) throw DomainError("growth_witness: determinant is zero");
  WitnessRow row;
  row.n = res.n;
  row.log10_inv_h = -res.log10_abs;
  row.product_bound_log10 = row.log10_inv_h;
  BigReal e = row.log10_inv_h / witness_exponent(res.n);
  row.base = exp10(e);
  row.trivial = !(row.base > BigReal(1L, row.base.precision()));
  row.exponent_basis = res.index.rfind("progression", 0) == 0
                           ? "progression"
                           : "progression exponent; no sharper exponent established for this index kind";
  return row;
}

// Rows sorted by n; every input must share one series, index and shift mode.
inline std::vector<WitnessRow> witness_table(std::vector<const HankelResult*> results) {
  std::vector<WitnessRow> rows;
  if (results.empty()) return rows;
  const HankelResult& first = *results.front();
  for (const auto* r : results) {
    if (r->index != first.index || r->series != first.series || r->shift_mode != first.shift_mode)
      throw DomainError("witness_table: mixed progressions (" + first.index + " vs " + r->index + ")");
    if (r->sign == 0) throw DomainError("witness_table: zero determinant at n = " + std::to_string(r->n));
  }
  std::sort(results.begin(), results.end(), [](const auto* x, const auto* y) { return x->n < y->n; });
  for (const auto* r : results) rows.push_back(growth_witness(*r));
  return rows;
}

inline std::vector<WitnessRow> witness_table(const std::vector<HankelResult>& results) {
  std::vector<const HankelResult*> ptrs;
  for (const auto& r : results) ptrs.push_back(&r);
  return witness_table(std::move(ptrs));
}

}  // namespace hzeta
