#pragma once

// Series-expansion routes to H_n that never form a matrix, used as
// independent cross-checks of det_elimination.
//
// Writing f(a(i+j)+b) = sum_k a_k k^-b x_k^i x_k^j with x_k = k^-a, row
// linearity plus the Vandermonde formula give the ordered multi-sum
//
//   H_n = sum_{k_1..k_n} prod_i a_{k_i} k_i^{-b-a(i+1)} prod_{i<j} (x_{k_j} - x_{k_i}),
//
// and symmetrizing over orderings (Cauchy-Binet) gives the positive sum
//
//   H_n = sum_{k_1<...<k_n} prod_i k_i^{-(2a+b)} prod_{i<j} (x_{k_i} - x_{k_j})^2
//
// for zeta. Both are truncated at k <= K; every partial sum S(K') for
// K' <= K falls out of one enumeration, which feeds a polynomial
// extrapolation in 1/K.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hzeta/bigreal.hpp"
#include "hzeta/dirichlet.hpp"
#include "hzeta/errors.hpp"

namespace hzeta {

struct ExpansionOptions {
  // Largest number of subsets (Cauchy-Binet) or tuples (multi-sum) enumerated.
  std::uint64_t max_terms = std::uint64_t{1} << 24;
};

struct TruncatedSum {
  BigReal value;          // S(K)
  BigReal tail_estimate;  // S(K) - S(floor(K/2))
  std::uint64_t cutoff = 0;
  std::vector<BigReal> partials;  // partials[k] = S(k), k = 0..K
};

namespace detail {

inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  long double r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (r > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::uint64_t>(r + 0.5L);
}

inline std::uint64_t power_capped(std::uint64_t base, std::uint64_t e, std::uint64_t cap) {
  long double r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    r *= static_cast<long double>(base);
    if (r > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::uint64_t>(r);
}

inline TruncatedSum finish(std::vector<BigReal> by_max, std::uint64_t cutoff, mpfr_prec_t w) {
  TruncatedSum out{BigReal(w), BigReal(w), cutoff, {}};
  out.partials.reserve(by_max.size());
  BigReal running(w);
  for (auto& c : by_max) {
    running += c;
    out.partials.push_back(running);
  }
  out.value = out.partials.back();
  out.tail_estimate = out.value - out.partials[cutoff / 2];
  return out;
}

}  // namespace detail

// Truncated positive Cauchy-Binet sum for zeta along the progression
// a(i+j)+b. Nondecreasing in K.
inline TruncatedSum cauchy_binet_det(long a, long b, long n, std::uint64_t K, const PrecisionContext& ctx,
                                     const ExpansionOptions& opts = {}) {
  if (n < 1 || K < static_cast<std::uint64_t>(n)) throw DomainError("cauchy_binet_det: need 1 <= n <= K");
  if (a < 1 || b < 0 || 2 * a + b < 2) throw DomainError("cauchy_binet_det: progression arguments below 2");
  const std::uint64_t count = detail::binomial_capped(K, static_cast<std::uint64_t>(n), opts.max_terms);
  if (count > opts.max_terms)
    throw BudgetExceeded("cauchy_binet_det: C(K, n) exceeds the cap of " + std::to_string(opts.max_terms));

  const mpfr_prec_t w = ctx.bits + kGuardBits;
  std::vector<BigReal> x, weight;
  x.reserve(K + 1);
  weight.reserve(K + 1);
  x.emplace_back(w);
  weight.emplace_back(w);
  for (std::uint64_t k = 1; k <= K; ++k) {
    x.push_back(inv_pow(k, static_cast<unsigned long>(a), w));
    weight.push_back(inv_pow(k, static_cast<unsigned long>(2 * a + b), w));
  }

  std::vector<BigReal> by_max(K + 1, BigReal(w));
  const std::size_t depth = static_cast<std::size_t>(n);
  std::vector<std::uint64_t> idx(depth);
  std::vector<BigReal> prod(depth + 1, BigReal(w));
  prod[0] = BigReal(1L, w);
  BigReal diff(w);

  // Iterative enumeration of k_1 < ... < k_n with prefix products.
  std::size_t d = 0;
  idx[0] = 0;
  while (true) {
    ++idx[d];
    const std::uint64_t limit = K - (depth - 1 - d);
    if (idx[d] > limit) {
      if (d == 0) break;
      --d;
      continue;
    }
    const std::uint64_t k = idx[d];
    BigReal& p = prod[d + 1];
    mpfr_mul(p.get(), prod[d].get(), weight[k].get(), kRound);
    for (std::size_t i = 0; i < d; ++i) {
      mpfr_sub(diff.get(), x[idx[i]].get(), x[k].get(), kRound);
      mpfr_mul(p.get(), p.get(), diff.get(), kRound);
      mpfr_mul(p.get(), p.get(), diff.get(), kRound);
    }
    if (d + 1 == depth) {
      by_max[k] += p;
    } else {
      ++d;
      idx[d] = k;
    }
  }
  return detail::finish(std::move(by_max), K, w);
}

// The unsymmetrized multi-sum over ordered tuples for a general series along
// a(i+j)+b (a = 1, b = 0 is f(i+j)).
inline TruncatedSum multisum_det(const SeriesSpec& spec, long n, std::uint64_t K, const PrecisionContext& ctx,
                                 long a = 1, long b = 0, const ExpansionOptions& opts = {}) {
  spec.validate();
  if (n < 1 || K < static_cast<std::uint64_t>(n)) throw DomainError("multisum_det: need 1 <= n <= K");
  if (a < 1 || b < 0 || 2 * a + b < 2) throw DomainError("multisum_det: progression arguments below 2");
  const std::uint64_t count = detail::power_capped(K, static_cast<std::uint64_t>(n), opts.max_terms);
  if (count > opts.max_terms)
    throw BudgetExceeded("multisum_det: K^n exceeds the cap of " + std::to_string(opts.max_terms));

  const mpfr_prec_t w = ctx.bits + kGuardBits;
  const std::size_t depth = static_cast<std::size_t>(n);
  std::vector<BigReal> x(K + 1, BigReal(w));
  std::vector<BigReal> coeff(K + 1, BigReal(w));
  std::vector<BigReal> log_k(K + 1, BigReal(w));
  for (std::uint64_t k = 1; k <= K; ++k) {
    x[k] = inv_pow(k, static_cast<unsigned long>(a), w);
    coeff[k] = BigReal(spec.coefficient(k), w);
  }
  // row_weight[d][k] = a_k k^{-b-a(d+2)} for 0-based row d.
  std::vector<std::vector<BigReal>> row_weight(depth);
  for (std::size_t d = 0; d < depth; ++d) {
    row_weight[d].reserve(K + 1);
    row_weight[d].emplace_back(w);
    for (std::uint64_t k = 1; k <= K; ++k)
      row_weight[d].push_back(coeff[k] * inv_pow(k, static_cast<unsigned long>(b + a * static_cast<long>(d + 2)), w));
  }

  std::vector<BigReal> by_max(K + 1, BigReal(w));
  std::vector<std::uint64_t> idx(depth, 0);
  std::vector<std::uint64_t> running_max(depth + 1, 0);
  std::vector<BigReal> prod(depth + 1, BigReal(w));
  prod[0] = BigReal(1L, w);
  BigReal diff(w);

  std::size_t d = 0;
  idx[0] = 0;
  while (true) {
    ++idx[d];
    if (idx[d] > K) {
      if (d == 0) break;
      --d;
      continue;
    }
    const std::uint64_t k = idx[d];
    bool repeated = false;
    for (std::size_t i = 0; i < d && !repeated; ++i) repeated = (idx[i] == k);
    if (repeated || row_weight[d][k].is_zero()) continue;  // Vandermonde or coefficient vanishes
    BigReal& p = prod[d + 1];
    mpfr_mul(p.get(), prod[d].get(), row_weight[d][k].get(), kRound);
    for (std::size_t i = 0; i < d; ++i) {
      mpfr_sub(diff.get(), x[k].get(), x[idx[i]].get(), kRound);
      mpfr_mul(p.get(), p.get(), diff.get(), kRound);
    }
    running_max[d + 1] = std::max(running_max[d], k);
    if (d + 1 == depth) {
      by_max[running_max[d + 1]] += p;
    } else {
      ++d;
      idx[d] = 0;
    }
  }
  return detail::finish(std::move(by_max), K, w);
}

// Value at h = 0 of the polynomial in h = 1/K through (1/K_j, S(K_j)),
// K_j = K - j * stride for j = 0..degree (Neville's scheme).
inline BigReal extrapolate_reciprocal(const std::vector<BigReal>& partials, std::uint64_t K, unsigned degree,
                                      std::uint64_t stride) {
  if (stride == 0 || K < static_cast<std::uint64_t>(degree) * stride + 1 || K >= partials.size())
    throw DomainError("extrapolate_reciprocal: not enough partial sums");
  const mpfr_prec_t w = partials[K].precision();
  std::vector<BigReal> h, t;
  for (unsigned j = 0; j <= degree; ++j) {
    const std::uint64_t kj = K - j * stride;
    h.push_back(BigReal(1L, w) / static_cast<long>(kj));
    t.push_back(partials[kj]);
  }
  // P_{i..i+m}(0) = (h_{i+m} P_{i..i+m-1} - h_i P_{i+1..i+m}) / (h_{i+m} - h_i)
  for (unsigned m = 1; m <= degree; ++m)
    for (unsigned i = 0; i + m <= degree; ++i) {
      BigReal num = h[i + m] * t[i] - h[i] * t[i + 1];
      t[i] = num / (h[i + m] - h[i]);
    }
  return t[0];
}

struct OracleEstimate {
  BigReal value;
  int agreed_digits = 0;      // between the extrapolations at K/2 and K
  std::uint64_t cutoff = 0;   // final K
  BigReal raw_tail_estimate;  // S(K) - S(K/2) of the plain truncated sum
};

struct ExtrapolationOptions {
  std::uint64_t initial_cutoff = 16;
  std::uint64_t max_cutoff = 256;
  ExpansionOptions expansion;
};

namespace detail {

// Extrapolation nodes spread over [K/2, K], each a multiple of `period`.
inline BigReal extrapolate_window(const std::vector<BigReal>& partials, std::uint64_t K, std::uint64_t period) {
  const std::uint64_t top = K - K % period;
  std::uint64_t stride = period;
  unsigned degree = static_cast<unsigned>((top / 2) / stride);
  while (degree > 24) {
    stride += period;
    degree = static_cast<unsigned>((top / 2) / stride);
  }
  degree = std::max(degree, 1u);
  return extrapolate_reciprocal(partials, top, degree, stride);
}

template <class SumFn>
OracleEstimate extrapolated_limit(SumFn&& sum_at, long n, int digits, std::uint64_t period,
                                  const ExtrapolationOptions& opts) {
  std::uint64_t K = std::max<std::uint64_t>(opts.initial_cutoff, 4 * static_cast<std::uint64_t>(n));
  K = ((K + period - 1) / period) * period;
  std::optional<OracleEstimate> best;
  while (true) {
    TruncatedSum s;
    try {
      s = sum_at(K);
    } catch (const BudgetExceeded&) {
      if (best) return *best;
      throw;
    }
    BigReal full = extrapolate_window(s.partials, K, period);
    BigReal half = extrapolate_window(s.partials, K / 2 >= 4 * period ? K / 2 : K - period, period);
    const int cap = static_cast<int>(full.precision() * 0.30102999566398120);
    OracleEstimate est{full, agreeing_digits(full, half, cap), K, s.tail_estimate};
    if (!best || est.agreed_digits >= best->agreed_digits) best = est;
    if (est.agreed_digits >= digits || 2 * K > opts.max_cutoff) return *best;
    K *= 2;
  }
}

}  // namespace detail

// H_n^{(a,b)}[zeta] from the positive sum: K doubles until the
// extrapolations from windows ending at K/2 and K agree to `digits`
// significant digits (or the cutoff/budget ceiling is reached).
inline OracleEstimate cauchy_binet_limit(long a, long b, long n, int digits, const PrecisionContext& ctx,
                                         const ExtrapolationOptions& opts = {}) {
  return detail::extrapolated_limit(
      [&](std::uint64_t K) { return cauchy_binet_det(a, b, n, K, ctx, opts.expansion); }, n, digits, 1, opts);
}

// Same for the ordered multi-sum. Periodic coefficients restrict the
// extrapolation nodes to multiples of the period; a finitely supported custom
// series is exact once K covers the support.
inline OracleEstimate multisum_limit(const SeriesSpec& spec, long n, int digits, const PrecisionContext& ctx,
                                     long a = 1, long b = 0, const ExtrapolationOptions& opts = {}) {
  std::uint64_t period = spec.period();
  if (period == 0) {
    const auto& custom = std::get<CustomKind>(spec.kind);
    if (!custom.support) throw DomainError("multisum_limit: custom series must be finitely supported");
    const std::uint64_t K = std::max<std::uint64_t>(*custom.support, static_cast<std::uint64_t>(n));
    TruncatedSum s = multisum_det(spec, n, K, ctx, a, b, opts.expansion);
    const int cap = static_cast<int>(s.value.precision() * 0.30102999566398120);
    return {s.value, cap, K, s.tail_estimate};
  }
  return detail::extrapolated_limit(
      [&](std::uint64_t K) { return multisum_det(spec, n, K, ctx, a, b, opts.expansion); }, n, digits, period,
      opts);
}

}  // namespace hzeta
