#pragma once

// Hankel matrices of Dirichlet-series values and their determinants by
// pivoted big-float elimination under a two-run verification loop.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "hzeta/bigreal.hpp"
#include "hzeta/dirichlet.hpp"
#include "hzeta/errors.hpp"

namespace hzeta {

// The argument sequence n_1 < n_2 < ... feeding the matrix entries.
struct IndexSequence {
  enum class Kind { progression, quadratic, explicit_list };

  Kind kind = Kind::progression;
  long step = 1;    // a (progression) or c (quadratic)
  long offset = 0;  // b (progression) or d (quadratic)
  std::vector<long> values;

  static IndexSequence progression(long a, long b) {
    if (a < 1) throw DomainError("progression: a must be >= 1");
    if (b < 0) throw DomainError("progression: b must be >= 0");
    return {Kind::progression, a, b, {}};
  }
  static IndexSequence quadratic(long c, long d) {
    if (c < 1) throw DomainError("quadratic: c must be >= 1");
    return {Kind::quadratic, c, d, {}};
  }
  static IndexSequence explicit_list(std::vector<long> v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] < 2) throw DomainError("explicit sequence: entry " + std::to_string(i + 1) + " is below 2");
      if (i > 0 && v[i] <= v[i - 1])
        throw DomainError("explicit sequence: entry " + std::to_string(i + 1) + " is not increasing");
    }
    return {Kind::explicit_list, 0, 0, std::move(v)};
  }

  bool is_progression() const { return kind == Kind::progression; }

  // n_m for m >= 1.
  long at(long m) const {
    switch (kind) {
      case Kind::progression: return step * m + offset;
      case Kind::quadratic: return step * m * m + offset;
      case Kind::explicit_list:
        if (m < 1 || static_cast<std::size_t>(m) > values.size())
          throw DomainError("explicit sequence: index " + std::to_string(m) + " beyond the list of " +
                            std::to_string(values.size()));
        return values[static_cast<std::size_t>(m) - 1];
    }
    return 0;
  }

  std::string summary() const {
    std::ostringstream os;
    switch (kind) {
      case Kind::progression: os << "progression:" << step << "," << offset; break;
      case Kind::quadratic: os << "quadratic:" << step << "," << offset; break;
      case Kind::explicit_list:
        os << "explicit:";
        for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << values[i];
        break;
    }
    return os.str();
  }
};

// cross: entry (i, j) = f(n_{i+j}); sequence: entry (i, j) = f(n_{i+j-1}).
enum class ShiftMode { cross, sequence };

inline const char* to_string(ShiftMode m) { return m == ShiftMode::cross ? "cross" : "sequence"; }

enum class DetMethod { elimination, expansion };

inline const char* to_string(DetMethod m) { return m == DetMethod::elimination ? "elimination" : "expansion"; }

struct HankelResult {
  long n = 0;
  int sign = 0;
  BigReal log_abs;    // natural log |H_n|
  BigReal log10_abs;  // log10 |H_n|
  int verified_digits = 0;
  unsigned precision_bits = 0;
  DetMethod method = DetMethod::elimination;
  std::string series;
  std::string index;
  ShiftMode shift_mode = ShiftMode::cross;
};

// Argument feeding entry (i, j), 1-based.
inline long hankel_argument(const IndexSequence& index, ShiftMode mode, long i, long j) {
  return index.at(mode == ShiftMode::cross ? i + j : i + j - 1);
}

inline BigMatrix build_matrix(const SeriesSpec& spec, const IndexSequence& index, ShiftMode mode, long n,
                              const PrecisionContext& ctx, const SeriesOptions& opts = {}) {
  if (n < 1) throw DomainError("build_matrix: n must be >= 1");
  // Antidiagonal t = i + j - 2 (0-based) carries one shared value.
  std::vector<BigReal> diag;
  diag.reserve(static_cast<std::size_t>(2 * n - 1));
  for (long t = 0; t < 2 * n - 1; ++t) {
    const long m = (mode == ShiftMode::cross) ? t + 2 : t + 1;
    const long arg = index.at(m);
    if (arg < 2) {
      std::ostringstream os;
      os << "build_matrix: argument n_" << m << " = " << arg << " is below 2";
      throw DomainError(os.str());
    }
    if (m > 1 && arg <= index.at(m - 1)) throw DomainError("build_matrix: index sequence is not increasing");
    diag.push_back(series_value(spec, arg, ctx, opts));
  }
  BigMatrix M(static_cast<std::size_t>(n), static_cast<std::size_t>(n), ctx.bits + kGuardBits);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) M(i, j) = diag[static_cast<std::size_t>(i + j)];
  return M;
}

struct DetResult {
  int sign = 0;
  BigReal log_abs;  // sum of log |pivot|
};

// Gaussian elimination with partial pivoting at ctx.bits + kGuardBits.
// Pivot: largest absolute value, ties to the smallest row index.
inline DetResult det_elimination(BigMatrix M, const PrecisionContext& ctx) {
  if (M.rows() != M.cols()) throw DomainError("det_elimination: matrix is not square");
  const std::size_t n = M.rows();
  const mpfr_prec_t w = ctx.bits + kGuardBits;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!M(i, j).is_finite()) throw DomainError("det_elimination: non-finite entry");
      M(i, j).round_to(w);
    }

  int sign = 1;
  BigReal log_abs(w);
  BigReal factor(w);
  BigReal tmp(w);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (mpfr_cmpabs(M(r, k).get(), M(piv, k).get()) > 0) piv = r;
    if (M(piv, k).is_zero())
      throw PrecisionExhausted("det_elimination: zero pivot at column " + std::to_string(k + 1) +
                               " (precision exhausted)");
    if (piv != k) {
      M.swap_rows(piv, k);
      sign = -sign;
    }
    const BigReal& p = M(k, k);
    if (p.sign() < 0) sign = -sign;
    log_abs += log(abs(p));
    for (std::size_t r = k + 1; r < n; ++r) {
      mpfr_div(factor.get(), M(r, k).get(), p.get(), kRound);
      for (std::size_t c = k + 1; c < n; ++c) {
        mpfr_mul(tmp.get(), factor.get(), M(k, c).get(), kRound);
        mpfr_sub(M(r, c).get(), M(r, c).get(), tmp.get(), kRound);
      }
    }
  }
  return {sign, log_abs};
}

struct HankelOptions {
  unsigned verify_margin_bits = 64;
  int max_retries = 6;
  unsigned max_bits = 1u << 18;
  SeriesOptions series;
};

namespace detail {

// Starting precision seeded from the expected growth -a n^2 log n of
// |H_n|; for non-progression indices a is replaced by the mean step of the
// arguments actually used.
inline unsigned starting_bits(const IndexSequence& index, ShiftMode mode, long n, int target_digits) {
  double a = static_cast<double>(index.step);
  if (!index.is_progression()) {
    const long first = hankel_argument(index, mode, 1, 1);
    const long last = hankel_argument(index, mode, n, n);
    a = n > 1 ? static_cast<double>(last - first) / static_cast<double>(2 * n - 2) : 1.0;
    a = std::max(a, 1.0);
  }
  const double nn = static_cast<double>(n);
  const double growth = (a * nn * nn * std::log(std::max(nn, 1.0)) + 2 * a * nn * nn) / std::log(2.0);
  const double bits = growth + target_digits * std::log(10.0) / std::log(2.0) + 10 * nn + 64;
  return static_cast<unsigned>(std::ceil(bits));
}

struct Run {
  DetResult det;
  BigReal log10_abs;
};

inline Run run_once(const SeriesSpec& spec, const IndexSequence& index, ShiftMode mode, long n, unsigned bits,
                    const HankelOptions& opts) {
  PrecisionContext ctx{bits, opts.verify_margin_bits};
  DetResult det = det_elimination(build_matrix(spec, index, mode, n, ctx, opts.series), ctx);
  BigReal l10 = det.log_abs / ln10(det.log_abs.precision());
  return {std::move(det), std::move(l10)};
}

}  // namespace detail

// log |H_n| with a sign, accepted once two runs `verify_margin_bits` apart
// agree on the sign and on at least `target_digits` significant digits of
// log10 |H_n|. Precision doubles on disagreement or on a vanishing pivot.
inline HankelResult hankel_log_det(const SeriesSpec& spec, const IndexSequence& index, ShiftMode mode, long n,
                                   int target_digits, const HankelOptions& opts = {}) {
  if (target_digits < 1) throw DomainError("hankel_log_det: target_digits must be >= 1");
  if (n < 1) throw DomainError("hankel_log_det: n must be >= 1");
  spec.validate();
  unsigned bits = std::max(128u, detail::starting_bits(index, mode, n, target_digits));
  std::ostringstream history;
  for (int attempt = 0; attempt <= opts.max_retries && bits <= opts.max_bits; ++attempt, bits *= 2) {
    try {
      detail::Run lo = detail::run_once(spec, index, mode, n, bits, opts);
      detail::Run hi = detail::run_once(spec, index, mode, n, bits + opts.verify_margin_bits, opts);
      const int cap = static_cast<int>(bits * 0.30102999566398120);
      const int agree = (lo.det.sign == hi.det.sign) ? agreeing_digits(lo.log10_abs, hi.log10_abs, cap) : 0;
      history << " [" << bits << " bits: " << agree << " digits]";
      if (lo.det.sign == hi.det.sign && agree >= target_digits) {
        HankelResult res;
        res.n = n;
        res.sign = hi.det.sign;
        res.log_abs = std::move(hi.det.log_abs);
        res.log10_abs = std::move(hi.log10_abs);
        res.verified_digits = agree;
        res.precision_bits = bits + opts.verify_margin_bits;
        res.method = DetMethod::elimination;
        res.series = spec.summary();
        res.index = index.summary();
        res.shift_mode = mode;
        return res;
      }
    } catch (const PrecisionExhausted&) {
      history << " [" << bits << " bits: zero pivot]";
    }
  }
  throw UnverifiableError("hankel_log_det: n = " + std::to_string(n) + " unverifiable at configured ceiling;" +
                          history.str());
}

}  // namespace hzeta
