#pragma once

// Explicit majorants for log |H_n| and empirical growth fits.

#include <cmath>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "hzeta/bigreal.hpp"
#include "hzeta/errors.hpp"

namespace hzeta {

// log n! - a * sum_{i<=n} i log i.
inline double lgest_bound_log(long a, long n) {
  if (a < 1) throw DomainError("lgest_bound_log: a must be >= 1");
  if (n < 1) throw DomainError("lgest_bound_log: n must be >= 1");
  double s = 0;
  for (long i = 2; i <= n; ++i) s += static_cast<double>(i) * std::log(static_cast<double>(i));
  return std::lgamma(static_cast<double>(n) + 1) - static_cast<double>(a) * s;
}

// sum_{i<=n} (i-1) log i.
inline double lest_exponent(long n) {
  if (n < 1) throw DomainError("lest_exponent: n must be >= 1");
  double s = 0;
  for (long i = 2; i <= n; ++i) s += static_cast<double>(i - 1) * std::log(static_cast<double>(i));
  return s;
}

// Closed form of int_2^n (x-2) log x dx.
inline double integral_lower_bound(long n) {
  auto F = [](double x) { return (x * x / 2 - 2 * x) * std::log(x) - x * x / 4 + 2 * x; };
  return F(static_cast<double>(n)) - F(2.0);
}

// sum_{i<=n} (i-1) log i > int_2^n (x-2) log x dx, for n >= 3.
inline bool integral_inequality_holds(long n) {
  if (n < 3) throw DomainError("integral_inequality_holds: n must be >= 3");
  return lest_exponent(n) > integral_lower_bound(n);
}

// First n in [lo, hi] where the inequality fails, with the sum kept running.
inline std::optional<long> first_integral_failure(long lo, long hi) {
  if (lo < 3) throw DomainError("first_integral_failure: range must start at n >= 3");
  double s = lest_exponent(lo - 1);
  for (long n = lo; n <= hi; ++n) {
    s += static_cast<double>(n - 1) * std::log(static_cast<double>(n));
    if (!(s > integral_lower_bound(n))) return n;
  }
  return std::nullopt;
}

struct GrowthPoint {
  long n = 0;
  double log_abs = 0;
};

struct SlopePoint {
  long n = 0;
  double slope = 0;
};

// log_abs / (n^2 log n) per point.
inline std::vector<SlopePoint> slope_sequence(const std::vector<GrowthPoint>& points) {
  std::vector<SlopePoint> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    if (p.n <= 1) throw DomainError("slope_sequence: n must be >= 2 (got " + std::to_string(p.n) + ")");
    if (!std::isfinite(p.log_abs)) throw DomainError("slope_sequence: non-finite log_abs");
    const double nn = static_cast<double>(p.n);
    out.push_back({p.n, p.log_abs / (nn * nn * std::log(nn))});
  }
  return out;
}

struct FitResult {
  double c1 = 0;  // coefficient of n^2 log n
  double c2 = 0;  // coefficient of n^2
  double rms_residual = 0;
  long n_min = 0;
  long n_max = 0;
};

// Least squares for log_abs ~ c1 n^2 log n + c2 n^2, solved through the
// normal equations at `bits` of precision.
inline FitResult fit_growth(const std::vector<long>& ns, const std::vector<BigReal>& log_abs, unsigned bits = 256) {
  if (ns.size() != log_abs.size()) throw DomainError("fit_growth: size mismatch");
  if (ns.size() < 3) throw DomainError("fit_growth: need at least 3 points");
  std::set<long> distinct(ns.begin(), ns.end());
  if (distinct.size() != ns.size()) throw DomainError("fit_growth: n values must be distinct");

  const mpfr_prec_t w = bits;
  BigReal s11(w), s12(w), s22(w), r1(w), r2(w);
  std::vector<std::pair<BigReal, BigReal>> basis;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 2) throw DomainError("fit_growth: n must be >= 2");
    BigReal n2(ns[i] * ns[i], w);
    BigReal f1 = n2 * log_of(static_cast<unsigned long>(ns[i]), w);
    BigReal y = log_abs[i];
    y.round_to(std::max<mpfr_prec_t>(w, y.precision()));
    s11 += f1 * f1;
    s12 += f1 * n2;
    s22 += n2 * n2;
    r1 += f1 * y;
    r2 += n2 * y;
    basis.emplace_back(std::move(f1), std::move(n2));
  }
  BigReal det = s11 * s22 - s12 * s12;
  BigReal scale = s11 * s22;
  if (det.is_zero() || abs(det) < abs(scale) * BigReal(1e-30, w))
    throw DomainError("fit_growth: degenerate design matrix");
  BigReal c1 = (r1 * s22 - r2 * s12) / det;
  BigReal c2 = (s11 * r2 - s12 * r1) / det;

  BigReal sq(w);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    BigReal res = log_abs[i] - c1 * basis[i].first - c2 * basis[i].second;
    sq += res * res;
  }
  sq /= static_cast<long>(ns.size());
  FitResult out;
  out.c1 = c1.to_double();
  out.c2 = c2.to_double();
  out.rms_residual = sqrt(sq).to_double();
  out.n_min = *distinct.begin();
  out.n_max = *distinct.rbegin();
  return out;
}

inline FitResult fit_growth(const std::vector<GrowthPoint>& points, unsigned bits = 256) {
  std::vector<long> ns;
  std::vector<BigReal> ys;
  for (const auto& p : points) {
    ns.push_back(p.n);
    ys.emplace_back(p.log_abs, bits);
  }
  return fit_growth(ns, ys, bits);
}

}  // namespace hzeta
