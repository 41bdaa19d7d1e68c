#pragma once

// Reduced-scale invariant suite behind `hzeta selftest` (n <= 6, 30 digits).
// Output is deterministic: no timings, fixed check order.

#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hzeta/asymptotics.hpp"
#include "hzeta/bernoulli.hpp"
#include "hzeta/diophantine.hpp"
#include "hzeta/dirichlet.hpp"
#include "hzeta/expansion.hpp"
#include "hzeta/hankel.hpp"
#include "hzeta/kronecker.hpp"

namespace hzeta {

inline bool run_selftest(std::ostream& out) {
  constexpr int kDigits = 30;
  const PrecisionContext ctx = PrecisionContext::for_digits(kDigits);
  std::vector<std::pair<std::string, std::function<bool()>>> checks;

  checks.emplace_back("zeta matches an independent MPFR evaluation (s = 2..12)", [&] {
    for (long s = 2; s <= 12; ++s) {
      BigReal z = zeta_int(s, ctx);
      BigReal ref(z.precision());
      mpfr_zeta_ui(ref.get(), static_cast<unsigned long>(s), kRound);
      if (agreeing_digits(z, ref, 100) < kDigits) return false;
    }
    return true;
  });

  checks.emplace_back("bracket 2^-s < zeta(s) - 1 < 2^-s+1 (s = 3..60)", [&] {
    for (long s = 3; s <= 60; ++s) {
      const unsigned bits = 2 * static_cast<unsigned>(s) + 64;
      BigReal e = zeta_int(s, {bits, 64}) - BigReal(1L, bits + kGuardBits);
      BigReal lo(bits + kGuardBits), hi(bits + kGuardBits);
      mpfr_set_ui_2exp(lo.get(), 1, -s, kRound);
      mpfr_set_ui_2exp(hi.get(), 1, -s + 1, kRound);
      if (!(lo < e && e < hi)) return false;
    }
    return true;
  });

  checks.emplace_back("zeta strictly decreasing (s = 2..40)", [&] {
    BigReal prev = zeta_int(2, ctx);
    for (long s = 3; s <= 40; ++s) {
      BigReal cur = zeta_int(s, ctx);
      if (!(cur < prev)) return false;
      prev = cur;
    }
    return true;
  });

  checks.emplace_back("periodic [1,-1] equals (1 - 2^(1-s)) zeta(s) (s = 2..12)", [&] {
    const auto eta = SeriesSpec::periodic({1, -1});
    for (long s = 2; s <= 12; ++s) {
      BigReal lhs = series_value(eta, s, ctx);
      BigReal f(1L, lhs.precision());
      BigReal p(lhs.precision());
      mpfr_set_ui_2exp(p.get(), 1, 1 - s, kRound);
      BigReal rhs = (f - p) * zeta_int(s, ctx);
      if (agreeing_digits(lhs, rhs, 100) < kDigits) return false;
    }
    return true;
  });

  checks.emplace_back("Hankel determinants of zeta progressions are positive (n <= 6)", [&] {
    for (long a : {1L, 2L})
      for (long b : {0L, 1L, 3L})
        for (long n = 1; n <= 6; ++n)
          if (hankel_log_det(SeriesSpec::zeta(), IndexSequence::progression(a, b), ShiftMode::cross, n, kDigits)
                  .sign != 1)
            return false;
    return true;
  });

  checks.emplace_back("elimination matches the positive expansion (a=1, b=0, n <= 3)", [&] {
    for (long n = 1; n <= 3; ++n) {
      auto elim = hankel_log_det(SeriesSpec::zeta(), IndexSequence::progression(1, 0), ShiftMode::cross, n, kDigits);
      auto cb = cauchy_binet_limit(1, 0, n, 22, {256, 64});
      if (agreeing_digits(log(cb.value), elim.log_abs, 100) < 20) return false;
    }
    return true;
  });

  checks.emplace_back("sum (i-1) log i exceeds its integral bound (n = 3..2000)", [] {
    return !first_integral_failure(3, 2000).has_value();
  });

  checks.emplace_back("Kronecker: Fibonacci recurrence and Catalan determinants", [] {
    RationalSequence fib{{1, 1, 2, 3, 5, 8, 13, 21, 34, 55}, "fibonacci"};
    auto rec = find_recurrence(fib, 3);
    if (!rec.found || rec.order != 2 || rec.coefficients != std::vector<mpq_class>{-1, -1, 1}) return false;
    RationalSequence cat{{1, 1, 2, 5, 14, 42, 132, 429, 1430}, "catalan"};
    for (std::size_t n = 1; n <= 5; ++n)
      if (exact_hankel_det(cat, n) != 1) return false;
    return true;
  });

  checks.emplace_back("witness identity C_n^(n(3n+1)/2) |H_n| = 1 (n <= 6)", [&] {
    for (long n = 1; n <= 6; ++n) {
      auto res = hankel_log_det(SeriesSpec::zeta(), IndexSequence::progression(1, 0), ShiftMode::cross, n, kDigits);
      auto row = growth_witness(res);
      BigReal lhs = log10(row.base) * witness_exponent(n) + res.log10_abs;
      if (abs(lhs) > BigReal(1e-25, 128)) return false;
    }
    return true;
  });

  checks.emplace_back("growth fit recovers exact synthetic coefficients", [] {
    std::vector<long> ns;
    std::vector<BigReal> ys;
    for (long n = 5; n <= 15; ++n) {
      BigReal n2(n * n, 256);
      ns.push_back(n);
      ys.push_back(BigReal(-1L, 256) * n2 * log_of(static_cast<unsigned long>(n), 256) + n2 / 2L);
    }
    auto fit = fit_growth(ns, ys);
    return std::fabs(fit.c1 + 1) < 1e-15 && std::fabs(fit.c2 - 0.5) < 1e-15 && fit.rms_residual < 1e-20;
  });

  bool all = true;
  for (const auto& [name, check] : checks) {
    bool ok = false;
    try {
      ok = check();
    } catch (const std::exception&) {
      ok = false;
    }
    out << (ok ? "PASS " : "FAIL ") << name << "\n";
    all = all && ok;
  }
  out << (all ? "selftest: all checks passed" : "selftest: FAILED") << "\n";
  return all;
}

}  // namespace hzeta
