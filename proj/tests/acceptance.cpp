// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hzeta/hzeta.hpp"
#include "oracles.hpp"

using namespace hzeta;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int sig = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", sig, v);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Shared determinant results for zeta progressions, 20 verified digits.
const HankelResult& zeta_det(long a, long b, long n) {
  static std::map<std::tuple<long, long, long>, HankelResult> cache;
  auto key = std::make_tuple(a, b, n);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache
             .emplace(key, hankel_log_det(SeriesSpec::zeta(), IndexSequence::progression(a, b), ShiftMode::cross,
                                          n, 20))
             .first;
  return it->second;
}

Outcome zeta_oracle() {
  constexpr int kDigits = 1000;
  std::ostringstream detail;
  bool pass = true;
  for (long s : {2L, 3L}) {
    const auto t0 = Clock::now();
    const PrecisionContext ctx = PrecisionContext::for_digits(kDigits);
    BigReal lo = zeta_int(s, ctx);
    BigReal hi = zeta_int(s, ctx.widened());
    const int verified = agreeing_digits(lo, hi, kDigits + 50);
    const double secs = seconds_since(t0);
    // Independent references: MPFR's own zeta, and a direct-sum bracket
    // whose width fixes how many digits it certifies.
    const int vs_mpfr = agreeing_digits(hi, oracle::mpfr_zeta(static_cast<unsigned long>(s), hi.precision()), 2000);
    auto br = oracle::zeta_direct(static_cast<unsigned long>(s), 1000000, 256);
    const int certified = std::max(0, agreeing_digits(br.lo, br.hi, 70) - 1);
    BigReal hi256 = hi;
    hi256.round_to(256);
    const bool inside = br.lo < hi256 && hi256 < br.hi;
    const bool ok = verified >= kDigits && vs_mpfr >= kDigits && inside && secs < 10.0;
    pass = pass && ok;
    detail << "zeta(" << s << "): " << verified << " verified digits in " << fmt(secs, 3) << " s, " << vs_mpfr
           << " digits vs MPFR, inside direct-sum bracket (" << certified << " certified digits): "
           << (inside ? "yes" : "no") << "; ";
  }
  return {pass, detail.str()};
}

Outcome bracket_invariant() {
  for (long s = 3; s <= 200; ++s) {
    const unsigned bits = 2 * static_cast<unsigned>(s) + 64;
    const mpfr_prec_t w = bits + kGuardBits;
    BigReal e = zeta_int(s, {bits, 64}) - BigReal(1L, w);
    BigReal lo(w), hi(w);
    mpfr_set_ui_2exp(lo.get(), 1, -s, MPFR_RNDN);
    mpfr_set_ui_2exp(hi.get(), 1, 1 - s, MPFR_RNDN);
    if (!(lo < e && e < hi)) return {false, "fails at s = " + std::to_string(s)};
  }
  return {true, "2^-s < zeta(s) - 1 < 2^(1-s) for s = 3..200"};
}

Outcome oracle_equivalence() {
  std::ostringstream detail;
  bool pass = true;
  int worst_cb = 1000, worst_ms = 1000;
  const std::vector<std::pair<long, long>> pairs{{1, 0}, {1, 1}, {2, 1}, {2, 3}};
  for (auto [a, b] : pairs)
    for (long n = 1; n <= 4; ++n) {
      const auto& elim = zeta_det(a, b, n);
      auto cb = cauchy_binet_limit(a, b, n, 22, {256, 64});
      const BigReal log_cb = log(cb.value);
      const int d_cb = agreeing_digits(log_cb, elim.log_abs, 100);
      worst_cb = std::min(worst_cb, d_cb);
      if (d_cb < 20 || elim.sign != 1) {
        pass = false;
        detail << "CB mismatch (" << a << "," << b << ") n=" << n << " " << d_cb << " digits; ";
      }
      if (n <= 3) {
        auto ms = multisum_limit(SeriesSpec::zeta(), n, 22, {256, 64}, a, b);
        const bool pos = ms.value.sign() > 0;
        const int d_ms = pos ? std::min(agreeing_digits(log(ms.value), elim.log_abs, 100),
                                        agreeing_digits(log(ms.value), log_cb, 100))
                             : 0;
        worst_ms = std::min(worst_ms, d_ms);
        if (d_ms < 20) {
          pass = false;
          detail << "multisum mismatch (" << a << "," << b << ") n=" << n << " " << d_ms << " digits; ";
        }
      }
    }
  detail << "min agreement of log|H_n|: Cauchy-Binet " << worst_cb << " digits (n<=4), multisum " << worst_ms
         << " digits (n<=3)";
  return {pass, detail.str()};
}

Outcome positivity() {
  const auto t0 = Clock::now();
  int count = 0;
  for (long a : {1L, 2L})
    for (long b : {0L, 1L, 3L})
      for (long n = 1; n <= 20; ++n) {
        const auto& r = zeta_det(a, b, n);
        if (r.sign != 1)
          return {false, "sign " + std::to_string(r.sign) + " at a=" + std::to_string(a) + " b=" +
                             std::to_string(b) + " n=" + std::to_string(n)};
        ++count;
      }
  return {true, std::to_string(count) + " determinants, all sign +1, " + fmt(seconds_since(t0), 3) + " s"};
}

Outcome lgest_margin() {
  std::ostringstream detail;
  bool pass = true;
  for (auto [a, b] : std::vector<std::pair<long, long>>{{1, 0}, {2, 1}}) {
    std::vector<double> m;
    for (long n = 5; n <= 25; ++n) {
      const double nn = static_cast<double>(n);
      m.push_back((zeta_det(a, b, n).log_abs.to_double() - lgest_bound_log(a, n)) / (nn * nn));
    }
    std::vector<double> sorted = m;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    const double lo = median - 0.2 * std::fabs(median), hi = median + 0.2 * std::fabs(median);
    const bool ok = sorted.front() >= lo && sorted.back() <= hi;
    pass = pass && ok;
    // Least-squares rate d(margin)/d(log n), to show whether the drift is logarithmic.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      const double x = std::log(static_cast<double>(5 + i));
      sx += x;
      sy += m[i];
      sxx += x * x;
      sxy += x * m[i];
    }
    const double cnt = static_cast<double>(m.size());
    const double rate = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    detail << "(a=" << a << ",b=" << b << ") margin n=5.." << 25 << " from " << fmt(m.front(), 4) << " to "
           << fmt(m.back(), 4) << ", median " << fmt(median, 4) << ", window [" << fmt(lo, 4) << ", "
           << fmt(hi, 4) << "]" << (ok ? "" : " exceeded") << ", d(margin)/d(log n) = " << fmt(rate, 4) << "; ";
  }
  return {pass, detail.str()};
}

Outcome slope_behavior() {
  std::vector<long> ns;
  std::vector<BigReal> ys;
  std::vector<GrowthPoint> pts;
  for (long n = 5; n <= 30; ++n) {
    const auto& r = zeta_det(1, 0, n);
    ns.push_back(n);
    ys.push_back(r.log_abs);
    pts.push_back({n, r.log_abs.to_double()});
  }
  auto slopes = slope_sequence(pts);
  bool decreasing = true;
  for (std::size_t i = 1; i < slopes.size(); ++i) decreasing = decreasing && slopes[i].slope < slopes[i - 1].slope;
  const double last = slopes.back().slope;
  auto fit = fit_growth(ns, ys);
  const bool pass = decreasing && last <= -0.5 && fit.c1 <= -0.5;
  std::ostringstream detail;
  detail << "slope decreasing: " << (decreasing ? "yes" : "no") << ", slope(30) = " << fmt(last, 6)
         << ", fit c1 = " << fmt(fit.c1, 6) << " c2 = " << fmt(fit.c2, 6) << " (required c1 <= -0.5; expectation |c1+1| <= 0.3: "
         << (std::fabs(fit.c1 + 1) <= 0.3 ? "met" : "not met") << ")";
  return {pass, detail.str()};
}

Outcome integral_inequality() {
  const auto t0 = Clock::now();
  auto failure = first_integral_failure(3, 10000);
  const double secs = seconds_since(t0);
  if (failure) return {false, "fails at n = " + std::to_string(*failure)};
  return {secs < 1.0, "holds for n = 3..10000 in " + fmt(secs, 3) + " s"};
}

std::vector<std::vector<mpq_class>> hankel_matrix(const RationalSequence& s, std::size_t n) {
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = s[i + j + 1];
  return m;
}

Outcome kronecker_suite() {
  std::ostringstream detail;
  bool pass = true;
  RationalSequence geo{{1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024}, "geometric"};
  RationalSequence fib{{1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89}, "fibonacci"};
  const std::vector<std::pair<const RationalSequence*, std::vector<mpq_class>>> cases{{&geo, {-2, 1}},
                                                                                    {&fib, {-1, -1, 1}}};
  for (const auto& [seq, expect] : cases) {
    auto rec = find_recurrence(*seq, 3);
    const bool rec_ok = rec.found && rec.coefficients == expect && rec.valid_from == 1;
    bool zeros_ok = true;
    for (std::size_t n = expect.size(); 2 * n - 1 <= seq->size(); ++n)
      zeros_ok = zeros_ok && exact_hankel_det(*seq, n) == 0 && oracle::cofactor_det(hankel_matrix(*seq, n)) == 0;
    pass = pass && rec_ok && zeros_ok;
    detail << seq->origin << ": order " << rec.order << (rec_ok ? " ok" : " WRONG") << ", zero dets beyond order "
           << (zeros_ok ? "ok" : "WRONG") << "; ";
  }
  RationalSequence cat{{1, 1, 2, 5, 14, 42, 132, 429, 1430}, "catalan"};
  bool ones = true;
  for (std::size_t n = 1; n <= 4; ++n)
    ones = ones && exact_hankel_det(cat, n) == 1 && oracle::cofactor_det(hankel_matrix(cat, n)) == 1;
  pass = pass && ones;
  detail << "catalan: det = 1 for n = 1..4 " << (ones ? "ok" : "WRONG");
  return {pass, detail.str()};
}

Outcome witness_growth() {
  std::vector<HankelResult> res;
  for (long n = 8; n <= 20; ++n) res.push_back(zeta_det(1, 0, n));
  auto rows = witness_table(res);
  bool increasing = true, identity = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) increasing = increasing && rows[i].base > rows[i - 1].base;
    const auto& r = res[i];
    BigReal lhs = log10(rows[i].base) * witness_exponent(r.n) + r.log10_abs;
    BigReal tol(r.log10_abs.precision());
    mpfr_set_ui_2exp(tol.get(), 1, -static_cast<long>(r.precision_bits) + 32, MPFR_RNDN);
    identity = identity && abs(lhs) <= tol * (abs(r.log10_abs) + BigReal(1L, 64));
  }
  const double ratio = (rows.back().base / rows.front().base).to_double();
  const bool pass = increasing && ratio >= 1.5 && identity;
  std::ostringstream detail;
  detail << "C_8 = " << rows.front().base.to_string(8) << ", C_20 = " << rows.back().base.to_string(8)
         << ", ratio " << fmt(ratio, 5) << ", strictly increasing: " << (increasing ? "yes" : "no")
         << ", identity at working precision: " << (identity ? "yes" : "no");
  return {pass, detail.str()};
}

Outcome determinism() {
  ScanJob job;
  job.index = IndexSequence::progression(1, 0);
  job.n_max = 16;
  job.jobs = 1;
  ScanJob job8 = job;
  job8.jobs = 8;
  auto r1 = run_scan(job);
  auto r8 = run_scan(job8);
  const bool csv = format_scan_csv(job, r1, false) == format_scan_csv(job8, r8, false);
  const bool json = scan_json(job, r1, false).dump() == scan_json(job8, r8, false).dump();
  return {csv && json, std::string("CSV identical: ") + (csv ? "yes" : "no") + ", JSON identical: " +
                           (json ? "yes" : "no") + " (n_max = 16, wall time omitted)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"zeta oracle", zeta_oracle},
      {"bracket invariant", bracket_invariant},
      {"oracle equivalence", oracle_equivalence},
      {"positivity", positivity},
      {"normalized bound margin window", lgest_margin},
      {"slope behavior", slope_behavior},
      {"integral inequality", integral_inequality},
      {"Kronecker suite", kronecker_suite},
      {"witness growth", witness_growth},
      {"determinism", determinism},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
