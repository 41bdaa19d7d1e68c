#pragma once

// Certified values of zeta(s) and Dirichlet series at integers s >= 2.
//
// Every evaluator returns a BigReal carried at ctx.bits + kGuardBits whose
// absolute error is below 2^-ctx.bits. Results depend only on (series, s,
// ctx), never on cache state, so repeated calls are bit-identical.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "hzeta/bernoulli.hpp"
#include "hzeta/bigreal.hpp"
#include "hzeta/errors.hpp"

namespace hzeta {

inline constexpr unsigned kGuardBits = 16;

struct ZetaKind {};

// a_k = coefficients[(k - 1) mod q].
struct PeriodicKind {
  std::vector<mpq_class> coefficients;
};

// a_k supplied by the caller, with |a_k| <= bound * k^(1 - delta) trusted.
// If `support` is set, a_k = 0 for every k > *support and the sum is finite.
struct CustomKind {
  std::function<mpq_class(std::uint64_t)> coefficient;
  mpq_class bound;
  std::optional<std::uint64_t> support;
  std::string label = "custom";
};

struct SeriesSpec {
  std::variant<ZetaKind, PeriodicKind, CustomKind> kind;
  mpq_class delta = 1;

  static SeriesSpec zeta() { return {ZetaKind{}, 1}; }

  static SeriesSpec periodic(std::vector<mpq_class> coefficients) {
    SeriesSpec s{PeriodicKind{std::move(coefficients)}, 1};
    s.validate();
    return s;
  }

  static SeriesSpec custom(std::function<mpq_class(std::uint64_t)> coefficient, mpq_class bound,
                           mpq_class delta = 1, std::optional<std::uint64_t> support = std::nullopt,
                           std::string label = "custom") {
    SeriesSpec s{CustomKind{std::move(coefficient), std::move(bound), support, std::move(label)},
                 std::move(delta)};
    s.validate();
    return s;
  }

  // Finitely supported coefficient list a_1..a_L; bound is max |a_k| * k^(delta-1) with delta = 1.
  static SeriesSpec finite(std::vector<mpq_class> coefficients, std::string label = "custom") {
    mpq_class bound = 0;
    for (const auto& c : coefficients) bound = std::max(bound, mpq_class(::abs(c)));
    const auto support = static_cast<std::uint64_t>(coefficients.size());
    auto table = std::make_shared<std::vector<mpq_class>>(std::move(coefficients));
    return custom(
        [table](std::uint64_t k) -> mpq_class {
          return (k >= 1 && k <= table->size()) ? (*table)[k - 1] : mpq_class(0);
        },
        bound, 1, support, std::move(label));
  }

  bool is_zeta() const { return std::holds_alternative<ZetaKind>(kind); }

  void validate() const {
    if (delta <= 0 || delta > 1) throw DomainError("SeriesSpec: delta must lie in (0, 1]");
    if (std::holds_alternative<ZetaKind>(kind) && delta != 1)
      throw DomainError("SeriesSpec: zeta requires delta = 1");
    if (const auto* p = std::get_if<PeriodicKind>(&kind)) {
      if (p->coefficients.empty()) throw DomainError("SeriesSpec: periodic series needs period >= 1");
      if (delta != 1) throw DomainError("SeriesSpec: periodic series requires delta = 1");
    }
    if (const auto* c = std::get_if<CustomKind>(&kind)) {
      if (!c->coefficient) throw DomainError("SeriesSpec: custom series needs a coefficient oracle");
      if (c->bound < 0) throw DomainError("SeriesSpec: custom bound must be >= 0");
    }
  }

  mpq_class coefficient(std::uint64_t k) const {
    if (std::holds_alternative<ZetaKind>(kind)) return 1;
    if (const auto* p = std::get_if<PeriodicKind>(&kind))
      return p->coefficients[(k - 1) % p->coefficients.size()];
    return std::get<CustomKind>(kind).coefficient(k);
  }

  // Period of the coefficient sequence; 1 for zeta, 0 when not periodic.
  std::uint64_t period() const {
    if (std::holds_alternative<ZetaKind>(kind)) return 1;
    if (const auto* p = std::get_if<PeriodicKind>(&kind)) return p->coefficients.size();
    return 0;
  }

  std::string summary() const {
    if (std::holds_alternative<ZetaKind>(kind)) return "zeta";
    std::ostringstream os;
    if (const auto* p = std::get_if<PeriodicKind>(&kind)) {
      os << "periodic[";
      for (std::size_t i = 0; i < p->coefficients.size(); ++i) os << (i ? "," : "") << p->coefficients[i];
      os << "]";
      return os.str();
    }
    os << std::get<CustomKind>(kind).label;
    return os.str();
  }
};

struct SeriesOptions {
  // Largest direct-summation cutoff accepted for custom series.
  std::uint64_t max_terms = std::uint64_t{1} << 22;
};

namespace detail {

struct EulerMaclaurinPlan {
  std::uint64_t terms = 1;  // N
  unsigned corrections = 0;  // J
};

// Natural log of the first omitted Euler-Maclaurin term for
// sum_{k>=0} (q k + r)^-s after N direct terms and J corrections, using
// |B_{2J+2}|/(2J+2)! <= 4 (2 pi)^-(2J+2).
inline double em_log_remainder(double s, double q, double y, unsigned corrections) {
  const double m = 2.0 * corrections;
  return std::log(4.0) - (m + 2) * std::log(2 * M_PI) + std::lgamma(s + m + 1) - std::lgamma(s) +
         (m + 1) * std::log(q) - (s + m + 1) * std::log(y);
}

// Minimizes N + 2J subject to the remainder bound; a pure function of its inputs.
inline EulerMaclaurinPlan plan_euler_maclaurin(unsigned long s, unsigned long q, unsigned long r,
                                               unsigned target_bits) {
  const double target = -(static_cast<double>(target_bits) + 4) * std::log(2.0);
  const unsigned max_j = std::min(600u, 16u + target_bits / 8);
  EulerMaclaurinPlan best{};
  double best_cost = INFINITY;
  const double sd = static_cast<double>(s), qd = static_cast<double>(q), rd = static_cast<double>(r);
  for (unsigned j = 0; j <= max_j; ++j) {
    const double m = 2.0 * j;
    // Solve em_log_remainder(s, q, y, j) <= target for y = q N + r.
    const double log_y = (std::log(4.0) - (m + 2) * std::log(2 * M_PI) + std::lgamma(sd + m + 1) -
                          std::lgamma(sd) + (m + 1) * std::log(qd) - target) /
                         (sd + m + 1);
    if (log_y > 40) continue;
    const double y = std::exp(log_y);
    const double n = std::max(1.0, std::ceil((y - rd) / qd));
    const double cost = n + 2.0 * j;
    if (cost < best_cost) {
      best_cost = cost;
      best = {static_cast<std::uint64_t>(n), j};
    }
  }
  if (!std::isfinite(best_cost)) throw BudgetExceeded("Euler-Maclaurin plan: no feasible (N, J)");
  return best;
}

inline unsigned bit_length(std::uint64_t v) {
  unsigned b = 0;
  while (v) { ++b; v >>= 1; }
  return b;
}

// sum_{k>=0} (q k + r)^-s with absolute error < 2^-target_bits, returned at
// precision target_bits + kGuardBits.
inline BigReal shifted_power_sum(unsigned long s, unsigned long q, unsigned long r, unsigned target_bits) {
  EulerMaclaurinPlan plan = plan_euler_maclaurin(s, q, r, target_bits);
  for (int attempt = 0; attempt < 8; ++attempt) {
    const mpfr_prec_t w = target_bits + kGuardBits + 8 + 2 * bit_length(plan.terms + plan.corrections + 2);

    BigReal sum(w);
    BigReal term(w);
    for (std::uint64_t k = 0; k < plan.terms; ++k) {
      mpfr_ui_pow_ui(term.get(), q * k + r, s, kRound);
      mpfr_ui_div(term.get(), 1, term.get(), kRound);
      sum += term;
    }
    const unsigned long y = q * plan.terms + r;
    BigReal y_big(static_cast<long>(y), w);
    BigReal p = inv_pow(y, s, w);  // y^-s

    // Integral and boundary terms.
    BigReal integral = p * y_big;
    integral /= static_cast<long>(q * (s - 1));
    sum += integral;
    sum += p / 2L;

    // fac_j = (s)_{2j-1} q^{2j-1} y^{-s-2j+1}
    const auto bern = detail::BernoulliCache::instance().even(plan.corrections + 1);
    BigReal fac = p * static_cast<long>(s) * static_cast<long>(q) / y_big;
    const BigReal q2y2 = BigReal(static_cast<long>(q), w) * BigReal(static_cast<long>(q), w) / (y_big * y_big);
    mpz_class factorial = 2;  // (2j)!
    for (unsigned j = 1; j <= plan.corrections; ++j) {
      BigReal c(bern[j - 1], w);
      c /= BigReal(factorial, w);
      sum += c * fac;
      fac *= q2y2;
      fac *= static_cast<long>(s + 2 * j - 1);
      fac *= static_cast<long>(s + 2 * j);
      factorial *= (2 * j + 1) * (2 * j + 2);
    }
    // Remainder is bounded by the first omitted term.
    BigReal bound(bern[plan.corrections], 64);
    bound = abs(bound) / BigReal(factorial, 64) * fac;
    BigReal limit(64);
    mpfr_set_ui_2exp(limit.get(), 1, -static_cast<long>(target_bits) - 2, kRound);
    if (abs(bound) < limit) {
      sum.round_to(target_bits + kGuardBits);
      return sum;
    }
    plan.terms *= 2;
    plan.corrections += 2;
  }
  throw UnverifiableError("Euler-Maclaurin remainder could not be certified");
}

inline void require_argument(long s, const char* who) {
  if (s < 2) throw DomainError(std::string(who) + ": argument s = " + std::to_string(s) + " is below 2");
}

}  // namespace detail

// zeta(s) for integer s >= 2 by Euler-Maclaurin with a certified remainder.
inline BigReal zeta_int(long s, const PrecisionContext& ctx) {
  detail::require_argument(s, "zeta_int");
  ctx.validate();
  return detail::shifted_power_sum(static_cast<unsigned long>(s), 1, 1, ctx.bits);
}

// f(s) = sum_k a_k k^-s for integer s >= 2.
//
// Periodic series split into residue classes, each summed by the same
// Euler-Maclaurin scheme as zeta. Custom series are summed directly up to a
// cutoff K where bound * K^(2-delta-s) / (s+delta-2) < 2^-(bits+1); the
// certificate is only as good as the caller's bound.
inline BigReal series_value(const SeriesSpec& spec, long s, const PrecisionContext& ctx,
                            const SeriesOptions& opts = {}) {
  detail::require_argument(s, "series_value");
  ctx.validate();
  spec.validate();
  const mpfr_prec_t out_prec = ctx.bits + kGuardBits;

  if (spec.is_zeta()) return zeta_int(s, ctx);

  if (const auto* p = std::get_if<PeriodicKind>(&spec.kind)) {
    const unsigned long q = p->coefficients.size();
    mpq_class weight = 1;
    for (const auto& c : p->coefficients) weight += ::abs(c);
    const mpz_class whole = weight.get_num() / weight.get_den() + 1;
    const auto extra = static_cast<unsigned>(mpz_sizeinbase(whole.get_mpz_t(), 2)) + 1;
    const unsigned bits = ctx.bits + extra;
    BigReal total(bits + kGuardBits);
    for (unsigned long r = 1; r <= q; ++r) {
      const mpq_class& c = p->coefficients[r - 1];
      if (c == 0) continue;
      total += BigReal(c, bits + kGuardBits) * detail::shifted_power_sum(static_cast<unsigned long>(s), q, r, bits);
    }
    total.round_to(out_prec);
    return total;
  }

  const auto& custom = std::get<CustomKind>(spec.kind);
  std::uint64_t cutoff = 0;
  if (custom.bound == 0) {
    cutoff = 0;
  } else {
    const double expo = static_cast<double>(s) + spec.delta.get_d() - 2.0;
    const double log_k = (std::log(custom.bound.get_d()) - std::log(expo) +
                          (ctx.bits + 2) * std::log(2.0)) / expo;
    const double k = std::ceil(std::exp(std::min(log_k, 80.0)));
    if (custom.support && static_cast<double>(*custom.support) <= k) {
      cutoff = *custom.support;
    } else if (k > static_cast<double>(opts.max_terms)) {
      std::ostringstream os;
      os << "series_value: tail bound needs K >= " << k << " terms, above the ceiling "
         << opts.max_terms;
      throw BudgetExceeded(os.str());
    } else {
      cutoff = static_cast<std::uint64_t>(k);
    }
  }
  if (custom.support) cutoff = std::min(cutoff, *custom.support);

  const mpfr_prec_t w = ctx.bits + kGuardBits + 8 + 2 * detail::bit_length(cutoff + 1);
  BigReal sum(w);
  for (std::uint64_t k = 1; k <= cutoff; ++k) {
    mpq_class a = custom.coefficient(k);
    if (a == 0) continue;
    BigReal t = inv_pow(k, static_cast<unsigned long>(s), w);
    sum += t * BigReal(a, w);
  }
  sum.round_to(out_prec);
  return sum;
}

}  // namespace hzeta
