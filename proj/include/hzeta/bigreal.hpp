#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hzeta/errors.hpp"

namespace hzeta {

// All big-float arithmetic rounds to nearest.
inline constexpr mpfr_rnd_t kRound = MPFR_RNDN;

struct PrecisionContext {
  unsigned bits = 128;
  unsigned verify_margin_bits = 64;

  void validate() const {
    if (bits < 64) throw DomainError("PrecisionContext: bits must be >= 64");
    if (verify_margin_bits < 32) throw DomainError("PrecisionContext: verify_margin_bits must be >= 32");
  }

  PrecisionContext widened() const { return {bits + verify_margin_bits, verify_margin_bits}; }

  static PrecisionContext for_digits(unsigned digits, unsigned margin = 64) {
    // 3.3219... bits per decimal digit, plus a small guard.
    unsigned b = static_cast<unsigned>(digits * 3.3219280948873623) + 16;
    return {std::max(b, 64u), margin};
  }
};

// RAII wrapper around mpfr_t. Binary operators produce a result at the larger
// of the operand precisions.
class BigReal {
public:
  explicit BigReal(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }

  BigReal(int x, mpfr_prec_t prec) : BigReal(static_cast<long>(x), prec) {}
  BigReal(long x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, kRound); }
  BigReal(double x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, kRound); }
  BigReal(const mpq_class& q, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_q(v_, q.get_mpq_t(), kRound); }
  BigReal(const mpz_class& z, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_z(v_, z.get_mpz_t(), kRound); }
  BigReal(const std::string& s, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    if (mpfr_set_str(v_, s.c_str(), 10, kRound) != 0) {
      mpfr_clear(v_);
      throw DomainError("BigReal: cannot parse '" + s + "'");
    }
  }

  BigReal(const BigReal& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, kRound); }
  BigReal(BigReal&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  BigReal& operator=(const BigReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, kRound);
    }
    return *this;
  }
  BigReal& operator=(BigReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigReal() { mpfr_clear(v_); }

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(v_); }

  // Rounds the stored value to a new precision.
  void round_to(mpfr_prec_t prec) { mpfr_prec_round(v_, prec, kRound); }

  int sign() const noexcept { return mpfr_sgn(v_); }
  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  double to_double() const noexcept { return mpfr_get_d(v_, kRound); }

  // Binary exponent e with 0.5 <= |x| / 2^e < 1; meaningless for zero.
  long exponent2() const noexcept { return mpfr_get_exp(v_); }

  // Decimal rendering with `digits` significant digits, "%.*Rg" style.
  std::string to_string(int digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  BigReal& operator+=(const BigReal& o) { widen(o); mpfr_add(v_, v_, o.v_, kRound); return *this; }
  BigReal& operator-=(const BigReal& o) { widen(o); mpfr_sub(v_, v_, o.v_, kRound); return *this; }
  BigReal& operator*=(const BigReal& o) { widen(o); mpfr_mul(v_, v_, o.v_, kRound); return *this; }
  BigReal& operator/=(const BigReal& o) { widen(o); mpfr_div(v_, v_, o.v_, kRound); return *this; }
  BigReal& operator*=(long k) { mpfr_mul_si(v_, v_, k, kRound); return *this; }
  BigReal& operator/=(long k) { mpfr_div_si(v_, v_, k, kRound); return *this; }

  friend BigReal operator+(BigReal a, const BigReal& b) { return a += b; }
  friend BigReal operator-(BigReal a, const BigReal& b) { return a -= b; }
  friend BigReal operator*(BigReal a, const BigReal& b) { return a *= b; }
  friend BigReal operator/(BigReal a, const BigReal& b) { return a /= b; }
  friend BigReal operator*(BigReal a, long k) { return a *= k; }
  friend BigReal operator/(BigReal a, long k) { return a /= k; }
  friend BigReal operator-(BigReal a) { mpfr_neg(a.v_, a.v_, kRound); return a; }

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

  // Bit-identical comparison including precision.
  bool identical(const BigReal& o) const {
    return precision() == o.precision() &&
           (mpfr_equal_p(v_, o.v_) != 0 || (mpfr_nan_p(v_) && mpfr_nan_p(o.v_)));
  }

private:
  void widen(const BigReal& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), kRound);
  }

  mpfr_t v_;
};

inline BigReal abs(BigReal x) { mpfr_abs(x.get(), x.get(), kRound); return x; }
inline BigReal log(BigReal x) { mpfr_log(x.get(), x.get(), kRound); return x; }
inline BigReal log10(BigReal x) { mpfr_log10(x.get(), x.get(), kRound); return x; }
inline BigReal exp(BigReal x) { mpfr_exp(x.get(), x.get(), kRound); return x; }
inline BigReal exp10(BigReal x) { mpfr_exp10(x.get(), x.get(), kRound); return x; }
inline BigReal sqrt(BigReal x) { mpfr_sqrt(x.get(), x.get(), kRound); return x; }
inline BigReal pow(BigReal x, long k) { mpfr_pow_si(x.get(), x.get(), k, kRound); return x; }
inline BigReal pow(BigReal x, const BigReal& y) {
  if (y.precision() > x.precision()) x.round_to(y.precision());
  mpfr_pow(x.get(), x.get(), y.get(), kRound);
  return x;
}

// k^{-s} for positive integers k, s.
inline BigReal inv_pow(unsigned long k, unsigned long s, mpfr_prec_t prec) {
  BigReal r(prec);
  mpfr_ui_pow_ui(r.get(), k, s, kRound);
  mpfr_ui_div(r.get(), 1, r.get(), kRound);
  return r;
}

inline BigReal log_of(unsigned long k, mpfr_prec_t prec) {
  BigReal r(prec);
  mpfr_log_ui(r.get(), k, kRound);
  return r;
}

inline BigReal pi(mpfr_prec_t prec) {
  BigReal r(prec);
  mpfr_const_pi(r.get(), kRound);
  return r;
}

inline BigReal ln10(mpfr_prec_t prec) { return log_of(10, prec); }

// Number of leading significant decimal digits on which x and y agree,
// capped at `cap`. Two exact zeros agree on `cap` digits.
inline int agreeing_digits(const BigReal& x, const BigReal& y, int cap) {
  BigReal diff = abs(x - y);
  if (diff.is_zero()) return cap;
  BigReal scale = abs(y);
  if (abs(x) > scale) scale = abs(x);
  if (scale.is_zero()) return 0;
  BigReal rel = log10(diff / scale);
  double d = -rel.to_double();
  if (d <= 0) return 0;
  return std::min(cap, static_cast<int>(d));
}

// Dense row-major square or rectangular matrix of BigReal.
class BigMatrix {
public:
  BigMatrix() = default;
  BigMatrix(std::size_t rows, std::size_t cols, mpfr_prec_t prec)
      : rows_(rows), cols_(cols), data_(rows * cols, BigReal(prec)) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  BigReal& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigReal& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigReal> data_;
};

}  // namespace hzeta
