#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "hzeta/errors.hpp"

namespace hzeta {

namespace detail {

// Process-wide cache of exact Bernoulli numbers B_0..B_{size-1}.
// Readers share the lock; extension is serialized and monotone.
class BernoulliCache {
public:
  static BernoulliCache& instance() {
    static BernoulliCache cache;
    return cache;
  }

  // Returns B_0..B_{2*count}.
  std::vector<mpq_class> prefix(std::size_t count) {
    const std::size_t want = 2 * count + 1;
    {
      std::shared_lock lock(mutex_);
      if (values_.size() >= want) return {values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(want)};
    }
    std::unique_lock lock(mutex_);
    extend(want);
    return {values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(want)};
  }

  // B_{2j} for j = 1..count, the only values Euler-Maclaurin needs.
  std::vector<mpq_class> even(std::size_t count) {
    const std::size_t want = 2 * count + 1;
    auto pick = [&] {
      std::vector<mpq_class> out;
      out.reserve(count);
      for (std::size_t j = 1; j <= count; ++j) out.push_back(values_[2 * j]);
      return out;
    };
    {
      std::shared_lock lock(mutex_);
      if (values_.size() >= want) return pick();
    }
    std::unique_lock lock(mutex_);
    extend(want);
    return pick();
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return values_.size();
  }

  // Test hook: overwrite a cached entry so fault-detection paths can be exercised.
  void corrupt_for_testing(std::size_t index, const mpq_class& value) {
    std::unique_lock lock(mutex_);
    extend(index + 1);
    values_[index] = value;
  }

  void reset_for_testing() {
    std::unique_lock lock(mutex_);
    values_.clear();
    common_den_ = 2;
  }

private:
  BernoulliCache() = default;

  // Defining recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0, solved for B_m.
  // Odd B_j vanish for j >= 3, so only j = 0, 1 and even j contribute.
  void extend(std::size_t want) {
    if (values_.empty()) {
      values_.emplace_back(1);
      common_den_ = 2;
    }
    if (values_.size() < want && values_.size() == 1) values_.emplace_back(-1, 2);
    for (std::size_t m = values_.size(); m < want; ++m) {
      if (m % 2 == 1) {
        values_.emplace_back(0);
        continue;
      }
      // Sum over j with a common denominator to avoid a gcd per term.
      const mpz_class& den = common_den_;
      mpz_class acc = 0;
      mpz_class binom = 1;  // C(m+1, j)
      for (std::size_t j = 0; j < m; ++j) {
        if (j == 1 || j % 2 == 0) {
          const mpq_class& b = values_[j];
          mpz_class scale = den / b.get_den();
          acc += binom * b.get_num() * scale;
        }
        binom = binom * static_cast<unsigned long>(m + 1 - j) / static_cast<unsigned long>(j + 1);
      }
      mpq_class bm(-acc, den * static_cast<unsigned long>(m + 1));
      bm.canonicalize();
      values_.push_back(bm);
      common_den_ = lcm(common_den_, mpz_class(bm.get_den()));
    }
  }

  static mpz_class lcm(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
  }

  mutable std::shared_mutex mutex_;
  std::vector<mpq_class> values_;
  mpz_class common_den_ = 2;  // lcm of all cached denominators
};

}  // namespace detail

// Exact Bernoulli numbers B_0..B_{2*count} (B_1 = -1/2 convention).
inline std::vector<mpq_class> bernoulli_numbers(std::size_t count) {
  if (count < 1) throw DomainError("bernoulli_numbers: count must be >= 1");
  return detail::BernoulliCache::instance().prefix(count);
}

}  // namespace hzeta
