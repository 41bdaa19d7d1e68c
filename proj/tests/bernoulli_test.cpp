#include <gtest/gtest.h>

#include <thread>

#include "hzeta/bernoulli.hpp"
#include "oracles.hpp"

using hzeta::bernoulli_numbers;

TEST(Bernoulli, SmallCases) {
  auto b = bernoulli_numbers(1);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b[0], 1);
  EXPECT_EQ(b[1], mpq_class(-1, 2));
  EXPECT_EQ(b[2], mpq_class(1, 6));
  EXPECT_EQ(bernoulli_numbers(2)[4], mpq_class(-1, 30));
}

TEST(Bernoulli, B10) { EXPECT_EQ(bernoulli_numbers(5)[10], mpq_class(5, 66)); }

TEST(Bernoulli, MatchesExplicitDoubleSum) {
  auto b = bernoulli_numbers(20);
  for (unsigned n = 0; n <= 40; ++n) EXPECT_EQ(b[n], hzeta::oracle::bernoulli_explicit(n)) << "n=" << n;
}

TEST(Bernoulli, OddIndicesVanish) {
  auto b = bernoulli_numbers(60);
  for (std::size_t n = 3; n < b.size(); n += 2) EXPECT_EQ(b[n], 0) << n;
}

TEST(Bernoulli, EvenSignsAlternate) {
  auto b = bernoulli_numbers(60);
  for (std::size_t m = 1; 2 * m < b.size(); ++m) EXPECT_EQ(sgn(b[2 * m]), m % 2 == 1 ? 1 : -1) << 2 * m;
}

TEST(Bernoulli, ShortRequestIsPrefixOfLongOne) {
  auto longer = bernoulli_numbers(80);
  auto shorter = bernoulli_numbers(7);
  ASSERT_EQ(shorter.size(), 15u);
  for (std::size_t i = 0; i < shorter.size(); ++i) EXPECT_EQ(shorter[i], longer[i]);
}

TEST(Bernoulli, ConcurrentCallersSeeTheSameTable) {
  std::vector<std::vector<mpq_class>> seen(8);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < seen.size(); ++t)
    pool.emplace_back([&, t] { seen[t] = bernoulli_numbers(100 + 10 * t); });
  for (auto& th : pool) th.join();
  for (std::size_t t = 1; t < seen.size(); ++t)
    for (std::size_t i = 0; i < seen[0].size(); ++i) ASSERT_EQ(seen[t][i], seen[0][i]);
}

TEST(Bernoulli, RejectsZeroCount) { EXPECT_THROW(bernoulli_numbers(0), hzeta::DomainError); }
