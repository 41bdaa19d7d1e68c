#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "hzeta/hankel.hpp"
#include "hzeta/kronecker.hpp"
#include "hzeta/rational.hpp"
#include "oracles.hpp"

using namespace hzeta;

namespace {

RationalSequence seq_of(std::vector<mpq_class> v) { return {std::move(v), "test"}; }

RationalSequence geometric(long ratio, std::size_t len) {
  std::vector<mpq_class> v;
  mpq_class c = 1;
  for (std::size_t i = 0; i < len; ++i, c *= ratio) v.push_back(c);
  return seq_of(std::move(v));
}

RationalSequence fibonacci(std::size_t len) {
  std::vector<mpq_class> v{1, 1};
  while (v.size() < len) v.push_back(v[v.size() - 1] + v[v.size() - 2]);
  v.resize(len);
  return seq_of(std::move(v));
}

const RationalSequence kCatalan = seq_of({1, 1, 2, 5, 14, 42, 132, 429, 1430});

std::vector<std::vector<mpq_class>> hankel_of(const RationalSequence& s, std::size_t n, std::size_t offset) {
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = s[offset + i + j + 1];
  return m;
}

}  // namespace

TEST(ExactHankel, Examples) {
  EXPECT_EQ(exact_hankel_det(seq_of({1, 1, 1, 1, 1}), 2), 0);
  EXPECT_EQ(exact_hankel_det(fibonacci(7), 3), 0);
  EXPECT_EQ(exact_hankel_det(seq_of({1, 2, 5, 14, 42}), 2), 1);
}

TEST(ExactHankel, CatalanAllOnes) {
  for (std::size_t n = 1; n <= 5; ++n) {
    EXPECT_EQ(exact_hankel_det(kCatalan, n), 1) << n;
    EXPECT_EQ(oracle::cofactor_det(hankel_of(kCatalan, n, 0)), 1) << n;
  }
}

TEST(ExactHankel, AgreesWithCofactorOnRandomRationals) {
  std::mt19937 rng(20261016);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<mpq_class> v;
    for (int i = 0; i < 11; ++i) {
      mpq_class q(num(rng), den(rng));
      q.canonicalize();
      v.push_back(q);
    }
    auto s = seq_of(v);
    for (std::size_t n = 1; n <= 5; ++n)
      for (std::size_t off = 0; off + 2 * n - 1 <= s.size() && off <= 1; ++off)
        ASSERT_EQ(exact_hankel_det(s, n, off), oracle::cofactor_det(hankel_of(s, n, off)))
            << "trial " << trial << " n " << n << " offset " << off;
  }
}

TEST(ExactHankel, TooShort) { EXPECT_THROW(exact_hankel_det(seq_of({1, 2, 3}), 3), DomainError); }

TEST(Recurrence, Geometric) {
  auto r = find_recurrence(geometric(2, 7), 3);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.order, 1u);
  EXPECT_EQ(r.coefficients, (std::vector<mpq_class>{-2, 1}));
  EXPECT_EQ(r.valid_from, 1u);
}

TEST(Recurrence, Fibonacci) {
  auto r = find_recurrence(fibonacci(10), 3);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.order, 2u);
  EXPECT_EQ(r.coefficients, (std::vector<mpq_class>{-1, -1, 1}));
}

TEST(Recurrence, SquaresNeedTheCubedDifference) {
  std::vector<mpq_class> v;
  for (long m = 1; m <= 10; ++m) v.push_back(m * m);
  auto r = find_recurrence(seq_of(v), 4);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.order, 3u);
  EXPECT_EQ(r.coefficients, (std::vector<mpq_class>{-1, 3, -3, 1}));
}

TEST(Recurrence, EventuallyValid) {
  auto r = find_recurrence(seq_of({7, 1, 2, 4, 8, 16, 32, 64, 128}), 2);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.order, 1u);
  EXPECT_EQ(r.valid_from, 2u);
  EXPECT_TRUE(verify_recurrence(seq_of({7, 1, 2, 4, 8, 16, 32, 64, 128}), r.coefficients, r.valid_from));
}

TEST(Recurrence, CatalanHasNone) {
  auto r = find_recurrence(kCatalan, 4);
  EXPECT_FALSE(r.found);
  EXPECT_EQ(r.scanned_max_order, 4u);
}

TEST(Recurrence, ReportedRecurrencesHoldOnTheTail) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-3, 3), init(-5, 5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = 1 + trial % 3;
    std::vector<mpq_class> r(k);
    for (auto& c : r) c = coef(rng);
    if (r[0] == 0) r[0] = 1;
    std::vector<mpq_class> v;
    for (std::size_t i = 0; i < k; ++i) v.push_back(init(rng));
    while (v.size() < 12) {
      mpq_class next = 0;
      for (std::size_t i = 0; i < k; ++i) next -= r[i] * v[v.size() - k + i];
      v.push_back(next);
    }
    auto s = seq_of(v);
    auto rep = find_recurrence(s, 4);
    ASSERT_TRUE(rep.found) << trial;
    EXPECT_LE(rep.order, k);
    EXPECT_TRUE(verify_recurrence(s, rep.coefficients, rep.valid_from)) << trial;
  }
}

TEST(Recurrence, Preconditions) {
  EXPECT_THROW(find_recurrence(fibonacci(6), 3), DomainError);
  EXPECT_THROW(find_recurrence(fibonacci(6), 0), DomainError);
}

TEST(RationalityScan, Examples) {
  auto ones = rationality_scan(seq_of(std::vector<mpq_class>(9, 1)));
  for (auto [n, zero] : ones.flags) EXPECT_EQ(zero, n >= 2) << n;
  EXPECT_EQ(ones.zero_from, 2u);

  auto g = rationality_scan(geometric(3, 9));
  for (auto [n, zero] : g.flags) EXPECT_EQ(zero, n >= 2) << n;

  auto c = rationality_scan(kCatalan);
  EXPECT_EQ(c.flags.size(), 5u);
  for (auto [n, zero] : c.flags) EXPECT_FALSE(zero) << n;
  EXPECT_FALSE(c.zero_from.has_value());
}

TEST(RationalityScan, KroneckerConsistency) {
  // A recurrence of order k makes every Hankel determinant of size > k vanish.
  for (const auto& s : {geometric(2, 11), fibonacci(11)}) {
    auto rep = find_recurrence(s, 3);
    ASSERT_TRUE(rep.found);
    for (std::size_t n = rep.order + 1; 2 * n - 1 <= s.size(); ++n) EXPECT_EQ(exact_hankel_det(s, n), 0) << n;
  }
}

TEST(RationalityScan, FloatingPathAgreesWithExact) {
  const unsigned bits = 256;
  for (const auto& s : {fibonacci(9), kCatalan}) {
    for (std::size_t n = 1; n <= 5; ++n) {
      BigMatrix m(n, n, bits);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = BigReal(s[i + j + 1], bits);
      BigReal mag(bits);
      bool tiny = false;
      try {
        auto d = det_elimination(m, {bits, 64});
        tiny = d.log_abs < BigReal(-0.5 * bits * std::log(2.0), bits);
      } catch (const PrecisionExhausted&) {
        tiny = true;
      }
      EXPECT_EQ(tiny, exact_hankel_det(s, n) == 0) << s.origin << " n=" << n;
    }
  }
}

TEST(RationalInput, ParsesAndReportsLines) {
  std::istringstream ok("# header\n1\n\n-3/6\n+4, extra\n");
  auto v = read_rational_lines(ok);
  EXPECT_EQ(v, (std::vector<mpq_class>{1, mpq_class(-1, 2), 4}));

  std::istringstream bad("1\n2\nthree\n");
  try {
    read_rational_lines(bad);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_rational("1/0"), DomainError);
  EXPECT_THROW(parse_rational("1/-2"), DomainError);
}
