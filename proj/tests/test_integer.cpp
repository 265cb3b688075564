#include "qk/integer.hpp"

#include <gtest/gtest.h>

#include <limits>
#include <random>

using qk::Integer;
using Big = Integer::Big;

TEST(Integer, SmallArithmetic) {
  Integer a = 7, b = -3;
  EXPECT_EQ(a + b, Integer(4));
  EXPECT_EQ(a - b, Integer(10));
  EXPECT_EQ(a * b, Integer(-21));
  EXPECT_EQ(-a, Integer(-7));
  EXPECT_TRUE(Integer(0).is_zero());
  EXPECT_TRUE(Integer(1).is_one());
  EXPECT_EQ(Integer(-5).sign(), -1);
  EXPECT_LT(b, a);
}

TEST(Integer, PromotesOnOverflowAndDemotes) {
  const Integer max = std::numeric_limits<std::int64_t>::max();
  Integer x = max;
  x += 1;
  EXPECT_FALSE(x.fits_int64());
  EXPECT_EQ(x.to_string(), "9223372036854775808");
  EXPECT_THROW((void)x.to_int64(), std::overflow_error);
  x -= 1;
  EXPECT_TRUE(x.fits_int64());
  EXPECT_EQ(x, max);

  Integer sq = max;
  sq *= max;
  EXPECT_EQ(sq.to_big(), Big(std::numeric_limits<std::int64_t>::max()) * std::numeric_limits<std::int64_t>::max());

  const Integer min = std::numeric_limits<std::int64_t>::min();
  EXPECT_EQ((-min).to_string(), "9223372036854775808");
}

TEST(Integer, DecimalRoundTrip) {
  for (const char* s : {"0", "-1", "12345678901234567890123456789", "-98765432109876543210"})
    EXPECT_EQ(Integer(std::string_view(s)).to_string(), s);
  EXPECT_THROW(Integer(std::string_view("12a")), std::invalid_argument);
  EXPECT_THROW(Integer(std::string_view("")), std::invalid_argument);
}

TEST(Integer, AgreesWithMultiprecisionReference) {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<std::int64_t> dist(std::numeric_limits<std::int64_t>::min() / 2,
                                                   std::numeric_limits<std::int64_t>::max() / 2);
  for (int trial = 0; trial < 2000; ++trial) {
    Integer a = dist(rng), b = dist(rng), c = dist(rng);
    Big A = a.to_big(), B = b.to_big(), C = c.to_big();
    Integer r = a * b;
    r.add_product(b, c);
    r -= a * c * b;
    EXPECT_EQ(r.to_big(), A * B + B * C - A * C * B);
    EXPECT_EQ(r == Integer(A * B + B * C - A * C * B), true);
    const auto expected = A < B ? std::strong_ordering::less
                          : A > B ? std::strong_ordering::greater
                                  : std::strong_ordering::equal;
    EXPECT_EQ(a <=> b, expected);
  }
}
