#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "dilhof/errors.hpp"
#include "dilhof/intmath.hpp"

using namespace dilhof;

TEST_CASE("isqrt at perfect squares and their neighbours") {
  for (std::uint64_t r : {0ull, 1ull, 2ull, 3ull, 1000ull, 4294967295ull}) {
    const std::uint64_t sq = r * r;
    CHECK(isqrt(sq) == r);
    CHECK(is_perfect_square(sq));
    if (sq > 0) CHECK(isqrt(sq - 1) == r - 1);
    if (r > 0) CHECK(isqrt(sq + 1) == r);
  }
  CHECK(isqrt(std::numeric_limits<std::uint64_t>::max()) == 4294967295ull);
  CHECK(ceil_sqrt(17) == 5);
  CHECK(ceil_sqrt(16) == 4);
  CHECK_FALSE(is_perfect_square(15));
}

TEST_CASE("isqrt agrees with a widened floating root") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 100000; ++k) {
    const std::uint64_t x = rng() >> (rng() % 64);
    const std::uint64_t r = isqrt(x);
    CHECK(static_cast<unsigned __int128>(r) * r <= x);
    CHECK(static_cast<unsigned __int128>(r + 1) * (r + 1) > x);
  }
}

TEST_CASE("floor division rounds toward minus infinity") {
  CHECK(floor_div(7, 2) == 3);
  CHECK(floor_div(-7, 2) == -4);
  CHECK(floor_div(-8, 2) == -4);
  CHECK(floor_mod(-7, 3) == 2);
  CHECK(floor_mod(7, 3) == 1);
}

TEST_CASE("checked arithmetic throws on overflow") {
  const Int big = std::numeric_limits<Int>::max();
  CHECK(checked_add(big - 1, 1) == big);
  CHECK_THROWS_AS(checked_add(big, 1), OverflowError);
  CHECK_THROWS_AS(checked_sub(std::numeric_limits<Int>::min(), 1), OverflowError);
  CHECK_THROWS_AS(checked_mul(big / 2 + 1, 2), OverflowError);
}

TEST_CASE("golden floors") {
  // Frozen from a 60-digit oracle.
  const Int gamma_sq[] = {0, 0, 1, 1, 1};
  for (Int n = 1; n <= 5; ++n) CHECK(floor_gamma_sq_times(n) == gamma_sq[n - 1]);
  CHECK(floor_gamma_sq_times(0) == 0);
  CHECK(floor_gamma_times(10) == 6);
  CHECK(floor_gamma_times(0) == 0);

  for (Int n = 1; n <= 200000; ++n) {
    const long double g = (std::sqrt(5.0L) - 1) / 2;
    const long double x = g * static_cast<long double>(n);
    if (std::abs(x - std::round(x)) > 1e-9L) REQUIRE(floor_gamma_times(n) == static_cast<Int>(std::floor(x)));
  }
}

TEST_CASE("w(n) closed form") {
  // Runs of length k start at h(k) = (k^2 - k + 2) / 2.
  Int n = 1;
  for (Int k = 1; k <= 400; ++k)
    for (Int r = 0; r < k; ++r, ++n) REQUIRE(floor_half_plus_sqrt_2n(n) == k);
}
