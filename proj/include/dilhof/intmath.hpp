#pragma once

#include <cstdint>

namespace dilhof {

using Int = std::int64_t;

// Overflow-checked arithmetic. Each throws OverflowError instead of wrapping.
Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);

/// Largest r with r*r <= x.
std::uint64_t isqrt(std::uint64_t x);

/// Smallest r with r*r >= x.
std::uint64_t ceil_sqrt(std::uint64_t x);

inline bool is_perfect_square(std::uint64_t x) {
  const std::uint64_t r = isqrt(x);
  return r * r == x;
}

/// Floor division rounding toward negative infinity.
constexpr Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Non-negative remainder for b > 0.
constexpr Int floor_mod(Int a, Int b) { return a - floor_div(a, b) * b; }

/// floor(gamma * n) for gamma = (sqrt(5) - 1) / 2, computed exactly as
/// (isqrt(5 n^2) - n) / 2. Requires 0 <= n and 5 n^2 to fit in Int.
Int floor_gamma_times(Int n);

/// floor(gamma^2 * n) = n - 1 - floor(gamma * n) for n >= 1, and 0 at n = 0.
Int floor_gamma_sq_times(Int n);

/// w(n) = floor(1/2 + sqrt(2n - 7/4)) = floor((1 + sqrt(8n - 7)) / 2), n >= 1.
Int floor_half_plus_sqrt_2n(Int n);

}  // namespace dilhof
