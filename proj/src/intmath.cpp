#include "dilhof/intmath.hpp"

#include <bit>
#include <string>

#include "dilhof/errors.hpp"

namespace dilhof {

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r))
    throw OverflowError("integer overflow in " + std::to_string(a) + " + " + std::to_string(b));
  return r;
}

Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r))
    throw OverflowError("integer overflow in " + std::to_string(a) + " - " + std::to_string(b));
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r))
    throw OverflowError("integer overflow in " + std::to_string(a) + " * " + std::to_string(b));
  return r;
}

std::uint64_t isqrt(std::uint64_t x) {
  if (x < 2) return x;
  // Start above the root: 2^ceil(bits/2) > sqrt(x). Newton then decreases
  // monotonically to floor(sqrt(x)).
  const int bits = std::bit_width(x);
  std::uint64_t r = std::uint64_t{1} << ((bits + 1) / 2);
  while (true) {
    const std::uint64_t next = (r + x / r) / 2;
    if (next >= r) break;
    r = next;
  }
  return r;
}

std::uint64_t ceil_sqrt(std::uint64_t x) {
  const std::uint64_t r = isqrt(x);
  return r * r == x ? r : r + 1;
}

Int floor_gamma_times(Int n) {
  if (n < 0) throw InvalidParameter("floor_gamma_times requires n >= 0");
  const Int five_n_sq = checked_mul(5, checked_mul(n, n));
  const auto s = static_cast<Int>(isqrt(static_cast<std::uint64_t>(five_n_sq)));
  return (s - n) / 2;
}

Int floor_gamma_sq_times(Int n) {
  if (n == 0) return 0;
  return n - 1 - floor_gamma_times(n);
}

Int floor_half_plus_sqrt_2n(Int n) {
  if (n < 1) throw InvalidParameter("w(n) requires n >= 1");
  const Int m = checked_sub(checked_mul(8, n), 7);
  return (1 + static_cast<Int>(isqrt(static_cast<std::uint64_t>(m)))) / 2;
}

}  // namespace dilhof
