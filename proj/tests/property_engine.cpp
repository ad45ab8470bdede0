#include <doctest.h>

#include <random>
#include <set>

#include "dilhof/engine.hpp"
#include "dilhof/fspec.hpp"

using namespace dilhof;

namespace {

std::vector<Int> random_slow(std::mt19937_64& rng, Int length) {
  std::vector<Int> f(static_cast<std::size_t>(length), 0);
  for (std::size_t k = 1; k < f.size(); ++k) f[k] = f[k - 1] + static_cast<Int>(rng() & 1);
  return f;
}

bool within_bounds(const QTrace& t) {
  for (Int n = 1; n <= t.computed(); ++n)
    if (t.q(n) < 1 || t.q(n) > n) return false;
  return true;
}

}  // namespace

TEST_CASE("slow f never dies: exhaustive") {
  for (Int m = 1; m <= 16; ++m) {
    for (const auto& f : enumerate_Fm(m)) {
      const QTrace t = compute_q(f);
      REQUIRE(t.outcome.exists());
      REQUIRE(within_bounds(t));
    }
  }
}

TEST_CASE("slow f never dies: random long streams") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 100; ++trial) {
    // Bias the coin now and then so long flat or steep stretches show up.
    std::vector<Int> f = random_slow(rng, 100000);
    if (trial % 3 == 1) {
      std::bernoulli_distribution coin(0.05 + 0.9 * (trial % 7) / 6.0);
      for (std::size_t k = 1; k < f.size(); ++k) f[k] = f[k - 1] + coin(rng);
    }
    const QTrace t = compute_q(f);
    REQUIRE(t.outcome.exists());
    REQUIRE(within_bounds(t));
  }
}

TEST_CASE("distinct slow f give distinct q") {
  for (Int m = 1; m <= 10; ++m) {
    std::set<std::vector<Int>> seen;
    for (const auto& f : enumerate_Fm(m)) REQUIRE(seen.insert(compute_q(f).q_values).second);
  }
}

TEST_CASE("slow q with 1 <= q(n) <= n gives f steps in {-1, 0, 1}") {
  for (Int m = 1; m <= 14; ++m) {
    const std::uint64_t count = std::uint64_t{1} << (m - 1);
    for (std::uint64_t index = 0; index < count; ++index) {
      std::vector<Int> q(static_cast<std::size_t>(m), 1);
      for (Int k = 1; k < m; ++k) q[k] = q[k - 1] + static_cast<Int>((index >> (m - 1 - k)) & 1);
      // Every such q starts at 1 and steps by at most one, so q(n) <= n holds.
      const auto f = compute_f_from_q(q);
      for (std::size_t k = 1; k < f.size(); ++k) REQUIRE(std::abs(f[k] - f[k - 1]) <= 1);
    }
  }
}

TEST_CASE("f -> q -> f round trip") {
  for (Int m = 1; m <= 12; ++m)
    for (const auto& f : enumerate_Fm(m)) REQUIRE(compute_f_from_q(compute_q(f).q_values) == f);
}

TEST_CASE("recursion holds termwise and runs are deterministic") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_slow(rng, 5000);
    const QTrace a = compute_q(f);
    const QTrace b = compute_q(f);
    REQUIRE(a.q_values == b.q_values);
    for (Int n = 2; n <= a.computed(); ++n) REQUIRE(a.q(n) == a.q(n - a.q(n - 1)) + f[n - 1]);
  }
}

TEST_CASE("shifting f shifts q") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 2000; ++trial) {
    const Int m = 1 + static_cast<Int>(rng() % 12);
    const auto f = fm_member(m, rng() % (std::uint64_t{1} << (m - 1)));
    const Int k = 1 + static_cast<Int>(rng() % 4);
    const FSpec shifted = shift_f(FSpec::prefix(f), k);
    const QTrace q = compute_q(f);
    const QTrace qs = compute_q(shifted, m + k);
    for (Int n = 1; n <= k; ++n) REQUIRE(qs.q(n) == 1);
    for (Int n = 1; n <= m; ++n) REQUIRE(qs.q(n + k) == q.q(n));
  }
}

TEST_CASE("floor(p n / q) is slow for p < q") {
  for (Int q = 1; q <= 50; ++q)
    for (Int p = 0; p < q; ++p) {
      CAPTURE(p);
      CAPTURE(q);
      const auto f = generate_f(FSpec::floor_rational(p, q), 10000);
      REQUIRE(check_property_D(f, true));
      for (Int n = 1; n <= 10000; ++n) REQUIRE(f[n - 1] == p * n / q);
    }
}

TEST_CASE("(0,0,1,2) is slow but not floor(alpha n)") {
  const std::vector<Int> target{0, 0, 1, 2};
  REQUIRE(check_property_D(target, true));
  // floor(2a) = 0 needs a < 1/2 while floor(4a) = 2 needs a >= 1/2; spot check rationals as well.
  for (Int q = 1; q <= 400; ++q)
    for (Int p = 0; p < q; ++p) REQUIRE(generate_f(FSpec::floor_rational(p, q), 4) != target);
}

TEST_CASE("Tanny sequence is slow and hits every value") {
  const QTrace t = compute_two_term(TwoTermSpec::tanny(), 1000000);
  REQUIRE(t.outcome.exists());
  for (std::size_t k = 1; k < t.q_values.size(); ++k) {
    const Int d = t.q_values[k] - t.q_values[k - 1];
    REQUIRE((d == 0 || d == 1));
  }
}
