#include <doctest.h>

#include <random>

#include "dilhof/analysis.hpp"

using namespace dilhof;

namespace {

FSpec random_bits_spec(std::mt19937_64& rng, Int length, double p_one) {
  std::bernoulli_distribution coin(p_one);
  std::string bits;
  for (Int k = 1; k < length; ++k) bits += coin(rng) ? '1' : '0';
  return FSpec::bits(bits);
}

}  // namespace

TEST_CASE("reported runs are maximal and complete") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 40; ++trial) {
    const Int length = 3000;
    const QTrace t = compute_q(random_bits_spec(rng, length, trial % 2 ? 0.5 : 0.15), length);
    const Int min_run = 2 + static_cast<Int>(rng() % 20);
    std::vector<Int> shifts;
    for (int k = 0; k < 5; ++k) shifts.push_back(1 + static_cast<Int>(rng() % 500));
    const auto matches = scan_self_similarity(t, shifts, min_run, 2);

    // Brute force oracle over every shift.
    std::vector<SimilarityMatch> oracle;
    std::sort(shifts.begin(), shifts.end());
    shifts.erase(std::unique(shifts.begin(), shifts.end()), shifts.end());
    for (const Int s : shifts) {
      Int i = 1;
      while (i + s <= length) {
        const Int d = t.q(i + s) - t.q(i);
        Int j = i;
        while (j + 1 + s <= length && t.q(j + 1 + s) - t.q(j + 1) == d) ++j;
        if (j - i + 1 >= min_run) oracle.push_back({s, d, i, j});
        i = j + 1;
      }
    }
    REQUIRE(matches == oracle);
    for (const auto& m : matches) {
      REQUIRE(m.length() >= min_run);
      if (m.lo > 1) REQUIRE(t.q(m.lo - 1 + m.shift) - t.q(m.lo - 1) != m.delta);
      if (m.hi + m.shift < length) REQUIRE(t.q(m.hi + 1 + m.shift) - t.q(m.hi + 1) != m.delta);
    }
  }
}

TEST_CASE("a perturbation changes nothing before it and shifts q by the amount at it") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const Int length = 2000;
    const FSpec base = random_bits_spec(rng, length, 0.5);
    const Int index = 2 + static_cast<Int>(rng() % (length - 1));
    const Int amount = 1 + static_cast<Int>(rng() % 3);
    const auto p = perturb_compare(base, index, trial % 2 ? amount : -amount, length);
    REQUIRE(p.base_outcome.exists());
    for (Int n = 1; n < index; ++n) REQUIRE(p.at(n) == 0);
    REQUIRE(p.at(index) == -p.amount);
    for (const auto& [lo, hi] : p.zero_regions) {
      for (Int n = lo; n <= hi; ++n) REQUIRE(p.at(n) == 0);
      if (hi < static_cast<Int>(p.diff.size())) REQUIRE(p.at(hi + 1) != 0);
    }
  }
}

TEST_CASE("approximation report is consistent") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Int p = static_cast<Int>(1 + rng() % 9);
    const FSpec f = FSpec::floor_rational(p, 10);
    const auto r = approx_error(f, ApproxModel::sqrt_alpha(p / 10.0), 20000, 1);
    REQUIRE(r.error_trace.size() == 20000);
    double lo = 1e300, hi = -1e300;
    for (const auto& [n, e] : r.error_trace) {
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
    REQUIRE(lo == r.min_signed_error);
    REQUIRE(hi == r.max_signed_error);
    REQUIRE(r.max_abs_error == std::max(-lo, hi));
  }
}

TEST_CASE("square-root ansatz needs b = a/2") {
  for (double a : {1.0, 2.5, 4.0, 7.0}) {
    CAPTURE(a);
    const AnsatzCheck good = check_const_limit_ansatz(a, a / 2, 1e4, 1e10, 200);
    REQUIRE(good.leading_coefficient == doctest::Approx(-a / 2).epsilon(0.02));
    REQUIRE(good.max_sqrt_scaled < 0.1 * a);
    for (double b : {a / 2 - 0.5, a / 2 + 0.5}) {
      const AnsatzCheck off = check_const_limit_ansatz(a, b, 1e4, 1e10, 200);
      REQUIRE(off.max_sqrt_scaled > 0.2);
    }
  }
}
