#include <doctest.h>

#include <algorithm>

#include "dilhof/engine.hpp"
#include "dilhof/errors.hpp"

using namespace dilhof;

TEST_CASE("small traces") {
  CHECK(compute_q(FSpec::zeros(), 10).q_values == std::vector<Int>(10, 1));
  CHECK(compute_q(FSpec::linear(), 6).q_values == std::vector<Int>{1, 2, 3, 4, 5, 6});
  CHECK(compute_q(FSpec::one_minus_delta(), 16).q_values ==
        std::vector<Int>{1, 2, 2, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5, 5, 5, 6});
  CHECK(compute_q(FSpec::n_plus_2_over_4(), 6).q_values == std::vector<Int>{1, 2, 2, 3, 3, 4});
  CHECK(compute_q(FSpec::gamma_sq(), 10).q_values == std::vector<Int>{1, 1, 2, 2, 3, 4, 4, 5, 5, 6});
  // f = (0,1,0,1,...) is not slow but the sequence lives.
  const std::vector<Int> alternating{0, 1, 0, 1, 0, 1, 0, 1};
  CHECK(compute_q(alternating).q_values == std::vector<Int>{1, 2, 1, 2, 1, 2, 1, 2});
}

TEST_CASE("death is reported with the offending lookup") {
  const std::vector<Int> f{0, 2, 2};
  const QTrace t = compute_q(f);
  CHECK_FALSE(t.outcome.exists());
  CHECK(t.outcome == ExistenceOutcome::died_at(3, 0));
  CHECK(t.q_values == std::vector<Int>{1, 3});

  const std::vector<Int> g{0, 0, 5};
  const QTrace u = compute_q(g);
  CHECK(u.outcome.exists());
  CHECK(u.q_values == std::vector<Int>{1, 1, 6});  // alive, q(3) > 3 is allowed by the rule

  const std::vector<Int> h{0, 0, 5, 0};
  CHECK(compute_q(h).outcome == ExistenceOutcome::died_at(4, -2));
}

TEST_CASE("inputs") {
  CHECK_THROWS_AS(compute_q(std::vector<Int>{1, 1}), InvalidFSpec);
  CHECK_THROWS_AS(compute_q(FSpec::prefix({0, 1}), 3), InvalidFSpec);
  CHECK_THROWS_AS(compute_q(FSpec::zeros(), 0), InvalidParameter);
}

TEST_CASE("compute_f_from_q") {
  CHECK(compute_f_from_q(std::vector<Int>{1, 1, 1, 1}) == std::vector<Int>{0, 0, 0, 0});
  CHECK(compute_f_from_q(std::vector<Int>{1, 2, 2, 3, 3, 3, 4}) == std::vector<Int>{0, 1, 1, 1, 1, 1, 1});
  CHECK_THROWS_AS(compute_f_from_q(std::vector<Int>{1, 3}), InvalidQ);
  CHECK_THROWS_AS(compute_f_from_q(std::vector<Int>{2}), InvalidQ);
}

TEST_CASE("two-term recursions") {
  const QTrace h = compute_two_term(TwoTermSpec::hofstadter(), 19);
  CHECK(h.q_values == std::vector<Int>{1, 1, 2, 3, 3, 4, 5, 5, 6, 6, 6, 8, 8, 8, 10, 9, 10, 11, 11});

  const QTrace t = compute_two_term(TwoTermSpec::tanny(), 1'000'000);
  REQUIRE(t.outcome.exists());
  CHECK(t.first_index == 0);
  CHECK(std::is_sorted(t.q_values.begin(), t.q_values.end()));
  for (std::size_t k = 1; k < t.q_values.size(); ++k) REQUIRE(t.q_values[k] - t.q_values[k - 1] <= 1);

  const QTrace v = compute_two_term(TwoTermSpec::v_variant(), 100000);
  CHECK(v.outcome.exists());

  const QTrace r = compute_two_term(TwoTermSpec::quasi_polynomial_r(), 12);
  CHECK(r.first_index == 3);
  CHECK(r.q_values == std::vector<Int>{1, 1, 3, 5, 1, 4, 7, 6, 4, 9});
}

TEST_CASE("c(n)") {
  const auto c = compute_c(15);
  CHECK(c == std::vector<Int>{1, 2, 2, 2, 3, 3, 3, 3, 3, 4, 5, 4, 5});
  bool jump = false;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) jump = jump || (c[k + 1] - c[k] != 0 && c[k + 1] - c[k] != 1);
  CHECK(jump);
}
