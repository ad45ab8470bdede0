// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "dilhof/analysis.hpp"
#include "dilhof/cli.hpp"
#include "dilhof/engine.hpp"
#include "dilhof/triangle.hpp"
#include "dilhof/verifiers.hpp"

using namespace dilhof;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

// Tolerances and limits, fixed here rather than read from anywhere.
constexpr double kDetrendedBound = 75.5;
constexpr double kConstLimitBound = 2.0;
constexpr double kFracPowLo = -21.0;
constexpr double kFracPowHi = 3.0;
constexpr Int kFracPowQ = 7990;

int failures = 0;

void criterion(int id, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < limit_seconds;
  const bool pass = o.ok && in_time;
  failures += !pass;
  std::printf("%s %2d %s: %s [%.3g s, limit %g s%s]\n", pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs,
              limit_seconds, in_time ? "" : ", too slow");
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

}  // namespace

int main() {
  criterion(1, "first 16 terms for f = 1 - delta(n-1)", 1e-3, [] {
    std::ostringstream out, err;
    const int code = cli::run({"compute", "--f", "one-minus-delta:1", "--n", "16"}, out, err);
    const bool ok = code == 0 && out.str().find("q = (1,2,2,3,3,3,4,4,4,4,5,5,5,5,5,6)\n") != std::string::npos;
    return Outcome{ok, ok ? "q matches" : "got: " + out.str() + err.str()};
  });

  criterion(2, "triangle rows 1-8", 5.0, [] {
    const char* const rows[] = {
        "{1}",
        "{1} {2}",
        "{1} {2} {3}",
        "{1} {2:3} {3:4} {4}",
        "{1} {2:3} {3:4} {4:5} {5}",
        "{1} {2:3} {3:4} {4:5} {5:6} {6}",
        "{1} {2:4} {3:5} {4:6} {5:7} {6:7} {7}",
        "{1} {2:4} {3:6} {4:7} {5:7} {6:8} {7:8} {8}",
    };
    const TriangleTable t = build_triangle(8);
    int cells = 0, matched = 0;
    for (Int n = 1; n <= 8; ++n) {
      std::istringstream expected(rows[n - 1]);
      std::string cell;
      for (Int i = 0; expected >> cell; ++i, ++cells) matched += format_set(t.cell(i, n)) == cell;
    }
    const bool t14 = t.cell(1, 4) == std::vector<Int>{2, 3};
    return Outcome{cells == 36 && matched == 36 && t14, std::to_string(matched) + "/36 cells"};
  });

  criterion(3, "slow f never dies (F_m, m <= 16; 1000 random streams of 1e5)", 120.0, [] {
    Int runs = 0;
    auto bounded = [](const QTrace& t) {
      if (!t.outcome.exists()) return false;
      for (Int n = 1; n <= t.computed(); ++n)
        if (t.q(n) < 1 || t.q(n) > n) return false;
      return true;
    };
    for (Int m = 1; m <= 16; ++m)
      for (const auto& f : enumerate_Fm(m)) {
        if (!bounded(compute_q(f))) return Outcome{false, "counterexample in F_" + std::to_string(m)};
        ++runs;
      }
    std::mt19937_64 rng(0xacce55);
    std::vector<Int> f(100000);
    for (int trial = 0; trial < 1000; ++trial) {
      f[0] = 0;
      for (std::size_t k = 1; k < f.size(); ++k) f[k] = f[k - 1] + static_cast<Int>(rng() & 1);
      if (!bounded(compute_q(f))) return Outcome{false, "random stream " + std::to_string(trial) + " failed"};
      ++runs;
    }
    return Outcome{true, std::to_string(runs) + " sequences, no deaths, 1 <= q(n) <= n"};
  });

  criterion(4, "golden identities to 1e6", 10.0, [] {
    const auto th = verify_theta_identity(1'000'000);
    const auto go = verify_golden(1'000'000);
    const auto fr = verify_golden_fraction_identity(1'000'000);
    return Outcome{th.passed() && go.passed() && fr.passed(),
                   std::string("theta ") + (th.passed() ? "ok" : "fails") + ", q = 1 + floor(gamma(n-1)) " +
                       (go.passed() ? "ok" : "fails") + ", fraction identity " + (fr.passed() ? "ok" : "fails")};
  });

  criterion(5, "|q - n/sqrt 2| < 75.5 for f = floor(n/2), n <= 160000", 1.0, [] {
    const auto r = approx_error(FSpec::floor_rational(1, 2), ApproxModel::sqrt_alpha(0.5), 160000);
    return Outcome{r.max_abs_error < kDetrendedBound,
                   fmt("max |error| = %.5f at n = %.0f", r.max_abs_error, static_cast<double>(r.max_abs_at))};
  });

  criterion(6, "|q - (sqrt(8n) - 2)| < 2 for f = floor(5 - 5/sqrt n), n <= 1e5", 1.0, [] {
    const auto r = approx_error(parse_fspec("const-limit:sqrt:a=5"), ApproxModel::const_limit(4), 100000);
    return Outcome{r.max_abs_error < kConstLimitBound, fmt("max |error| = %.5f", r.max_abs_error)};
  });

  criterion(7, "fractional-power f: -21 <= q - (n^3/4 + 1/2) <= 3, q(160000) = 7990", 1.0, [] {
    const auto r = approx_error(parse_fspec("fracpow:3/4*n^1/2+3/32*n^1/4+5/128"), ApproxModel::power(1, 0.75, 0.5),
                                160000);
    const bool ok = r.min_signed_error >= kFracPowLo && r.max_signed_error <= kFracPowHi && r.q_at_n_max == kFracPowQ;
    return Outcome{ok, fmt("error in [%.4f, %.4f], q(160000) = %.0f", r.min_signed_error, r.max_signed_error,
                           static_cast<double>(r.q_at_n_max))};
  });

  criterion(8, "self-similar runs of floor(n/2) trace to 230000", 30.0, [] {
    const QTrace t = compute_q(FSpec::floor_rational(1, 2), 230000);
    const auto matches = scan_self_similarity(t, {69568, 107616});
    bool a = false, b = false;
    for (const auto& m : matches) {
      a = a || (m.shift == 69568 && m.delta == 49192 && m.contains(9235, 27465));
      b = b || (m.shift == 107616 && m.delta == 76096 && m.contains(91, 44577));
    }
    return Outcome{a && b, std::to_string(matches.size()) + " maximal runs; containment " +
                               (a ? "ok" : "missing") + "/" + (b ? "ok" : "missing")};
  });

  criterion(9, "c(n) prefix and a step outside {0,1}", 1e-3, [] {
    const auto c = compute_c(15);
    bool jump = false;
    for (std::size_t k = 0; k + 1 < c.size(); ++k) jump = jump || (c[k + 1] - c[k] != 0 && c[k + 1] - c[k] != 1);
    const bool prefix = c == std::vector<Int>{1, 2, 2, 2, 3, 3, 3, 3, 3, 4, 5, 4, 5};
    return Outcome{prefix && jump, std::string("prefix ") + (prefix ? "ok" : "differs") + ", jump " +
                                       (jump ? "found" : "absent")};
  });

  criterion(10, "quasi-polynomial r(n) for 12 < n <= 1e5", 1.0, [] {
    const auto r = verify_quasi_polynomial(100000);
    return Outcome{r.passed(), r.passed() ? "all match" : "first mismatch at n = " + std::to_string(r.failure->index)};
  });

  criterion(11, "closed-form verifiers at N = 1e6", 60.0, [] {
    const auto results = run_verifiers({"simp_q", "nonFq", "mod_m", "shift", "n_over_4", "root2n"}, 1'000'000);
    std::string failed;
    for (const auto& r : results)
      if (!r.passed()) failed += " " + r.name;
    return Outcome{failed.empty(), failed.empty() ? std::to_string(results.size()) + " checks pass" : "failed:" + failed};
  });

  criterion(12, "q_h exists to 3e7; deaths are detected", 60.0, [] {
    const QTrace h = compute_two_term(TwoTermSpec::hofstadter(), 30'000'000);
    if (!h.outcome.exists()) return Outcome{false, "q_h died at " + std::to_string(h.outcome.n)};

    // Random initial conditions: every reported death must be a genuine
    // out-of-range lookup, and every survivor must obey the recursion.
    std::mt19937_64 rng(12);
    int deaths = 0;
    for (int trial = 0; trial < 2000; ++trial) {
      TwoTermSpec s = TwoTermSpec::hofstadter();
      s.initial_values.resize(2 + rng() % 4);
      for (auto& v : s.initial_values) v = 1 + static_cast<Int>(rng() % 6);
      const QTrace t = compute_two_term(s, 2000);
      const Int lo = t.first_index;
      for (Int n = lo + static_cast<Int>(s.initial_values.size()); n <= t.last_index(); ++n) {
        const Int i = n - t.q(n - 1), j = n - t.q(n - 2);
        if (t.q(n) != t.q(i) + t.q(j)) return Outcome{false, "recursion broken in trial " + std::to_string(trial)};
      }
      if (!t.outcome.exists()) {
        ++deaths;
        const Int n = t.outcome.n, k = t.outcome.lookup_index;
        if (n != t.last_index() + 1 || (k >= lo && k <= n - 1))
          return Outcome{false, "bogus death in trial " + std::to_string(trial)};
      }
    }
    const QTrace dead = compute_q(std::vector<Int>{0, 2, 2});
    const bool one_term = dead.outcome == ExistenceOutcome::died_at(3, 0);
    return Outcome{deaths > 0 && one_term,
                   "q(3e7) = " + std::to_string(h.q_values.back()) + ", " + std::to_string(deaths) +
                       "/2000 random starts died, each at a real out-of-range lookup"};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
