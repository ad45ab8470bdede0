#include "dilhof/verifiers.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "dilhof/engine.hpp"
#include "dilhof/errors.hpp"
#include "dilhof/parallel.hpp"

namespace dilhof {

namespace {

VerifierResult start(std::string name, Int N) {
  if (N < 1) throw InvalidParameter(name + ": N must be >= 1");
  VerifierResult r;
  r.name = std::move(name);
  r.checked_up_to = N;
  return r;
}

// Records the first mismatch only; returns false once a failure exists.
bool expect_eq(VerifierResult& r, Int index, Int expected, Int actual) {
  if (r.failure) return false;
  if (expected != actual) {
    r.failure = Counterexample{index, expected, actual};
    return false;
  }
  return true;
}

bool require_exists(VerifierResult& r, const QTrace& t) {
  if (t.outcome.exists()) return true;
  r.failure = Counterexample{t.outcome.n, t.outcome.n, t.outcome.lookup_index};
  r.note = "sequence died at n = " + std::to_string(t.outcome.n);
  return false;
}

// Compares Q(f) against a closed form over [1, N].
template <class Closed>
void check_closed_form(VerifierResult& r, const FSpec& f, Int N, Closed&& closed) {
  const QTrace t = compute_q(f, N);
  if (!require_exists(r, t)) return;
  for (Int n = 1; n <= N; ++n)
    if (!expect_eq(r, n, closed(n), t.q(n))) return;
}

}  // namespace

VerifierResult verify_simp_q(Int N) {
  VerifierResult r = start("simp_q", N);
  check_closed_form(r, FSpec::zeros(), N, [](Int) { return Int{1}; });
  check_closed_form(r, FSpec::linear(), N, [](Int n) { return n; });
  return r;
}

VerifierResult verify_nonFq(Int N) {
  VerifierResult r = start("nonFq", N);
  // (-1)^n terms written out for even/odd n.
  check_closed_form(r, FSpec::even_pairs(), N, [](Int n) { return n % 2 == 0 ? n - 1 : n; });
  check_closed_form(r, FSpec::mod(2), N, [](Int n) { return n % 2 == 0 ? Int{2} : Int{1}; });
  return r;
}

VerifierResult verify_mod_m(Int m, Int N) {
  VerifierResult r = start("mod_m:" + std::to_string(m), N);
  check_closed_form(r, FSpec::mod(m), N, [m](Int n) { return (n - 1) % m + 1; });
  return r;
}

VerifierResult verify_shift(const FSpec& f, Int N) {
  VerifierResult r = start("shift:" + to_string(f), N);
  const QTrace base = compute_q(f, std::max<Int>(N - 1, 1));
  if (!require_exists(r, base)) return r;
  const QTrace shifted = compute_q(shift_f(f, 1), N);
  if (!require_exists(r, shifted)) return r;
  if (!expect_eq(r, 1, 1, shifted.q(1))) return r;
  for (Int n = 2; n <= N; ++n)
    if (!expect_eq(r, n, base.q(n - 1), shifted.q(n))) return r;
  return r;
}

VerifierResult verify_shift_exhaustive(Int m_max) {
  VerifierResult r = start("shift:exhaustive", m_max + 1);
  Int members = 0;
  for (Int m = 1; m <= m_max; ++m) {
    for (const auto& f : enumerate_Fm(m)) {
      ++members;
      std::vector<Int> g(f.size() + 1, 0);
      std::copy(f.begin(), f.end(), g.begin() + 1);
      const QTrace base = compute_q(std::span<const Int>(f));
      const QTrace shifted = compute_q(std::span<const Int>(g));
      if (!require_exists(r, base) || !require_exists(r, shifted)) return r;
      if (!expect_eq(r, 1, 1, shifted.q(1))) return r;
      for (Int n = 2; n <= m + 1; ++n)
        if (!expect_eq(r, n, base.q(n - 1), shifted.q(n))) {
          r.note = "f = " + to_string(FSpec::prefix(f));
          return r;
        }
    }
  }
  r.counts["sequences"] = members;
  return r;
}

double n_over_4_continuous_residual(double x) {
  using std::numbers::pi;
  const auto qt = [](double y) { return y / 2 + (3 + std::cos(pi * y)) / 4; };
  const double u = 2 * x + 1 + std::cos(pi * x);
  const double ft = u / 8 - std::sin(pi / 4 * u) / 4;
  return qt(x) - qt(x - qt(x - 1)) - ft;
}

VerifierResult verify_n_over_4(Int N, Int samples, double tolerance) {
  using std::numbers::pi;
  VerifierResult r = start("n_over_4", N);
  check_closed_form(r, FSpec::n_plus_2_over_4(), N, [](Int n) { return (n + 2) / 2; });
  if (!r.passed()) return r;

  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> dist(1.0, 100.0);
  Int used = 0, skipped = 0;
  double worst = 0;
  for (Int s = 0; s < samples; ++s) {
    const double x = dist(rng);
    const double inner = x - (x - 1) / 2 - (3 + std::cos(pi * (x - 1))) / 4;
    if (std::fabs(inner - std::round(inner)) < 1e-6) {
      ++skipped;
      continue;
    }
    ++used;
    const double residual = std::fabs(n_over_4_continuous_residual(x));
    worst = std::max(worst, residual);
    if (residual > tolerance) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "continuous residual " << residual << " at x = " << x;
      r.note = msg.str();
      return r;
    }
  }
  // The real-valued f reduces to floor((n+2)/4) at the integers.
  for (Int n = 1; n <= 100; ++n) {
    const auto x = static_cast<double>(n);
    const double u = 2 * x + 1 + std::cos(pi * x);
    const double ft = u / 8 - std::sin(pi / 4 * u) / 4;
    if (std::fabs(ft - static_cast<double>((n + 2) / 4)) > tolerance) {
      r.note = "continuous f differs from floor((n+2)/4) at n = " + std::to_string(n);
      return r;
    }
  }
  r.counts["continuous_samples"] = used;
  r.counts["continuous_skipped"] = skipped;
  return r;
}

VerifierResult verify_root2n(Int N) {
  VerifierResult r = start("root2n", N);
  const QTrace t = compute_q(FSpec::one_minus_delta(1), N);
  if (!require_exists(r, t)) return r;
  Int runs = 0;
  for (Int k = 1; first_index_of_run(k) <= N; ++k, ++runs) {
    const Int stop = std::min(N, first_index_of_run(k + 1) - 1);
    for (Int n = first_index_of_run(k); n <= stop; ++n)
      if (!expect_eq(r, n, k, t.q(n))) {
        r.note = "run-length form";
        return r;
      }
  }
  for (Int n = 1; n <= N; ++n)
    if (!expect_eq(r, n, floor_half_plus_sqrt_2n(n), t.q(n))) {
      r.note = "w(n) form";
      return r;
    }
  r.counts["runs"] = runs;
  return r;
}

VerifierResult verify_golden(Int N) {
  VerifierResult r = start("golden", N);
  check_closed_form(r, FSpec::gamma_sq(), N, [](Int n) { return 1 + floor_gamma_times(n - 1); });
  return r;
}

Int theta(Int n) {
  // floor(gamma + gamma m) = floor(gamma (m + 1))
  const Int m = floor_gamma_sq_times(n - 1);
  return floor_gamma_times(m + 1) + floor_gamma_sq_times(n) + floor_gamma_sq_times(n + 1);
}

FracCase classify_gamma_sq_fraction(Int n) {
  if (n == 1) return FracCase::BoundaryAB;
  const Int g = floor_gamma_sq_times(n);
  // frac < gamma^2  <=>  gamma^2 (n-1) < floor(gamma^2 n)
  if (floor_gamma_sq_times(n - 1) < g) return FracCase::A;
  // frac > gamma = 1 - gamma^2  <=>  gamma^2 (n+1) > floor(gamma^2 n) + 1
  if (floor_gamma_sq_times(n + 1) > g) return FracCase::C;
  return FracCase::B;
}

VerifierResult verify_theta_identity(Int N) {
  VerifierResult r = start("theta", N);
  Int a = 0, b = 0, c = 0, boundary = 0;
  for (Int n = 1; n <= N; ++n) {
    if (!expect_eq(r, n, n - 1, theta(n))) return r;
    switch (classify_gamma_sq_fraction(n)) {
      case FracCase::A:
        ++a;
        break;
      case FracCase::B:
        ++b;
        break;
      case FracCase::C:
        ++c;
        break;
      case FracCase::BoundaryAB:
        ++boundary;
        break;
    }
    // frac(gamma^2 n) is 0, gamma^2 or gamma exactly when gamma^2 n,
    // gamma^2 (n-1) or gamma^2 (n+1) is an integer, i.e. when 5 k^2 is a
    // perfect square for k = n, n-1, n+1.
    if (n >= 2) {
      for (const Int k : {n - 1, n, n + 1}) {
        const auto five_k_sq = static_cast<std::uint64_t>(checked_mul(5, checked_mul(k, k)));
        if (is_perfect_square(five_k_sq)) {
          r.note = "frac(gamma^2 n) hits an interval endpoint at n = " + std::to_string(n);
          return r;
        }
      }
    }
  }
  r.counts["case_A"] = a;
  r.counts["case_B"] = b;
  r.counts["case_C"] = c;
  r.counts["boundary_n1"] = boundary;
  return r;
}

VerifierResult verify_golden_fraction_identity(Int N) {
  VerifierResult r = start("golden_fraction", N);
  for (Int n = 1; n <= N; ++n) {
    // gamma^2 n = (3n - sqrt(5 n^2)) / 2 and sqrt(5 n^2) is irrational, so
    // floor(3n - sqrt(5 n^2)) = 3n - isqrt(5 n^2) - 1.
    const auto s = static_cast<Int>(isqrt(static_cast<std::uint64_t>(checked_mul(5, checked_mul(n, n)))));
    const Int direct = floor_div(3 * n - s - 1, 2);
    if (!expect_eq(r, n, direct, n - 1 - floor_gamma_times(n))) return r;
  }
  return r;
}

Int quasi_polynomial_value(Int n) {
  switch (n % 5) {
    case 0:
      return 2;
    case 1:
      return n - 4;
    case 2:
      return 5;
    case 3:
      return n - 5;
    default:
      return n - 6;
  }
}

VerifierResult verify_quasi_polynomial(Int N) {
  VerifierResult r = start("quasi_polynomial", N);
  if (N <= 12) throw InvalidParameter("quasi_polynomial needs N > 12");
  const QTrace t = compute_two_term(TwoTermSpec::quasi_polynomial_r(), N);
  if (!require_exists(r, t)) return r;
  for (Int n = 13; n <= N; ++n)
    if (!expect_eq(r, n, quasi_polynomial_value(n), t.q(n))) return r;
  return r;
}

const std::vector<VerifierEntry>& verifier_registry() {
  static const std::vector<VerifierEntry> registry = {
      {"simp_q", false, [](Int N) { return std::vector{verify_simp_q(N)}; }},
      {"nonFq", false, [](Int N) { return std::vector{verify_nonFq(N)}; }},
      {"mod_m", false,
       [](Int N) {
         std::vector<VerifierResult> out;
         for (const Int m : {1, 2, 3, 5, 7}) out.push_back(verify_mod_m(m, N));
         return out;
       }},
      {"shift", false,
       [](Int N) {
         return std::vector{verify_shift(FSpec::floor_rational(1, 2), N), verify_shift(FSpec::zeros(), N),
                            verify_shift_exhaustive(12)};
       }},
      {"n_over_4", false, [](Int N) { return std::vector{verify_n_over_4(N)}; }},
      {"root2n", false, [](Int N) { return std::vector{verify_root2n(N)}; }},
      {"golden", false, [](Int N) { return std::vector{verify_golden(N)}; }},
      {"theta", false, [](Int N) { return std::vector{verify_theta_identity(N)}; }},
      {"golden_fraction", false, [](Int N) { return std::vector{verify_golden_fraction_identity(N)}; }},
      {"quasi_polynomial", true, [](Int N) { return std::vector{verify_quasi_polynomial(N)}; }},
  };
  return registry;
}

std::vector<VerifierResult> run_verifiers(const std::vector<std::string>& names, Int N, unsigned threads) {
  std::vector<const VerifierEntry*> selected;
  const auto& registry = verifier_registry();
  const bool all = std::find(names.begin(), names.end(), "all") != names.end();
  for (const auto& name : names) {
    if (name == "all") continue;
    if (std::none_of(registry.begin(), registry.end(), [&](const VerifierEntry& e) { return e.name == name; }))
      throw InvalidParameter("unknown verifier '" + name + "'");
  }
  for (const auto& e : registry)
    if (all || std::find(names.begin(), names.end(), e.name) != names.end()) selected.push_back(&e);

  std::vector<std::vector<VerifierResult>> per_entry(selected.size());
  parallel_blocks(selected.size(), threads, [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const Int n = N > 0 ? N : (selected[k]->two_term ? kDefaultTwoTermVerifyN : kDefaultVerifyN);
      per_entry[k] = selected[k]->run(n);
    }
  });
  std::vector<VerifierResult> out;
  for (auto& v : per_entry)
    for (auto& r : v) out.push_back(std::move(r));
  return out;
}

}  // namespace dilhof
