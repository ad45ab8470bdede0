#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dilhof/fspec.hpp"
#include "dilhof/intmath.hpp"

namespace dilhof {

struct Counterexample {
  Int index = 0;
  Int expected = 0;
  Int actual = 0;
  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

/// Outcome of checking one closed form against the engine over [1, N].
struct VerifierResult {
  std::string name;
  Int checked_up_to = 0;
  std::optional<Counterexample> failure;  ///< first mismatch, if any
  std::string note;                       ///< free-form detail for failures
  std::map<std::string, Int> counts;      ///< extra statistics (e.g. case counts)

  bool passed() const { return !failure.has_value() && note.empty(); }
};

inline constexpr Int kDefaultVerifyN = 1'000'000;
inline constexpr Int kDefaultTwoTermVerifyN = 100'000;

/// Q(0) = 1 and Q(n - 1) = n.
VerifierResult verify_simp_q(Int N = kDefaultVerifyN);

/// f_a = 2 floor((n-1)/2) gives q_a(n) = n - (1 + (-1)^n)/2 and
/// f_b = (1 + (-1)^n)/2 gives q_b(n) = (3 + (-1)^n)/2.
VerifierResult verify_nonFq(Int N = kDefaultVerifyN);

/// f(n) = (n-1) mod m gives q(n) = ((n-1) mod m) + 1.
VerifierResult verify_mod_m(Int m, Int N = kDefaultVerifyN);

/// Q(shift f)(1) = 1 and Q(shift f)(n) = Q(f)(n - 1).
VerifierResult verify_shift(const FSpec& f, Int N = kDefaultVerifyN);

/// verify_shift over every member of F_m for m = 1..m_max, N = m.
VerifierResult verify_shift_exhaustive(Int m_max = 12);

/// f = floor((n+2)/4) gives q = floor((n+2)/2); also checks the real-valued
/// solution qt(x) = x/2 + (3 + cos(pi x))/4 at `samples` points in [1, 100].
VerifierResult verify_n_over_4(Int N = kDefaultVerifyN, Int samples = 10'000, double tolerance = 1e-9);

/// Residual qt(x) - qt(x - qt(x-1)) - ft(x) of the real-valued solution.
double n_over_4_continuous_residual(double x);

/// f = 1 - delta(n-1) gives q(n) = k on h(k) <= n < h(k+1), h(k) = (k^2 - k + 2)/2,
/// and equivalently q(n) = w(n) = floor(1/2 + sqrt(2n - 7/4)).
VerifierResult verify_root2n(Int N = kDefaultVerifyN);

/// h(k) = (k^2 - k + 2) / 2, the first index where q reaches k.
constexpr Int first_index_of_run(Int k) { return (k * k - k + 2) / 2; }

/// f = floor(gamma^2 n) gives q(n) = 1 + floor(gamma (n - 1)).
VerifierResult verify_golden(Int N = kDefaultVerifyN);

/// theta(n) = floor(gamma + gamma floor(gamma^2 (n-1))) + floor(gamma^2 n) + floor(gamma^2 (n+1)).
Int theta(Int n);

enum class FracCase { A, B, C, BoundaryAB };

/// Which of (0, gamma^2), (gamma^2, gamma), (gamma, 1) contains frac(gamma^2 n),
/// decided with exact integer floors. n = 1 lands exactly on gamma^2.
FracCase classify_gamma_sq_fraction(Int n);

/// theta(n) = n - 1 for n <= N, with per-case counts and a check that no
/// 2 <= n <= N puts frac(gamma^2 n) on 0, gamma^2 or gamma.
VerifierResult verify_theta_identity(Int N = kDefaultVerifyN);

/// floor(gamma^2 n) = n - 1 - floor(gamma n), the exact form of
/// frac(gamma^2 n) = 1 - frac(gamma n). The left side is evaluated directly
/// as floor((3n - sqrt(5 n^2)) / 2), independently of floor_gamma_sq_times.
VerifierResult verify_golden_fraction_identity(Int N = kDefaultVerifyN);

/// r from the two-term recursion with r(3..12) = 1,1,3,5,1,4,7,6,4,9 matches
/// p_{n mod 5}(n) with p = (2, n-4, 5, n-5, n-6) for 12 < n <= N.
VerifierResult verify_quasi_polynomial(Int N = kDefaultTwoTermVerifyN);

/// p_{n mod 5}(n) from the table above.
Int quasi_polynomial_value(Int n);

/// Named verifier registry used by the CLI. Each entry receives the N to
/// check (already defaulted) and may run several sub-checks.
struct VerifierEntry {
  std::string name;
  bool two_term = false;
  std::function<std::vector<VerifierResult>(Int N)> run;
};

const std::vector<VerifierEntry>& verifier_registry();

/// Runs the selected entries ("all" selects every one) on `threads` workers.
/// N <= 0 means each verifier's default. Results keep registry order.
std::vector<VerifierResult> run_verifiers(const std::vector<std::string>& names, Int N, unsigned threads = 1);

}  // namespace dilhof
