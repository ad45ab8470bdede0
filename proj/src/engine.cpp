#include "dilhof/engine.hpp"

#include <algorithm>
#include <string>

#include "dilhof/errors.hpp"

namespace dilhof {

namespace {

void check_length(Int n_max) {
  if (n_max < 1) throw InvalidParameter("n_max must be >= 1");
  if (n_max > kMaxTraceLength) throw CapExceeded("trace length is capped at 2^31 terms");
}

}  // namespace

QTrace compute_q(std::span<const Int> f_values) {
  const auto n_max = static_cast<Int>(f_values.size());
  check_length(n_max);
  if (f_values[0] != 0) throw InvalidFSpec("f(1) must be 0");

  QTrace trace;
  trace.n_max = n_max;
  trace.f_values.assign(f_values.begin(), f_values.end());
  auto& q = trace.q_values;
  q.reserve(static_cast<std::size_t>(n_max));
  q.push_back(1);
  for (Int n = 2; n <= n_max; ++n) {
    // Lookup index k = n - q(n-1) must lie in [1, n-1].
    const Int prev = q.back();
    const Int k = checked_sub(n, prev);
    if (k < 1 || k > n - 1) {
      trace.outcome = ExistenceOutcome::died_at(n, k);
      return trace;
    }
    q.push_back(checked_add(q[static_cast<std::size_t>(k - 1)], f_values[static_cast<std::size_t>(n - 1)]));
  }
  trace.outcome = ExistenceOutcome::exists_up_to(n_max);
  return trace;
}

QTrace compute_q(const FSpec& fspec, Int n_max) {
  check_length(n_max);
  const std::vector<Int> f = generate_f(fspec, n_max);
  QTrace trace = compute_q(std::span<const Int>(f));
  trace.fspec = fspec;
  return trace;
}

std::vector<Int> compute_f_from_q(std::span<const Int> q_values) {
  if (q_values.empty()) return {};
  if (q_values[0] != 1) throw InvalidQ("q(1) must be 1");
  const auto size = static_cast<Int>(q_values.size());
  for (Int n = 1; n <= size; ++n) {
    const Int v = q_values[static_cast<std::size_t>(n - 1)];
    if (v < 1 || v > n)
      throw InvalidQ("q(" + std::to_string(n) + ") = " + std::to_string(v) + " is outside [1, n]");
  }
  std::vector<Int> f(q_values.size(), 0);
  for (Int n = 2; n <= size; ++n) {
    const Int k = n - q_values[static_cast<std::size_t>(n - 2)];
    f[static_cast<std::size_t>(n - 1)] = q_values[static_cast<std::size_t>(n - 1)] - q_values[static_cast<std::size_t>(k - 1)];
  }
  return f;
}

TwoTermSpec TwoTermSpec::hofstadter() { return {1, 2, 1, {1, 1}, 0}; }
TwoTermSpec TwoTermSpec::tanny() { return {1, 2, 0, {1, 1, 1}, 1}; }
TwoTermSpec TwoTermSpec::v_variant() { return {1, 4, 1, {1, 1, 1, 1}, 0}; }
TwoTermSpec TwoTermSpec::quasi_polynomial_r() { return {1, 2, 3, {1, 1, 3, 5, 1, 4, 7, 6, 4, 9}, 0}; }

QTrace compute_two_term(const TwoTermSpec& spec, Int n_max) {
  if (spec.d1 < 1 || spec.d2 < 1) throw InvalidParameter("two-term offsets must be positive");
  if (spec.outer_shift < 0) throw InvalidParameter("outer shift must be >= 0");
  const auto init = static_cast<Int>(spec.initial_values.size());
  if (init < std::max(spec.d1, spec.d2)) throw InvalidParameter("need at least max(d1, d2) initial values");
  const Int first = spec.first_index;
  if (n_max < first + init - 1) throw InvalidParameter("n_max must cover the initial values");
  const Int count = n_max - first + 1;
  check_length(count);

  QTrace trace;
  trace.n_max = n_max;
  trace.first_index = first;
  auto& a = trace.q_values;
  a.reserve(static_cast<std::size_t>(count));
  a.assign(spec.initial_values.begin(), spec.initial_values.end());

  const auto at = [&](Int index) { return a[static_cast<std::size_t>(index - first)]; };
  for (Int n = first + init; n <= n_max; ++n) {
    Int value = 0;
    for (const Int d : {spec.d1, spec.d2}) {
      const Int k = checked_sub(checked_sub(n, spec.outer_shift * d), at(n - d));
      if (k < first || k > n - 1) {
        trace.outcome = ExistenceOutcome::died_at(n, k);
        return trace;
      }
      value = checked_add(value, at(k));
    }
    a.push_back(value);
  }
  trace.outcome = ExistenceOutcome::exists_up_to(n_max);
  return trace;
}

std::vector<Int> compute_c(Int n_max) {
  if (n_max < 3) throw InvalidParameter("c(n) is defined for n >= 3");
  const QTrace qh = compute_two_term(TwoTermSpec::hofstadter(), std::max<Int>(n_max - 1, 2));
  if (!qh.outcome.exists()) throw Error("Hofstadter sequence died at n = " + std::to_string(qh.outcome.n));
  std::vector<Int> c;
  c.reserve(static_cast<std::size_t>(n_max - 2));
  for (Int n = 3; n <= n_max; ++n) c.push_back(qh.q(n - qh.q(n - 2)));
  return c;
}

}  // namespace dilhof
