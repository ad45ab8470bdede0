#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dilhof/fspec.hpp"
#include "dilhof/intmath.hpp"

namespace dilhof {

/// Largest trace length the engine accepts (full history is kept in memory).
inline constexpr Int kMaxTraceLength = Int{1} << 31;

/// Either every requested term was computed, or the recursion died at `n`
/// because its nested lookup index left [first, n - 1].
struct ExistenceOutcome {
  enum class Status { ExistsUpTo, DiedAt };

  Status status = Status::ExistsUpTo;
  Int n = 0;             ///< last computed index, or index of death
  Int lookup_index = 0;  ///< out-of-range argument when died

  static ExistenceOutcome exists_up_to(Int n) { return {Status::ExistsUpTo, n, 0}; }
  static ExistenceOutcome died_at(Int n, Int lookup) { return {Status::DiedAt, n, lookup}; }

  bool exists() const { return status == Status::ExistsUpTo; }
  friend bool operator==(const ExistenceOutcome&, const ExistenceOutcome&) = default;
};

/// A computed trace. Indices are 1-based for the one-nested-term recursion;
/// two-term traces carry their own `first_index`.
struct QTrace {
  Int n_max = 0;
  Int first_index = 1;
  std::vector<Int> f_values;  ///< f(1..n_max); empty for two-term recursions
  std::vector<Int> q_values;  ///< q(first..), truncated at death
  ExistenceOutcome outcome;
  std::optional<FSpec> fspec;

  /// Number of q terms actually computed.
  Int computed() const { return static_cast<Int>(q_values.size()); }
  Int last_index() const { return first_index + computed() - 1; }

  Int q(Int n) const { return q_values[static_cast<std::size_t>(n - first_index)]; }
  Int f(Int n) const { return f_values[static_cast<std::size_t>(n - 1)]; }
};

/// q(1) = 1, q(n) = q(n - q(n-1)) + f(n). f_values[0] is f(1) and must be 0.
QTrace compute_q(std::span<const Int> f_values);
QTrace compute_q(const FSpec& fspec, Int n_max);

/// Inverse direction: f(1) = 0, f(n) = q(n) - q(n - q(n-1)).
/// Throws InvalidQ unless q(1) = 1 and 1 <= q(n) <= n.
std::vector<Int> compute_f_from_q(std::span<const Int> q_values);

/// a(n) = a(n - s d1 - a(n - d1)) + a(n - s d2 - a(n - d2)) for n past the
/// initial values, where s is `outer_shift`.
struct TwoTermSpec {
  Int d1 = 1;
  Int d2 = 2;
  Int first_index = 1;
  std::vector<Int> initial_values;
  Int outer_shift = 0;

  /// q_h(1) = q_h(2) = 1, q_h(n) = q_h(n - q_h(n-1)) + q_h(n - q_h(n-2)).
  static TwoTermSpec hofstadter();
  /// T(0) = T(1) = T(2) = 1, T(n) = T(n-1-T(n-1)) + T(n-2-T(n-2)).
  static TwoTermSpec tanny();
  /// V(1..4) = 1, V(n) = V(n - V(n-1)) + V(n - V(n-4)).
  static TwoTermSpec v_variant();
  /// r(3..12) = 1,1,3,5,1,4,7,6,4,9 under the Hofstadter recursion;
  /// eventually quasi-polynomial with period 5.
  static TwoTermSpec quasi_polynomial_r();
};

/// Computes indices first_index..n_max. Throws InvalidParameter on a bad spec.
QTrace compute_two_term(const TwoTermSpec& spec, Int n_max);

/// c(n) = q_h(n - q_h(n-2)) for n = 3..n_max; element 0 is c(3).
std::vector<Int> compute_c(Int n_max);

}  // namespace dilhof
