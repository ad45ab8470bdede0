#pragma once

#include <cstdint>
#include <iterator>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dilhof/intmath.hpp"

namespace dilhof {

struct Rational {
  Int num = 0;
  Int den = 1;

  friend bool operator==(const Rational&, const Rational&) = default;
  long double value() const { return static_cast<long double>(num) / static_cast<long double>(den); }
};

/// Parses "p", "-p" or "p/q"; the result is reduced with den > 0.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

class FSpec;

/// The f-sequence families. Every family is indexed from n = 1 and
/// generates f(1) = 0; construction of an FSpec rejects anything else.
namespace fkind {

struct Zeros {
  friend bool operator==(const Zeros&, const Zeros&) = default;
};
/// f(n) = n - 1
struct Linear {
  friend bool operator==(const Linear&, const Linear&) = default;
};
/// f(n) = floor(p n / q), 0 <= p < q.
struct FloorRational {
  Int p = 0;
  Int q = 1;
  friend bool operator==(const FloorRational&, const FloorRational&) = default;
};
/// f(n) = floor(gamma^2 n), gamma = (sqrt(5) - 1) / 2. Exact.
struct GammaSq {
  friend bool operator==(const GammaSq&, const GammaSq&) = default;
};
/// f(n) = floor((n + 2) / 4)
struct NPlus2Over4 {
  friend bool operator==(const NPlus2Over4&, const NPlus2Over4&) = default;
};
/// f(n) = 2 floor((n - 1) / 2) = (0, 0, 2, 2, 4, 4, ...). Not slow, but Q(f) exists.
struct EvenPairs {
  friend bool operator==(const EvenPairs&, const EvenPairs&) = default;
};
/// f(n) = 1 - delta(n - n1). Only n1 = 1 keeps f(1) = 0.
struct OneMinusDelta {
  Int n1 = 1;
  friend bool operator==(const OneMinusDelta&, const OneMinusDelta&) = default;
};
/// f(n) = (n - 1) mod m
struct ModM {
  Int m = 1;
  friend bool operator==(const ModM&, const ModM&) = default;
};
/// Finite list f(1), ..., f(len). Asking past the end is InvalidFSpec.
struct ExplicitPrefix {
  std::vector<Int> values;
  friend bool operator==(const ExplicitPrefix&, const ExplicitPrefix&) = default;
};
/// The unique slow sequence with f(1) = 0 whose successive differences are
/// the given 0/1 string. Defines len(bits) + 1 terms.
struct DiffBitstream {
  std::string bits;
  friend bool operator==(const DiffBitstream&, const DiffBitstream&) = default;
};
/// f'(n) = 0 for n <= k, f(n - k) otherwise.
struct Shifted {
  Int k = 1;
  std::shared_ptr<const FSpec> inner;
};

enum class ConstLimitForm {
  Sqrt,   ///< floor(a - a / sqrt(n))
  Exp,    ///< floor(a - a exp(-b n))
  Pow,    ///< floor(a - a / n^b)
  Clamp,  ///< floor(a n) for n < n0, floor(a n0) after
};

/// Slow sequences converging to a constant.
struct ConstLimit {
  ConstLimitForm form = ConstLimitForm::Sqrt;
  Rational a{1, 1};
  Rational b{1, 1};
  Int n0 = 1;
  friend bool operator==(const ConstLimit&, const ConstLimit&) = default;
};

struct PowerTerm {
  Rational coefficient;
  Rational exponent;  ///< exponent 0 is a constant term
  friend bool operator==(const PowerTerm&, const PowerTerm&) = default;
};
/// f(n) = floor(sum_i c_i n^{p_i})
struct FracPowerSum {
  std::vector<PowerTerm> terms;
  friend bool operator==(const FracPowerSum&, const FracPowerSum&) = default;
};
/// f(n) + amount * delta(n - index)
struct Perturbed {
  Int index = 2;
  Int amount = 0;
  std::shared_ptr<const FSpec> inner;
};

bool operator==(const Shifted& a, const Shifted& b);
bool operator==(const Perturbed& a, const Perturbed& b);

}  // namespace fkind

/// Declarative, immutable description of an f-sequence.
class FSpec {
 public:
  using Kind = std::variant<fkind::Zeros, fkind::Linear, fkind::FloorRational, fkind::GammaSq,
                            fkind::NPlus2Over4, fkind::EvenPairs, fkind::OneMinusDelta,
                            fkind::ModM, fkind::ExplicitPrefix, fkind::DiffBitstream,
                            fkind::Shifted, fkind::ConstLimit, fkind::FracPowerSum,
                            fkind::Perturbed>;

  /// Validates parameters; throws InvalidParameter when they are out of
  /// domain or the family would give f(1) != 0.
  explicit FSpec(Kind kind);

  const Kind& kind() const { return *kind_; }

  /// Number of terms the spec can produce; INT64_MAX when unbounded.
  Int length() const;

  /// Whether the family guarantees property D0 for every n it defines.
  /// ConstLimit is validated when materialized instead.
  bool declared_slow() const;

  friend bool operator==(const FSpec& a, const FSpec& b) { return a.kind() == b.kind(); }

  static FSpec zeros() { return FSpec(fkind::Zeros{}); }
  static FSpec linear() { return FSpec(fkind::Linear{}); }
  static FSpec floor_rational(Int p, Int q) { return FSpec(fkind::FloorRational{p, q}); }
  static FSpec gamma_sq() { return FSpec(fkind::GammaSq{}); }
  static FSpec n_plus_2_over_4() { return FSpec(fkind::NPlus2Over4{}); }
  static FSpec even_pairs() { return FSpec(fkind::EvenPairs{}); }
  static FSpec one_minus_delta(Int n1 = 1) { return FSpec(fkind::OneMinusDelta{n1}); }
  static FSpec mod(Int m) { return FSpec(fkind::ModM{m}); }
  static FSpec prefix(std::vector<Int> values) { return FSpec(fkind::ExplicitPrefix{std::move(values)}); }
  static FSpec bits(std::string bits) { return FSpec(fkind::DiffBitstream{std::move(bits)}); }
  static FSpec const_limit(fkind::ConstLimitForm form, Rational a, Rational b = {1, 1}, Int n0 = 1) {
    return FSpec(fkind::ConstLimit{form, a, b, n0});
  }
  static FSpec frac_power_sum(std::vector<fkind::PowerTerm> terms) {
    return FSpec(fkind::FracPowerSum{std::move(terms)});
  }
  static FSpec perturbed(const FSpec& inner, Int index, Int amount);

 private:
  // Shared so that copies are cheap; the kind is never mutated.
  std::shared_ptr<const Kind> kind_;
  // Cumulative values for DiffBitstream.
  std::shared_ptr<const std::vector<Int>> cache_;

  friend Int eval_f(const FSpec& spec, Int n);
};

/// f(n) for n >= 1. Floors are exact.
Int eval_f(const FSpec& spec, Int n);

/// f(1), ..., f(n_max). ConstLimit families are checked for property D0 here.
std::vector<Int> generate_f(const FSpec& spec, Int n_max);

/// One-step shift applied k times: f'(n) = 0 for n <= k, f(n - k) after.
FSpec shift_f(const FSpec& spec, Int k);

/// Textual grammar, e.g. "floor:1/2", "shift:3:(gamma2)". print(parse(s))
/// is canonical and parse(print(x)) == x.
FSpec parse_fspec(std::string_view text);
std::string to_string(const FSpec& spec);

/// Short human-readable grammar summary for usage messages.
std::string_view fspec_grammar_help();

/// Successive-difference test. With require_zero_start also demands a[1] = 0.
bool check_property_D(const std::vector<Int>& seq, bool require_zero_start);

// ---------------------------------------------------------------------------
// Enumeration of F_m

inline constexpr Int kMaxEnumerationLength = 24;

/// The member of F_m whose difference string, read as an (m-1)-bit binary
/// number with the first difference most significant, equals `index`.
std::vector<Int> fm_member(Int m, std::uint64_t index);

/// All 2^(m-1) members of F_m in lexicographic difference-string order.
class FmRange {
 public:
  explicit FmRange(Int m);

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = std::vector<Int>;
    using difference_type = std::ptrdiff_t;
    using pointer = const value_type*;
    using reference = const value_type&;

    iterator() = default;
    iterator(Int m, std::uint64_t index);

    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    iterator operator++(int) {
      iterator tmp = *this;
      ++*this;
      return tmp;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.index_ == b.index_; }

   private:
    Int m_ = 1;
    std::uint64_t index_ = 0;
    std::vector<Int> current_;
  };

  iterator begin() const { return {m_, 0}; }
  iterator end() const { return {m_, count_}; }
  std::uint64_t size() const { return count_; }

 private:
  Int m_;
  std::uint64_t count_;
};

inline FmRange enumerate_Fm(Int m) { return FmRange(m); }

}  // namespace dilhof
