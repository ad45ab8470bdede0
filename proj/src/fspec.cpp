#include "dilhof/fspec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "dilhof/errors.hpp"

namespace dilhof {

namespace mp = boost::multiprecision;

namespace fkind {

bool operator==(const Shifted& a, const Shifted& b) {
  return a.k == b.k && a.inner && b.inner && *a.inner == *b.inner;
}

bool operator==(const Perturbed& a, const Perturbed& b) {
  return a.index == b.index && a.amount == b.amount && a.inner && b.inner && *a.inner == *b.inner;
}

}  // namespace fkind

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr Int kUnbounded = std::numeric_limits<Int>::max();
constexpr Int kMaxExponentPart = 64;

using HighFloat = mp::cpp_bin_float_100;

// floor of a real number known approximately as `approx`. When the
// approximation is too close to an integer to trust, `precise` is evaluated
// at 100 decimal digits; a value within 1e-60 of an integer is taken to be
// that integer.
template <class Precise>
Int robust_floor(long double approx, Precise&& precise) {
  const long double fl = std::floor(approx);
  const long double dist = std::min(approx - fl, fl + 1 - approx);
  if (std::isfinite(approx) && dist > 1e-9L) {
    if (std::fabs(fl) > 9.0e18L) throw OverflowError("floor value exceeds 64-bit range");
    return static_cast<Int>(fl);
  }
  const HighFloat v = precise();
  const HighFloat r = mp::round(v);
  const HighFloat chosen = mp::abs(v - r) < HighFloat("1e-60") ? r : HighFloat(mp::floor(v));
  if (mp::abs(chosen) > HighFloat("9.0e18")) throw OverflowError("floor value exceeds 64-bit range");
  return chosen.convert_to<Int>();
}

HighFloat high(const Rational& r) { return HighFloat(r.num) / HighFloat(r.den); }

// floor(a - a / n^b) for a > 0 and b = s/t > 0, exactly: the largest k with
// u^t <= (u - k v)^t n^s where a = u/v.
Int floor_a_minus_a_over_pow(const Rational& a, const Rational& b, Int n) {
  using mp::cpp_int;
  const cpp_int u = a.num;
  const cpp_int v = a.den;
  const auto s = static_cast<unsigned>(b.num);
  const auto t = static_cast<unsigned>(b.den);
  const cpp_int lhs = mp::pow(u, t);
  const cpp_int n_pow = mp::pow(cpp_int(n), s);
  auto holds = [&](Int k) { return lhs <= mp::pow(u - cpp_int(k) * v, t) * n_pow; };
  Int lo = 0;                   // holds(0) is always true since n >= 1
  Int hi = (a.num - 1) / a.den;  // largest k with k < a
  while (lo < hi) {
    const Int mid = lo + (hi - lo + 1) / 2;
    if (holds(mid))
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

Int eval_const_limit(const fkind::ConstLimit& c, Int n) {
  using fkind::ConstLimitForm;
  switch (c.form) {
    case ConstLimitForm::Sqrt:
      return floor_a_minus_a_over_pow(c.a, Rational{1, 2}, n);
    case ConstLimitForm::Pow:
      return floor_a_minus_a_over_pow(c.a, c.b, n);
    case ConstLimitForm::Exp: {
      const long double a = c.a.value();
      const long double approx = a - a * std::exp(-c.b.value() * static_cast<long double>(n));
      return robust_floor(approx, [&] {
        const HighFloat ah = high(c.a);
        return HighFloat(ah - ah * mp::exp(-high(c.b) * n));
      });
    }
    case ConstLimitForm::Clamp: {
      const Int m = std::min(n, c.n0);
      return floor_div(checked_mul(c.a.num, m), c.a.den);
    }
  }
  throw InvalidFSpec("unknown const-limit form");
}

Int eval_frac_power_sum(const fkind::FracPowerSum& s, Int n) {
  long double approx = 0;
  const auto x = static_cast<long double>(n);
  for (const auto& t : s.terms) approx += t.coefficient.value() * std::pow(x, t.exponent.value());
  return robust_floor(approx, [&] {
    HighFloat sum = 0;
    const HighFloat xh = n;
    for (const auto& t : s.terms) {
      const HighFloat p = t.exponent.num == 0 ? HighFloat(1) : HighFloat(mp::pow(xh, high(t.exponent)));
      sum += high(t.coefficient) * p;
    }
    return sum;
  });
}

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidParameter(message);
}

void validate_rational_exponent(const Rational& r, const char* what) {
  require(r.den >= 1 && r.den <= kMaxExponentPart && r.num >= 0 && r.num <= kMaxExponentPart,
          std::string(what) + " must be a non-negative rational with parts <= 64");
}

void validate(const FSpec::Kind& kind) {
  std::visit(
      Overloaded{
          [](const fkind::FloorRational& k) {
            require(k.q >= 1 && k.p >= 0 && k.p < k.q, "floor:p/q requires 0 <= p < q");
          },
          [](const fkind::OneMinusDelta& k) {
            require(k.n1 == 1, "one-minus-delta:n1 gives f(1) != 0 unless n1 = 1");
          },
          [](const fkind::ModM& k) { require(k.m >= 1, "mod:m requires m >= 1"); },
          [](const fkind::ExplicitPrefix& k) {
            require(!k.values.empty(), "prefix must be non-empty");
            require(k.values.front() == 0, "prefix must start with f(1) = 0");
          },
          [](const fkind::DiffBitstream& k) {
            require(std::all_of(k.bits.begin(), k.bits.end(), [](char c) { return c == '0' || c == '1'; }),
                    "bits must be a 0/1 string");
          },
          [](const fkind::Shifted& k) {
            require(k.k >= 0, "shift requires k >= 0");
            require(k.inner != nullptr, "shift requires an inner spec");
          },
          [](const fkind::ConstLimit& k) {
            using fkind::ConstLimitForm;
            require(k.a.den >= 1, "const-limit: invalid a");
            switch (k.form) {
              case ConstLimitForm::Sqrt:
                require(k.a.num > 0, "const-limit:sqrt requires a > 0");
                break;
              case ConstLimitForm::Pow:
                require(k.a.num > 0, "const-limit:pow requires a > 0");
                validate_rational_exponent(k.b, "const-limit:pow b");
                require(k.b.num > 0, "const-limit:pow requires b > 0");
                break;
              case ConstLimitForm::Exp:
                require(k.a.num > 0, "const-limit:exp requires a > 0");
                require(k.b.num > 0 && k.b.den >= 1, "const-limit:exp requires b > 0");
                break;
              case ConstLimitForm::Clamp:
                require(k.a.num >= 0 && k.a.num < k.a.den, "const-limit:clamp requires 0 <= a < 1");
                require(k.n0 >= 1, "const-limit:clamp requires n0 >= 1");
                break;
            }
          },
          [](const fkind::FracPowerSum& k) {
            require(!k.terms.empty(), "fracpow requires at least one term");
            for (const auto& t : k.terms) {
              require(t.coefficient.den >= 1, "fracpow: invalid coefficient");
              validate_rational_exponent(t.exponent, "fracpow exponent");
            }
          },
          [](const fkind::Perturbed& k) {
            require(k.inner != nullptr, "perturb requires an inner spec");
            require(k.index >= 1, "perturb index must be >= 1");
            require(k.index > 1 || k.amount == 0, "perturbing f(1) would break f(1) = 0");
          },
          [](const auto&) {},
      },
      kind);
}

std::vector<Int> cumulative_bits(const std::string& bits) {
  std::vector<Int> values(bits.size() + 1, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) values[i + 1] = values[i] + (bits[i] == '1');
  return values;
}

}  // namespace

FSpec::FSpec(Kind kind) {
  validate(kind);
  if (const auto* b = std::get_if<fkind::DiffBitstream>(&kind))
    cache_ = std::make_shared<const std::vector<Int>>(cumulative_bits(b->bits));
  kind_ = std::make_shared<const Kind>(std::move(kind));
  if (eval_f(*this, 1) != 0) throw InvalidParameter("f(1) must be 0 for " + to_string(*this));
}

FSpec FSpec::perturbed(const FSpec& inner, Int index, Int amount) {
  return FSpec(fkind::Perturbed{index, amount, std::make_shared<const FSpec>(inner)});
}

Int FSpec::length() const {
  return std::visit(Overloaded{
                        [](const fkind::ExplicitPrefix& k) { return static_cast<Int>(k.values.size()); },
                        [](const fkind::DiffBitstream& k) { return static_cast<Int>(k.bits.size()) + 1; },
                        [](const fkind::Shifted& k) {
                          const Int inner = k.inner->length();
                          return inner == kUnbounded ? kUnbounded : inner + k.k;
                        },
                        [](const fkind::Perturbed& k) { return k.inner->length(); },
                        [](const auto&) { return kUnbounded; },
                    },
                    kind());
}

bool FSpec::declared_slow() const {
  return std::visit(Overloaded{
                        [](const fkind::ModM& k) { return k.m == 1; },
                        [](const fkind::EvenPairs&) { return false; },
                        [](const fkind::FracPowerSum&) { return false; },
                        [](const fkind::ExplicitPrefix& k) { return check_property_D(k.values, true); },
                        [](const fkind::Shifted& k) { return k.inner->declared_slow(); },
                        [](const fkind::Perturbed& k) { return k.amount == 0 && k.inner->declared_slow(); },
                        [](const auto&) { return true; },
                    },
                    kind());
}

Int eval_f(const FSpec& spec, Int n) {
  if (n < 1) throw IndexError("f is indexed from 1, got n = " + std::to_string(n));
  return std::visit(
      Overloaded{
          [](const fkind::Zeros&) -> Int { return 0; },
          [n](const fkind::Linear&) -> Int { return n - 1; },
          [n](const fkind::FloorRational& k) -> Int { return floor_div(checked_mul(k.p, n), k.q); },
          [n](const fkind::GammaSq&) -> Int { return floor_gamma_sq_times(n); },
          [n](const fkind::NPlus2Over4&) -> Int { return (n + 2) / 4; },
          [n](const fkind::EvenPairs&) -> Int { return 2 * ((n - 1) / 2); },
          [n](const fkind::OneMinusDelta& k) -> Int { return n == k.n1 ? 0 : 1; },
          [n](const fkind::ModM& k) -> Int { return (n - 1) % k.m; },
          [n](const fkind::ExplicitPrefix& k) -> Int {
            if (n > static_cast<Int>(k.values.size()))
              throw InvalidFSpec("prefix defines only " + std::to_string(k.values.size()) + " terms, asked for n = " +
                                 std::to_string(n));
            return k.values[static_cast<std::size_t>(n - 1)];
          },
          [n, &spec](const fkind::DiffBitstream& k) -> Int {
            if (n > static_cast<Int>(k.bits.size()) + 1)
              throw InvalidFSpec("bitstream defines only " + std::to_string(k.bits.size() + 1) +
                                 " terms, asked for n = " + std::to_string(n));
            return (*spec.cache_)[static_cast<std::size_t>(n - 1)];
          },
          [n](const fkind::Shifted& k) -> Int { return n <= k.k ? 0 : eval_f(*k.inner, n - k.k); },
          [n](const fkind::ConstLimit& k) -> Int { return eval_const_limit(k, n); },
          [n](const fkind::FracPowerSum& k) -> Int { return eval_frac_power_sum(k, n); },
          [n](const fkind::Perturbed& k) -> Int {
            const Int base = eval_f(*k.inner, n);
            return n == k.index ? checked_add(base, k.amount) : base;
          },
      },
      spec.kind());
}

std::vector<Int> generate_f(const FSpec& spec, Int n_max) {
  if (n_max < 1) throw InvalidFSpec("n_max must be >= 1");
  if (n_max > spec.length())
    throw InvalidFSpec(to_string(spec) + " defines only " + std::to_string(spec.length()) + " terms");
  std::vector<Int> f(static_cast<std::size_t>(n_max));
  for (Int n = 1; n <= n_max; ++n) f[static_cast<std::size_t>(n - 1)] = eval_f(spec, n);
  if (std::holds_alternative<fkind::ConstLimit>(spec.kind()) && !check_property_D(f, true))
    throw InvalidParameter(to_string(spec) + " does not have property D0 up to n = " + std::to_string(n_max));
  return f;
}

FSpec shift_f(const FSpec& spec, Int k) {
  if (k < 0) throw InvalidParameter("shift requires k >= 0");
  if (k == 0 || std::holds_alternative<fkind::Zeros>(spec.kind())) return spec;
  if (const auto* s = std::get_if<fkind::Shifted>(&spec.kind()))
    return FSpec(fkind::Shifted{checked_add(s->k, k), s->inner});
  return FSpec(fkind::Shifted{k, std::make_shared<const FSpec>(spec)});
}

bool check_property_D(const std::vector<Int>& seq, bool require_zero_start) {
  if (seq.empty()) return false;
  if (require_zero_start && seq.front() != 0) return false;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    const Int d = seq[i] - seq[i - 1];
    if (d != 0 && d != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

std::vector<Int> fm_member(Int m, std::uint64_t index) {
  if (m < 1) throw InvalidParameter("F_m requires m >= 1");
  if (m > kMaxEnumerationLength) throw CapExceeded("F_m enumeration is capped at m = 24");
  std::vector<Int> f(static_cast<std::size_t>(m), 0);
  for (Int j = 1; j < m; ++j) {
    const auto bit = (index >> (m - 1 - j)) & 1U;
    f[static_cast<std::size_t>(j)] = f[static_cast<std::size_t>(j - 1)] + static_cast<Int>(bit);
  }
  return f;
}

FmRange::FmRange(Int m) : m_(m) {
  if (m < 1) throw InvalidParameter("F_m requires m >= 1");
  if (m > kMaxEnumerationLength) throw CapExceeded("F_m enumeration is capped at m = 24");
  count_ = std::uint64_t{1} << (m - 1);
}

FmRange::iterator::iterator(Int m, std::uint64_t index) : m_(m), index_(index) {
  if (index_ < (std::uint64_t{1} << (m_ - 1))) current_ = fm_member(m_, index_);
}

FmRange::iterator& FmRange::iterator::operator++() {
  ++index_;
  if (index_ < (std::uint64_t{1} << (m_ - 1))) current_ = fm_member(m_, index_);
  return *this;
}

}  // namespace dilhof
