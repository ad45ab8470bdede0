// Textual FSpec grammar.
//
//   spec  := "zeros" | "linear" | "gamma2" | "nplus2over4" | "even-pairs"
//          | "floor:" rat | "one-minus-delta:" int | "mod:" int
//          | "prefix:" int ("," int)* | "bits:" [01]*
//          | "shift:" int ":(" spec ")"
//          | "perturb:" int ":" signed-int ":(" spec ")"
//          | "const-limit:" ("sqrt" | "exp" | "pow" | "clamp") ":" key=rat ("," key=rat)*
//          | "fracpow:" term (("+" | "-") term)*
//   term  := rat ["*n^" rat]
//   rat   := ["-"] digits ["/" digits]

#include <cctype>
#include <numeric>
#include <sstream>

#include "dilhof/errors.hpp"
#include "dilhof/fspec.hpp"

namespace dilhof {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ == text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  bool consume(std::string_view token) {
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!consume(token)) fail("expected '" + std::string(token) + "'");
  }

  Int integer() {
    const std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    const std::size_t digits = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == digits) fail("expected an integer");
    try {
      return std::stoll(std::string(text_.substr(start, pos_ - start)));
    } catch (const std::out_of_range&) {
      fail("integer out of range");
    }
  }

  Rational rational() {
    const Int num = integer();
    Int den = 1;
    if (consume("/")) den = integer();
    if (den <= 0) fail("rational denominator must be positive");
    const Int g = std::gcd(num, den);
    return {num / g, den / g};
  }

  template <class Pred>
  std::string_view take_while(Pred pred) {
    const std::size_t start = pos_;
    while (!done() && pred(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  std::string_view rest() const { return text_.substr(pos_); }

  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidFSpec("cannot parse f-spec '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " +
                       what);
  }

  // Text of a parenthesised group, leaving the cursor after ")".
  std::string_view group() {
    expect("(");
    const std::size_t start = pos_;
    int depth = 1;
    while (!done()) {
      const char c = text_[pos_++];
      if (c == '(') ++depth;
      if (c == ')' && --depth == 0) return text_.substr(start, pos_ - start - 1);
    }
    fail("unbalanced parentheses");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

FSpec parse_const_limit(Cursor& c) {
  using fkind::ConstLimitForm;
  ConstLimitForm form;
  if (c.consume("sqrt"))
    form = ConstLimitForm::Sqrt;
  else if (c.consume("exp"))
    form = ConstLimitForm::Exp;
  else if (c.consume("pow"))
    form = ConstLimitForm::Pow;
  else if (c.consume("clamp"))
    form = ConstLimitForm::Clamp;
  else
    c.fail("unknown const-limit form");
  c.expect(":");
  fkind::ConstLimit k{form, {1, 1}, {1, 1}, 1};
  bool have_a = false, have_b = false, have_n0 = false;
  do {
    if (c.consume("a=")) {
      k.a = c.rational();
      have_a = true;
    } else if (c.consume("b=")) {
      k.b = c.rational();
      have_b = true;
    } else if (c.consume("n0=")) {
      k.n0 = c.integer();
      have_n0 = true;
    } else {
      c.fail("expected a=, b= or n0=");
    }
  } while (c.consume(","));
  if (!have_a) c.fail("const-limit requires a=");
  const bool needs_b = form == ConstLimitForm::Exp || form == ConstLimitForm::Pow;
  if (needs_b != have_b) c.fail(needs_b ? "this form requires b=" : "this form takes no b=");
  if ((form == ConstLimitForm::Clamp) != have_n0) c.fail("n0= is required by, and only by, the clamp form");
  return FSpec(k);
}

FSpec parse_frac_pow(Cursor& c) {
  std::vector<fkind::PowerTerm> terms;
  bool negate = c.consume("-");
  while (true) {
    fkind::PowerTerm t{{1, 1}, {0, 1}};
    if (c.consume("n^")) {
      t.exponent = c.rational();
    } else {
      t.coefficient = c.rational();
      if (c.consume("*n^")) t.exponent = c.rational();
    }
    if (negate) t.coefficient.num = -t.coefficient.num;
    terms.push_back(t);
    if (c.consume("+"))
      negate = false;
    else if (c.consume("-"))
      negate = true;
    else
      break;
  }
  return FSpec::frac_power_sum(std::move(terms));
}

FSpec parse_at(Cursor& c) {
  FSpec result = FSpec::zeros();
  if (c.consume("zeros")) {
  } else if (c.consume("linear")) {
    result = FSpec::linear();
  } else if (c.consume("gamma2")) {
    result = FSpec::gamma_sq();
  } else if (c.consume("nplus2over4")) {
    result = FSpec::n_plus_2_over_4();
  } else if (c.consume("even-pairs")) {
    result = FSpec::even_pairs();
  } else if (c.consume("floor:")) {
    const Rational r = c.rational();
    result = FSpec::floor_rational(r.num, r.den);
  } else if (c.consume("one-minus-delta:")) {
    result = FSpec::one_minus_delta(c.integer());
  } else if (c.consume("mod:")) {
    result = FSpec::mod(c.integer());
  } else if (c.consume("prefix:")) {
    std::vector<Int> values{c.integer()};
    while (c.consume(",")) values.push_back(c.integer());
    result = FSpec::prefix(std::move(values));
  } else if (c.consume("bits:")) {
    result = FSpec::bits(std::string(c.take_while([](char ch) { return ch == '0' || ch == '1'; })));
  } else if (c.consume("shift:")) {
    const Int k = c.integer();
    c.expect(":");
    const FSpec inner = parse_fspec(c.group());
    result = FSpec(fkind::Shifted{k, std::make_shared<const FSpec>(inner)});
  } else if (c.consume("perturb:")) {
    const Int index = c.integer();
    c.expect(":");
    const Int amount = c.integer();
    c.expect(":");
    result = FSpec::perturbed(parse_fspec(c.group()), index, amount);
  } else if (c.consume("const-limit:")) {
    result = parse_const_limit(c);
  } else if (c.consume("fracpow:")) {
    result = parse_frac_pow(c);
  } else {
    c.fail("unknown f-spec kind");
  }
  return result;
}

const char* form_name(fkind::ConstLimitForm form) {
  switch (form) {
    case fkind::ConstLimitForm::Sqrt:
      return "sqrt";
    case fkind::ConstLimitForm::Exp:
      return "exp";
    case fkind::ConstLimitForm::Pow:
      return "pow";
    case fkind::ConstLimitForm::Clamp:
      return "clamp";
  }
  return "?";
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Rational parse_rational(std::string_view text) {
  Cursor c(text);
  const Rational r = c.rational();
  if (!c.done()) c.fail("trailing characters");
  return r;
}

std::string to_string(const Rational& r) {
  return r.den == 1 ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
}

FSpec parse_fspec(std::string_view text) {
  Cursor c(text);
  FSpec spec = parse_at(c);
  if (!c.done()) c.fail("trailing characters '" + std::string(c.rest()) + "'");
  return spec;
}

std::string to_string(const FSpec& spec) {
  return std::visit(
      Overloaded{
          [](const fkind::Zeros&) -> std::string { return "zeros"; },
          [](const fkind::Linear&) -> std::string { return "linear"; },
          [](const fkind::GammaSq&) -> std::string { return "gamma2"; },
          [](const fkind::NPlus2Over4&) -> std::string { return "nplus2over4"; },
          [](const fkind::EvenPairs&) -> std::string { return "even-pairs"; },
          [](const fkind::FloorRational& k) { return "floor:" + std::to_string(k.p) + "/" + std::to_string(k.q); },
          [](const fkind::OneMinusDelta& k) { return "one-minus-delta:" + std::to_string(k.n1); },
          [](const fkind::ModM& k) { return "mod:" + std::to_string(k.m); },
          [](const fkind::ExplicitPrefix& k) {
            std::string s = "prefix:";
            for (std::size_t i = 0; i < k.values.size(); ++i) s += (i ? "," : "") + std::to_string(k.values[i]);
            return s;
          },
          [](const fkind::DiffBitstream& k) { return "bits:" + k.bits; },
          [](const fkind::Shifted& k) { return "shift:" + std::to_string(k.k) + ":(" + to_string(*k.inner) + ")"; },
          [](const fkind::Perturbed& k) {
            return "perturb:" + std::to_string(k.index) + ":" + (k.amount >= 0 ? "+" : "") +
                   std::to_string(k.amount) + ":(" + to_string(*k.inner) + ")";
          },
          [](const fkind::ConstLimit& k) {
            std::string s = std::string("const-limit:") + form_name(k.form) + ":a=" + to_string(k.a);
            if (k.form == fkind::ConstLimitForm::Exp || k.form == fkind::ConstLimitForm::Pow)
              s += ",b=" + to_string(k.b);
            if (k.form == fkind::ConstLimitForm::Clamp) s += ",n0=" + std::to_string(k.n0);
            return s;
          },
          [](const fkind::FracPowerSum& k) {
            std::string s = "fracpow:";
            for (std::size_t i = 0; i < k.terms.size(); ++i) {
              Rational c = k.terms[i].coefficient;
              if (c.num < 0) {
                s += "-";
                c.num = -c.num;
              } else if (i) {
                s += "+";
              }
              s += to_string(c);
              if (k.terms[i].exponent.num != 0) s += "*n^" + to_string(k.terms[i].exponent);
            }
            return s;
          },
      },
      spec.kind());
}

std::string_view fspec_grammar_help() {
  return R"(f-spec grammar:
  zeros                          f(n) = 0
  linear                         f(n) = n - 1
  floor:P/Q                      f(n) = floor(P n / Q), 0 <= P < Q
  gamma2                         f(n) = floor(gamma^2 n), gamma = (sqrt 5 - 1)/2
  nplus2over4                    f(n) = floor((n + 2) / 4)
  even-pairs                     f(n) = 2 floor((n - 1) / 2)
  one-minus-delta:1              f = (0, 1, 1, 1, ...)
  mod:M                          f(n) = (n - 1) mod M
  prefix:0,2,2                   explicit finite list
  bits:0110                      slow sequence with these differences
  shift:K:(SPEC)                 K leading zeros, then SPEC
  perturb:I:+A:(SPEC)            SPEC with A added at index I
  const-limit:sqrt:a=A           floor(A - A / sqrt n)
  const-limit:exp:a=A,b=B        floor(A - A exp(-B n))
  const-limit:pow:a=A,b=B        floor(A - A / n^B)
  const-limit:clamp:a=A,n0=N     floor(A min(n, N))
  fracpow:3/4*n^1/2+3/32*n^1/4+5/128   floor of a sum of rational powers
)";
}

}  // namespace dilhof
