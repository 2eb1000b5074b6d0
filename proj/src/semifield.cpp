#include "tropflag/semifield.hpp"

#include <cctype>

namespace tropflag {

std::string_view tag_name(SemifieldTag tag) {
  switch (tag) {
    case SemifieldTag::PosRational:
      return "posrat";
    case SemifieldTag::TropicalInt:
      return "tropical";
    case SemifieldTag::PosRatFun:
      return "ratfun";
  }
  return "?";
}

SemifieldTag parse_tag(std::string_view name) {
  if (name == "posrat") return SemifieldTag::PosRational;
  if (name == "tropical") return SemifieldTag::TropicalInt;
  if (name == "ratfun") return SemifieldTag::PosRatFun;
  fail(ErrorCode::UsageError, "unknown semifield '" + std::string(name) + "'");
}

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_integer_token(std::string_view s) {
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!is_integer_token(s)) fail(ErrorCode::ParseError, "not an integer: '" + std::string(s) + "'");
  if (s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s));
}

}  // namespace

// ---- PosRational ----

PosRational::PosRational(mpq_class q) : q_(std::move(q)) {
  q_.canonicalize();
  if (q_ <= 0) fail(ErrorCode::NonPositiveEvaluation, "positive rational expected, got " + q_.get_str());
}

PosRational PosRational::from_natural(std::uint64_t n) {
  require(n > 0, ErrorCode::InvariantViolation, "from_natural(0) is not in the semifield");
  return PosRational(mpq_class(mpz_class(static_cast<unsigned long>(n))), Trusted{});
}

PosRational PosRational::pow(long n) const {
  unsigned long a = static_cast<unsigned long>(n < 0 ? -n : n);
  mpz_class p, q;
  mpz_pow_ui(p.get_mpz_t(), q_.get_num_mpz_t(), a);
  mpz_pow_ui(q.get_mpz_t(), q_.get_den_mpz_t(), a);
  mpq_class r = n >= 0 ? mpq_class(p, q) : mpq_class(q, p);
  return PosRational(std::move(r), Trusted{});
}

PosRational operator+(const PosRational& a, const PosRational& b) {
  return PosRational(mpq_class(a.q_ + b.q_), PosRational::Trusted{});
}
PosRational operator*(const PosRational& a, const PosRational& b) {
  return PosRational(mpq_class(a.q_ * b.q_), PosRational::Trusted{});
}
PosRational operator/(const PosRational& a, const PosRational& b) {
  return PosRational(mpq_class(a.q_ / b.q_), PosRational::Trusted{});
}

std::string PosRational::str() const {
  return q_.get_den() == 1 ? q_.get_num().get_str() : q_.get_str();
}

PosRational PosRational::parse(std::string_view text) {
  text = strip(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return PosRational(mpq_class(parse_integer(text)));
  mpz_class den = parse_integer(strip(text.substr(slash + 1)));
  if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  return PosRational(mpq_class(parse_integer(strip(text.substr(0, slash))), den));
}

// ---- TropicalInt ----

TropicalInt TropicalInt::from_natural(std::uint64_t n) {
  require(n > 0, ErrorCode::InvariantViolation, "from_natural(0) is not in the semifield");
  return TropicalInt();
}

TropicalInt TropicalInt::parse(std::string_view text) { return TropicalInt(parse_integer(strip(text))); }

// ---- PosRatFun ----

PosRatFun::PosRatFun(RationalFunction f) : f_(std::move(f)) {
  if (f_.is_zero() || f_.numerator().coeffs()[0] <= 0)
    fail(ErrorCode::NonPositiveEvaluation, "rational function with nonpositive leading constant: " + f_.str());
}

PosRatFun PosRatFun::from_natural(std::uint64_t n) {
  require(n > 0, ErrorCode::InvariantViolation, "from_natural(0) is not in the semifield");
  return PosRatFun(RationalFunction::constant(mpq_class(mpz_class(static_cast<unsigned long>(n)))), Trusted{});
}

PosRatFun PosRatFun::pow(long n) const {
  RationalFunction base = n >= 0 ? f_ : RationalFunction::constant(1) / f_;
  unsigned long a = static_cast<unsigned long>(n < 0 ? -n : n);
  RationalFunction acc = RationalFunction::constant(1);
  while (a) {
    if (a & 1UL) acc = acc * base;
    a >>= 1;
    if (a) base = base * base;
  }
  return PosRatFun(std::move(acc), Trusted{});
}

// The lowest-order coefficient of a sum of two such functions is a positive
// combination of positive leading constants, so the invariant is preserved.
PosRatFun operator+(const PosRatFun& a, const PosRatFun& b) { return PosRatFun(a.f_ + b.f_, PosRatFun::Trusted{}); }
PosRatFun operator*(const PosRatFun& a, const PosRatFun& b) { return PosRatFun(a.f_ * b.f_, PosRatFun::Trusted{}); }
PosRatFun operator/(const PosRatFun& a, const PosRatFun& b) { return PosRatFun(a.f_ / b.f_, PosRatFun::Trusted{}); }

PosRatFun PosRatFun::parse(std::string_view text) { return PosRatFun(RationalFunction::parse(text)); }

// ---- homomorphisms ----

TropicalInt valuation(const PosRatFun& a) { return TropicalInt(a.exponent()); }

Ext<TropicalInt> valuation(const Ext<PosRatFun>& a) {
  if (a.is_absent()) return {};
  return valuation(a.value());
}

PosRational evaluate_at(const PosRatFun& a, const PosRational& t) {
  mpq_class v = a.value().evaluate(t.value());
  if (v <= 0)
    fail(ErrorCode::NonPositiveEvaluation, a.str() + " at " + t.str() + " is " + v.get_str());
  return PosRational(std::move(v));
}

Ext<PosRational> evaluate_at(const Ext<PosRatFun>& a, const PosRational& t) {
  if (a.is_absent()) return {};
  return evaluate_at(a.value(), t);
}

// ---- runtime-tagged values ----

SemifieldTag tag_of(const AnyValue& a) {
  return std::visit([](const auto& x) { return std::decay_t<decltype(x)>::value_type::kTag; }, a);
}

namespace {

template <class Op>
AnyValue binary(const AnyValue& a, const AnyValue& b, Op op) {
  if (a.index() != b.index())
    fail(ErrorCode::TagMismatch,
         std::string(tag_name(tag_of(a))) + " vs " + std::string(tag_name(tag_of(b))));
  return std::visit(
      [&](const auto& x) -> AnyValue {
        using E = std::decay_t<decltype(x)>;
        return op(x, std::get<E>(b));
      },
      a);
}

}  // namespace

AnyValue add(const AnyValue& a, const AnyValue& b) {
  return binary(a, b, [](const auto& x, const auto& y) { return x + y; });
}

AnyValue mul(const AnyValue& a, const AnyValue& b) {
  return binary(a, b, [](const auto& x, const auto& y) { return x * y; });
}

AnyValue div(const AnyValue& a, const AnyValue& b) {
  return binary(a, b, [](const auto& x, const auto& y) {
    if (x.is_absent()) fail(ErrorCode::AbsentOperand, "division of the absent element");
    return x / y;
  });
}

AnyValue nat_embed(SemifieldTag tag, std::uint64_t n) {
  return dispatch_tag(tag, [&](auto unit) -> AnyValue { return nat_embed<decltype(unit)>(n); });
}

AnyValue parse_value(SemifieldTag tag, std::string_view text) {
  return dispatch_tag(tag, [&](auto unit) -> AnyValue { return Ext<decltype(unit)>::parse(text); });
}

std::string format_value(const AnyValue& a) {
  return std::visit([](const auto& x) { return x.str(); }, a);
}

}  // namespace tropflag
