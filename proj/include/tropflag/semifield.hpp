#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "tropflag/error.hpp"
#include "tropflag/polynomial.hpp"

namespace tropflag {

enum class SemifieldTag { PosRational, TropicalInt, PosRatFun };

std::string_view tag_name(SemifieldTag tag);  // "posrat", "tropical", "ratfun"
SemifieldTag parse_tag(std::string_view name);

// Strictly positive rationals under the usual operations.
class PosRational {
 public:
  static constexpr SemifieldTag kTag = SemifieldTag::PosRational;

  explicit PosRational(mpq_class q);

  static PosRational one() { return PosRational(mpq_class(1)); }
  static PosRational from_natural(std::uint64_t n);

  const mpq_class& value() const { return q_; }
  PosRational pow(long n) const;

  friend PosRational operator+(const PosRational& a, const PosRational& b);
  friend PosRational operator*(const PosRational& a, const PosRational& b);
  friend PosRational operator/(const PosRational& a, const PosRational& b);
  friend bool operator==(const PosRational& a, const PosRational& b) { return a.q_ == b.q_; }

  std::string str() const;
  static PosRational parse(std::string_view text);

 private:
  struct Trusted {};
  PosRational(mpq_class q, Trusted) : q_(std::move(q)) {}
  mpq_class q_;
};

// Integers with min as addition and + as multiplication.
class TropicalInt {
 public:
  static constexpr SemifieldTag kTag = SemifieldTag::TropicalInt;

  TropicalInt() = default;
  explicit TropicalInt(mpz_class n) : n_(std::move(n)) {}
  explicit TropicalInt(long n) : n_(n) {}

  static TropicalInt one() { return TropicalInt(); }
  static TropicalInt from_natural(std::uint64_t n);

  const mpz_class& value() const { return n_; }
  TropicalInt pow(long n) const { return TropicalInt(mpz_class(n_ * n)); }

  friend TropicalInt operator+(const TropicalInt& a, const TropicalInt& b) { return a.n_ <= b.n_ ? a : b; }
  friend TropicalInt operator*(const TropicalInt& a, const TropicalInt& b) { return TropicalInt(mpz_class(a.n_ + b.n_)); }
  friend TropicalInt operator/(const TropicalInt& a, const TropicalInt& b) { return TropicalInt(mpz_class(a.n_ - b.n_)); }
  friend bool operator==(const TropicalInt& a, const TropicalInt& b) { return a.n_ == b.n_; }

  std::string str() const { return n_.get_str(); }
  static TropicalInt parse(std::string_view text);

 private:
  mpz_class n_ = 0;
};

// Rational functions x^e * f1 / f2 whose numerator and denominator have
// positive constant terms.
class PosRatFun {
 public:
  static constexpr SemifieldTag kTag = SemifieldTag::PosRatFun;

  explicit PosRatFun(RationalFunction f);

  static PosRatFun one() { return PosRatFun(RationalFunction::constant(1)); }
  static PosRatFun from_natural(std::uint64_t n);
  static PosRatFun x_power(long e) { return PosRatFun(RationalFunction::x_power(e)); }
  static PosRatFun constant(const mpq_class& c) { return PosRatFun(RationalFunction::constant(c)); }

  const RationalFunction& value() const { return f_; }
  const mpz_class& exponent() const { return f_.exponent(); }
  PosRatFun pow(long n) const;

  friend PosRatFun operator+(const PosRatFun& a, const PosRatFun& b);
  friend PosRatFun operator*(const PosRatFun& a, const PosRatFun& b);
  friend PosRatFun operator/(const PosRatFun& a, const PosRatFun& b);
  friend bool operator==(const PosRatFun& a, const PosRatFun& b) { return a.f_ == b.f_; }

  std::string str() const { return f_.str(); }
  static PosRatFun parse(std::string_view text);

 private:
  struct Trusted {};
  PosRatFun(RationalFunction f, Trusted) : f_(std::move(f)) {}
  RationalFunction f_;
};

template <class K>
concept Semifield = std::copyable<K> && requires(const K& a, const K& b, long n, std::uint64_t u, std::string_view s) {
  { K::kTag } -> std::convertible_to<SemifieldTag>;
  { K::one() } -> std::same_as<K>;
  { K::from_natural(u) } -> std::same_as<K>;
  { a + b } -> std::same_as<K>;
  { a * b } -> std::same_as<K>;
  { a / b } -> std::same_as<K>;
  { a.pow(n) } -> std::same_as<K>;
  { a == b } -> std::convertible_to<bool>;
  { a.str() } -> std::convertible_to<std::string>;
  { K::parse(s) } -> std::same_as<K>;
};

// K extended by the absent element: absent + a = a, absent * a = absent.
template <Semifield K>
class Ext {
 public:
  using value_type = K;

  Ext() = default;
  Ext(K v) : v_(std::move(v)) {}  // NOLINT: implicit by design

  static Ext absent() { return Ext(); }
  static Ext one() { return Ext(K::one()); }

  bool present() const { return v_.has_value(); }
  bool is_absent() const { return !v_.has_value(); }
  const K& value() const {
    if (!v_) fail(ErrorCode::AbsentOperand, "absent value where a semifield element is required");
    return *v_;
  }

  friend Ext operator+(const Ext& a, const Ext& b) {
    if (!a.v_) return b;
    if (!b.v_) return a;
    return Ext(*a.v_ + *b.v_);
  }
  friend Ext operator*(const Ext& a, const Ext& b) {
    if (!a.v_ || !b.v_) return Ext();
    return Ext(*a.v_ * *b.v_);
  }
  friend Ext operator/(const Ext& a, const Ext& b) {
    if (!b.v_) fail(ErrorCode::AbsentOperand, "division by the absent element");
    if (!a.v_) return Ext();
    return Ext(*a.v_ / *b.v_);
  }
  Ext& operator+=(const Ext& o) { return *this = *this + o; }
  Ext& operator*=(const Ext& o) { return *this = *this * o; }
  friend bool operator==(const Ext& a, const Ext& b) = default;

  std::string str() const;
  static Ext parse(std::string_view text);

 private:
  std::optional<K> v_;
};

// Textual form of the absent element for a given semifield.
constexpr std::string_view absent_token(SemifieldTag tag) {
  return tag == SemifieldTag::TropicalInt ? "inf" : "0";
}

template <Semifield K>
std::string Ext<K>::str() const {
  return v_ ? v_->str() : std::string(absent_token(K::kTag));
}

template <Semifield K>
Ext<K> Ext<K>::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text == absent_token(K::kTag)) return Ext();
  return Ext(K::parse(text));
}

// N = 0 goes to the absent element, otherwise the sum of N units.
template <Semifield K>
Ext<K> nat_embed(std::uint64_t n) {
  if (n == 0) return Ext<K>();
  return Ext<K>(K::from_natural(n));
}

// Reference form of nat_embed that literally sums units.
template <Semifield K>
Ext<K> nat_embed_by_sum(std::uint64_t n) {
  Ext<K> acc;
  for (std::uint64_t k = 0; k < n; ++k) acc += Ext<K>::one();
  return acc;
}

TropicalInt valuation(const PosRatFun& a);
Ext<TropicalInt> valuation(const Ext<PosRatFun>& a);

// Throws NonPositiveEvaluation when the value is not a positive rational.
PosRational evaluate_at(const PosRatFun& a, const PosRational& t);
Ext<PosRational> evaluate_at(const Ext<PosRatFun>& a, const PosRational& t);

// Runtime-tagged element of one of the three extended semifields.
using AnyValue = std::variant<Ext<PosRational>, Ext<TropicalInt>, Ext<PosRatFun>>;

SemifieldTag tag_of(const AnyValue& a);
AnyValue add(const AnyValue& a, const AnyValue& b);
AnyValue mul(const AnyValue& a, const AnyValue& b);
AnyValue div(const AnyValue& a, const AnyValue& b);
AnyValue nat_embed(SemifieldTag tag, std::uint64_t n);
AnyValue parse_value(SemifieldTag tag, std::string_view text);
std::string format_value(const AnyValue& a);

// Compile-time dispatch from a runtime tag.
template <class F>
decltype(auto) dispatch_tag(SemifieldTag tag, F&& f) {
  switch (tag) {
    case SemifieldTag::PosRational:
      return f(PosRational::one());
    case SemifieldTag::TropicalInt:
      return f(TropicalInt::one());
    case SemifieldTag::PosRatFun:
      return f(PosRatFun::one());
  }
  fail(ErrorCode::UsageError, "unknown semifield tag");
}

}  // namespace tropflag
