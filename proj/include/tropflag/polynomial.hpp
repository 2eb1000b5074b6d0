#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tropflag {

// Dense univariate polynomial with exact rational coefficients, lowest degree
// first. Trailing zero coefficients are never stored, so the zero polynomial
// has an empty coefficient vector.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<mpq_class> coeffs);

  static Polynomial constant(const mpq_class& c);
  static Polynomial monomial(const mpq_class& c, std::size_t degree);

  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }
  mpq_class coeff(std::size_t k) const;
  const mpq_class& leading() const { return coeffs_.back(); }

  // Multiplicity of x as a factor; 0 for the zero polynomial.
  std::size_t x_valuation() const;
  Polynomial shift_down(std::size_t k) const;
  Polynomial shift_up(std::size_t k) const;

  Polynomial scaled(const mpq_class& c) const;
  mpq_class evaluate(const mpq_class& t) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  // Quotient and remainder; divisor must be nonzero.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
  // Monic greatest common divisor (zero only when both inputs are zero).
  static Polynomial gcd(Polynomial a, Polynomial b);

  // "c0+c1*x+c2*x^2" with rationals written p/q.
  std::string str() const;
  static Polynomial parse(std::string_view text);

 private:
  void trim();
  std::vector<mpq_class> coeffs_;
};

// An element of the field Q(x), held as x^e * num / den with num(0) != 0,
// den(0) == 1 and gcd(num, den) == 1. Zero is a distinguished state. The
// representation is canonical, so equality is structural.
class RationalFunction {
 public:
  RationalFunction() = default;  // zero

  static RationalFunction from_parts(mpz_class e, Polynomial num, Polynomial den);
  static RationalFunction constant(const mpq_class& c);
  static RationalFunction x_power(const mpz_class& e);

  bool is_zero() const { return zero_; }
  const mpz_class& exponent() const { return e_; }
  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  // Value at t; throws NonPositiveEvaluation if the denominator vanishes at t
  // or a negative power of x is evaluated at t == 0.
  mpq_class evaluate(const mpq_class& t) const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) = default;

  std::string str() const;
  static RationalFunction parse(std::string_view text);

 private:
  bool zero_ = true;
  mpz_class e_ = 0;
  Polynomial num_;
  Polynomial den_;
};

}  // namespace tropflag
