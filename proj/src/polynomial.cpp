#include "tropflag/polynomial.hpp"

#include <cctype>
#include <sstream>

#include "tropflag/error.hpp"

namespace tropflag {

namespace {

std::string rational_str(const mpq_class& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }
  mpz_class integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) error("expected integer");
    std::string tok(s_.substr(start, pos_ - start));
    if (tok[0] == '+') tok.erase(0, 1);
    return mpz_class(tok);
  }
  bool at_digit() {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  }
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorCode::ParseError, msg + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  std::size_t pos() const { return pos_; }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

// Parses a polynomial until ')' or end of input; does not consume ')'.
Polynomial parse_poly(Cursor& cur) {
  std::vector<mpq_class> coeffs;
  bool first = true;
  while (!cur.done() && cur.peek() != ')') {
    int sign = 1;
    if (cur.accept('-')) {
      sign = -1;
    } else if (!cur.accept('+') && !first) {
      cur.error("expected '+' or '-'");
    }
    first = false;
    mpq_class c = 1;
    bool have_coeff = false;
    if (cur.at_digit()) {
      mpz_class num = cur.integer();
      mpz_class den = 1;
      if (cur.peek() == '/' ) {
        cur.accept('/');
        if (!cur.at_digit()) cur.error("expected denominator");
        den = cur.integer();
        if (den == 0) cur.error("zero denominator");
      }
      c = mpq_class(num, den);
      c.canonicalize();
      have_coeff = true;
    }
    std::size_t deg = 0;
    if (have_coeff) {
      if (cur.accept('*')) {
        if (!cur.accept('x')) cur.error("expected 'x'");
        deg = 1;
      } else if (cur.peek() == 'x') {
        cur.error("expected '*' before 'x'");
      }
    } else {
      if (!cur.accept('x')) cur.error("expected coefficient or 'x'");
      deg = 1;
    }
    if (deg == 1 && cur.accept('^')) {
      mpz_class k = cur.integer();
      if (k < 0 || !k.fits_uint_p()) cur.error("bad exponent");
      deg = k.get_ui();
    }
    if (coeffs.size() <= deg) coeffs.resize(deg + 1, mpq_class(0));
    coeffs[deg] += sign * c;
  }
  if (first) cur.error("empty polynomial");
  return Polynomial(std::move(coeffs));
}

}  // namespace

Polynomial::Polynomial(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(const mpq_class& c) { return Polynomial(std::vector<mpq_class>{c}); }

Polynomial Polynomial::monomial(const mpq_class& c, std::size_t degree) {
  std::vector<mpq_class> v(degree + 1, mpq_class(0));
  v[degree] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpq_class Polynomial::coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : mpq_class(0); }

std::size_t Polynomial::x_valuation() const {
  std::size_t k = 0;
  while (k < coeffs_.size() && coeffs_[k] == 0) ++k;
  return k == coeffs_.size() ? 0 : k;
}

Polynomial Polynomial::shift_down(std::size_t k) const {
  if (k >= coeffs_.size()) return {};
  return Polynomial(std::vector<mpq_class>(coeffs_.begin() + static_cast<long>(k), coeffs_.end()));
}

Polynomial Polynomial::shift_up(std::size_t k) const {
  if (is_zero()) return {};
  std::vector<mpq_class> v(k, mpq_class(0));
  v.insert(v.end(), coeffs_.begin(), coeffs_.end());
  return Polynomial(std::move(v));
}

Polynomial Polynomial::scaled(const mpq_class& c) const {
  if (c == 0) return {};
  std::vector<mpq_class> v = coeffs_;
  for (auto& x : v) x *= c;
  return Polynomial(std::move(v));
}

mpq_class Polynomial::evaluate(const mpq_class& t) const {
  mpq_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<mpq_class> v(std::max(a.coeffs_.size(), b.coeffs_.size()), mpq_class(0));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) v[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) v[k] += b.coeffs_[k];
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<mpq_class> v(std::max(a.coeffs_.size(), b.coeffs_.size()), mpq_class(0));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) v[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) v[k] -= b.coeffs_[k];
  return Polynomial(std::move(v));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> v(a.coeffs_.size() + b.coeffs_.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(v));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b) {
  require(!b.is_zero(), ErrorCode::InvariantViolation, "polynomial division by zero");
  std::vector<mpq_class> rem = a.coeffs_;
  if (rem.size() < b.coeffs_.size()) return {Polynomial{}, a};
  std::vector<mpq_class> quot(rem.size() - b.coeffs_.size() + 1, mpq_class(0));
  const mpq_class& lead = b.leading();
  for (std::size_t k = quot.size(); k-- > 0;) {
    mpq_class c = rem[k + b.coeffs_.size() - 1] / lead;
    quot[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) rem[k + j] -= c * b.coeffs_[j];
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.scaled(1 / a.leading());
}

std::string Polynomial::str() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const mpq_class& c = coeffs_[k];
    if (c == 0) continue;
    mpq_class mag = abs(c);
    if (c < 0) {
      out << '-';
    } else if (!first) {
      out << '+';
    }
    first = false;
    if (k == 0) {
      out << rational_str(mag);
      continue;
    }
    if (mag != 1) out << rational_str(mag) << '*';
    out << 'x';
    if (k > 1) out << '^' << k;
  }
  return out.str();
}

Polynomial Polynomial::parse(std::string_view text) {
  Cursor cur(text);
  Polynomial p = parse_poly(cur);
  if (!cur.done()) cur.error("trailing input");
  return p;
}

RationalFunction RationalFunction::from_parts(mpz_class e, Polynomial num, Polynomial den) {
  require(!den.is_zero(), ErrorCode::InvariantViolation, "rational function with zero denominator");
  RationalFunction r;
  if (num.is_zero()) return r;
  std::size_t kn = num.x_valuation();
  std::size_t kd = den.x_valuation();
  e += static_cast<unsigned long>(kn);
  e -= static_cast<unsigned long>(kd);
  if (kn) num = num.shift_down(kn);
  if (kd) den = den.shift_down(kd);
  if (den.degree() > 0 && num.degree() > 0) {
    Polynomial g = Polynomial::gcd(num, den);
    if (g.degree() > 0) {
      num = Polynomial::divmod(num, g).first;
      den = Polynomial::divmod(den, g).first;
    }
  }
  mpq_class d0 = den.coeffs()[0];
  if (d0 != 1) {
    mpq_class inv = 1 / d0;
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  r.zero_ = false;
  r.e_ = std::move(e);
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  return r;
}

RationalFunction RationalFunction::constant(const mpq_class& c) {
  return from_parts(0, Polynomial::constant(c), Polynomial::constant(1));
}

RationalFunction RationalFunction::x_power(const mpz_class& e) {
  return from_parts(e, Polynomial::constant(1), Polynomial::constant(1));
}

mpq_class RationalFunction::evaluate(const mpq_class& t) const {
  if (zero_) return 0;
  mpq_class d = den_.evaluate(t);
  if (d == 0) fail(ErrorCode::NonPositiveEvaluation, "denominator vanishes at " + t.get_str());
  if (t == 0 && e_ < 0) fail(ErrorCode::NonPositiveEvaluation, "pole at 0");
  require(e_.fits_slong_p(), ErrorCode::NonPositiveEvaluation, "exponent too large to evaluate");
  long e = e_.get_si();
  mpq_class xp = 1;
  if (t != 0 || e != 0) {
    mpz_class n, m;
    unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(n.get_mpz_t(), t.get_num_mpz_t(), ae);
    mpz_pow_ui(m.get_mpz_t(), t.get_den_mpz_t(), ae);
    xp = e >= 0 ? mpq_class(n, m) : mpq_class(m, n);
    xp.canonicalize();
  }
  return xp * num_.evaluate(t) / d;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.zero_) return b;
  if (b.zero_) return a;
  mpz_class e = a.e_ < b.e_ ? a.e_ : b.e_;
  mpz_class sa = a.e_ - e;
  mpz_class sb = b.e_ - e;
  require(sa.fits_ulong_p() && sb.fits_ulong_p(), ErrorCode::InvariantViolation, "exponent gap too large");
  Polynomial num = (a.num_ * b.den_).shift_up(sa.get_ui()) + (b.num_ * a.den_).shift_up(sb.get_ui());
  return RationalFunction::from_parts(std::move(e), std::move(num), a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  if (b.zero_) return a;
  RationalFunction nb = b;
  nb.num_ = nb.num_.scaled(-1);
  return a + nb;
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.zero_ || b.zero_) return {};
  return RationalFunction::from_parts(a.e_ + b.e_, a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  require(!b.zero_, ErrorCode::AbsentOperand, "division by zero rational function");
  if (a.zero_) return {};
  return RationalFunction::from_parts(a.e_ - b.e_, a.num_ * b.den_, a.den_ * b.num_);
}

std::string RationalFunction::str() const {
  if (zero_) return "0";
  return "x^" + e_.get_str() + "*(" + num_.str() + ")/(" + den_.str() + ")";
}

RationalFunction RationalFunction::parse(std::string_view text) {
  Cursor cur(text);
  mpz_class e = 0;
  if (cur.accept("x^")) {
    e = cur.integer();
    cur.expect('*');
  }
  Polynomial num;
  Polynomial den = Polynomial::constant(1);
  if (cur.accept('(')) {
    num = parse_poly(cur);
    cur.expect(')');
    if (cur.accept('/')) {
      cur.expect('(');
      den = parse_poly(cur);
      cur.expect(')');
    }
  } else {
    num = parse_poly(cur);
  }
  if (!cur.done()) cur.error("trailing input");
  if (den.is_zero()) cur.error("zero denominator");
  return from_parts(std::move(e), std::move(num), std::move(den));
}

}  // namespace tropflag
