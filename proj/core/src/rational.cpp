#include <ostream>

#include "rscensus/error.hpp"
#include "rscensus/numeric.hpp"

namespace rsc {

Integer pow_ui(unsigned long base, unsigned long exponent) {
  Integer result;
  mpz_ui_pow_ui(result.get_mpz_t(), base, exponent);
  return result;
}

std::strong_ordering compare(const Integer& x, const Integer& y) {
  const int c = cmp(x, y);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational make_rational(Integer num, Integer den) {
  if (den == 0) {
    throw Error(ErrorCode::ZeroDenominator, "denominator is zero");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Integer g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1) {
    mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
  }
  return Rational(std::move(num), std::move(den), true);
}

Rational Rational::operator-() const { return Rational(-num_, den_, true); }

Rational operator+(const Rational& x, const Rational& y) {
  if (x.den_ == y.den_) return make_rational(x.num_ + y.num_, x.den_);
  return make_rational(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
}

Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }

Rational operator*(const Rational& x, const Rational& y) {
  return make_rational(x.num_ * y.num_, x.den_ * y.den_);
}

Rational operator/(const Rational& x, const Rational& y) {
  if (y.num_ == 0) throw Error(ErrorCode::ZeroDenominator, "division by zero");
  return make_rational(x.num_ * y.den_, x.den_ * y.num_);
}

std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
  return compare(Integer(x.num_ * y.den_), Integer(y.num_ * x.den_));
}

std::string Rational::to_string() const {
  if (den_ == 1) return num_.get_str();
  return num_.get_str() + "/" + den_.get_str();
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::string digits(text);
  const bool ok = !digits.empty() &&
                  digits.find_first_not_of("+-0123456789") == std::string::npos &&
                  digits.find_first_of("0123456789") != std::string::npos;
  Integer value;
  if (!ok || value.set_str(digits[0] == '+' ? digits.substr(1) : digits, 10) != 0) {
    throw Error(ErrorCode::ParseError, "not an integer in '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  return make_rational(parse_integer(text.substr(0, slash), text),
                       parse_integer(text.substr(slash + 1), text));
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }

}  // namespace rsc
