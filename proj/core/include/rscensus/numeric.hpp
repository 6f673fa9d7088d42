#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rsc {

using Integer = mpz_class;

Integer pow_ui(unsigned long base, unsigned long exponent);
std::strong_ordering compare(const Integer& x, const Integer& y);

/// Exact rational number, always stored reduced with a positive denominator,
/// so that structural equality coincides with numeric equality.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(Integer value) : num_(std::move(value)), den_(1) {}

  const Integer& num() const noexcept { return num_; }
  const Integer& den() const noexcept { return den_; }

  bool is_integer() const { return den_ == 1; }
  int sign() const { return sgn(num_); }

  friend Rational make_rational(Integer num, Integer den);

  Rational operator-() const;
  friend Rational operator+(const Rational& x, const Rational& y);
  friend Rational operator-(const Rational& x, const Rational& y);
  friend Rational operator*(const Rational& x, const Rational& y);
  friend Rational operator/(const Rational& x, const Rational& y);
  Rational& operator+=(const Rational& y) { return *this = *this + y; }
  Rational& operator-=(const Rational& y) { return *this = *this - y; }

  friend bool operator==(const Rational& x, const Rational& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& x, const Rational& y);

  /// `p/q`, or just `p` when the denominator is 1.
  std::string to_string() const;
  /// Parses `p/q` or `p`; the result is reduced.
  static Rational parse(std::string_view text);

 private:
  Rational(Integer num, Integer den, bool /*already_reduced*/)
      : num_(std::move(num)), den_(std::move(den)) {}

  Integer num_;
  Integer den_;
};

Rational make_rational(Integer num, Integer den);
std::ostream& operator<<(std::ostream& os, const Rational& x);

/// 2x2 integer matrix [a, b; c, d], row-major.
struct Mat2 {
  Integer a{1}, b{0}, c{0}, d{1};

  static Mat2 identity() { return {}; }

  friend bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 operator*(const Mat2& x, const Mat2& y);
std::strong_ordering operator<=>(const Mat2& x, const Mat2& y);
Integer trace(const Mat2& m);
Integer det(const Mat2& m);
/// Image of x under the linear fractional map (a x + b) / (c x + d).
Rational apply(const Mat2& m, const Rational& x);
/// `[a,b;c,d]`
std::string to_string(const Mat2& m);
std::ostream& operator<<(std::ostream& os, const Mat2& m);

/// Integer square root: the r with r^2 <= n < (r+1)^2. Throws NegativeInput.
Integer isqrt(const Integer& n);
bool is_perfect_square(const Integer& n);

struct EigenPair {
  Integer lambda;  // smaller
  Integer mu;      // larger

  friend bool operator==(const EigenPair&, const EigenPair&) = default;
};

/// Both eigenvalues when they are integers: tr^2 - 4 det must be a perfect
/// square s^2 with s of the same parity as tr.
std::optional<EigenPair> integer_eigenvalues(const Mat2& m);

struct NoFixedPoint {
  friend bool operator==(const NoFixedPoint&, const NoFixedPoint&) = default;
};
struct AllPointsFixed {
  friend bool operator==(const AllPointsFixed&, const AllPointsFixed&) = default;
};
struct FixedPoints {
  std::vector<Rational> points;  // one or two, ascending
  friend bool operator==(const FixedPoints&, const FixedPoints&) = default;
};
using FixedPointResult = std::variant<NoFixedPoint, FixedPoints, AllPointsFixed>;

/// All rational x with a x + b = x (c x + d), i.e. the rational roots of
/// c x^2 + (d - a) x - b = 0 (negative roots included).
///
/// For an invertible matrix these are exactly the fixed points of
/// t(x) = (a x + b) / (c x + d). For a singular matrix with c != 0 a root may
/// sit on the pole x = -d/c; it is still returned, since it corresponds to a
/// rational eigenvector (x, 1) of the matrix.
///
/// Throws DegenerateMap when c = d = 0.
FixedPointResult rational_fixed_points(const Mat2& m);

std::string to_string(const FixedPointResult& result);

}  // namespace rsc
