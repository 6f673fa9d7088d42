#include <algorithm>
#include <ostream>

#include "rscensus/error.hpp"
#include "rscensus/numeric.hpp"

namespace rsc {

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return Mat2{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
              x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

std::strong_ordering operator<=>(const Mat2& x, const Mat2& y) {
  if (auto c = compare(x.a, y.a); c != 0) return c;
  if (auto c = compare(x.b, y.b); c != 0) return c;
  if (auto c = compare(x.c, y.c); c != 0) return c;
  return compare(x.d, y.d);
}

Integer trace(const Mat2& m) { return m.a + m.d; }

Integer det(const Mat2& m) { return m.a * m.d - m.b * m.c; }

Rational apply(const Mat2& m, const Rational& x) {
  // (a p/q + b) / (c p/q + d) = (a p + b q) / (c p + d q)
  return make_rational(m.a * x.num() + m.b * x.den(), m.c * x.num() + m.d * x.den());
}

std::string to_string(const Mat2& m) {
  return "[" + m.a.get_str() + "," + m.b.get_str() + ";" + m.c.get_str() + "," +
         m.d.get_str() + "]";
}

std::ostream& operator<<(std::ostream& os, const Mat2& m) { return os << to_string(m); }

Integer isqrt(const Integer& n) {
  if (n < 0) throw Error(ErrorCode::NegativeInput, "isqrt of " + n.get_str());
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const Integer& n) {
  if (n < 0) return false;
  const Integer r = isqrt(n);
  return r * r == n;
}

std::optional<EigenPair> integer_eigenvalues(const Mat2& m) {
  const Integer tr = trace(m);
  const Integer disc = tr * tr - 4 * det(m);
  if (disc < 0) return std::nullopt;
  const Integer s = isqrt(disc);
  if (s * s != disc) return std::nullopt;
  if (mpz_even_p(Integer(tr - s).get_mpz_t()) == 0) return std::nullopt;
  EigenPair pair{(tr - s) / 2, (tr + s) / 2};
  return pair;
}

FixedPointResult rational_fixed_points(const Mat2& m) {
  if (m.c == 0 && m.d == 0) {
    throw Error(ErrorCode::DegenerateMap, "c = d = 0 in " + to_string(m));
  }
  if (m.c == 0) {
    if (m.a != m.d) return FixedPoints{{make_rational(m.b, m.d - m.a)}};
    if (m.b != 0) return NoFixedPoint{};
    return AllPointsFixed{};
  }
  // c x^2 + (d - a) x - b = 0, discriminant (d - a)^2 + 4 b c = tr^2 - 4 det.
  const Integer disc = (m.d - m.a) * (m.d - m.a) + 4 * m.b * m.c;
  if (disc < 0) return NoFixedPoint{};
  const Integer s = isqrt(disc);
  if (s * s != disc) return NoFixedPoint{};
  const Integer two_c = 2 * m.c;
  if (s == 0) return FixedPoints{{make_rational(m.a - m.d, two_c)}};
  std::vector<Rational> roots{make_rational(m.a - m.d - s, two_c),
                              make_rational(m.a - m.d + s, two_c)};
  std::sort(roots.begin(), roots.end());
  return FixedPoints{std::move(roots)};
}

std::string to_string(const FixedPointResult& result) {
  if (std::holds_alternative<NoFixedPoint>(result)) return "none";
  if (std::holds_alternative<AllPointsFixed>(result)) return "all";
  std::string out;
  for (const auto& x : std::get<FixedPoints>(result).points) {
    if (!out.empty()) out += ' ';
    out += x.to_string();
  }
  return out;
}

}  // namespace rsc
