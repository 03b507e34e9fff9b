#pragma once

#include <spheremaps/exactpoly/rational.hpp>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace spheremaps::exactpoly {

/// Univariate polynomial in t with exact rational coefficients, lowest power
/// first. The coefficient vector is always trimmed: the last entry is nonzero,
/// and the zero polynomial has no entries (degree -1).
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coeffs);
  RatPoly(std::initializer_list<Rational> coeffs);

  static RatPoly constant(const Rational& c);
  /// c * t^power
  static RatPoly monomial(const Rational& c, std::size_t power);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Coefficient of t^power; zero beyond the degree.
  Rational coeff(std::size_t power) const;
  const Rational& leading() const;
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }

  RatPoly derivative() const;
  /// p(t^2).
  RatPoly compose_square() const;
  /// p(t) / t^power, requiring the low coefficients to vanish.
  RatPoly divide_by_power_of_t(std::size_t power) const;
  /// Multiplies by the positive factor that makes every coefficient an
  /// integer with gcd 1. The sign of every coefficient is preserved.
  RatPoly primitive() const;
  /// Leading coefficient scaled to 1.
  RatPoly monic() const;

  RatPoly operator-() const;
  RatPoly& operator+=(const RatPoly& other);
  RatPoly& operator-=(const RatPoly& other);
  RatPoly& operator*=(const RatPoly& other);
  RatPoly& operator*=(const Rational& c);

  friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
  friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
  friend RatPoly operator*(RatPoly a, const RatPoly& b) { return a *= b; }
  friend RatPoly operator*(RatPoly a, const Rational& c) { return a *= c; }
  friend RatPoly operator*(const Rational& c, RatPoly a) { return a *= c; }
  friend bool operator==(const RatPoly& a, const RatPoly& b) = default;

  /// Human readable form such as "1 + 1/2*t + 3/8*t^2".
  std::string to_string(std::string_view var = "t") const;

 private:
  void trim();

  std::vector<Rational> coeffs_;
};

/// Euclidean division: a = q*b + r with deg r < deg b. Throws ZeroPolynomial
/// when b is zero.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);

/// Exact quotient a / b; throws NonExactDivision on a nonzero remainder.
RatPoly exact_quotient(const RatPoly& a, const RatPoly& b);

/// Monic greatest common divisor; gcd(0, 0) = 0.
RatPoly gcd(const RatPoly& a, const RatPoly& b);

/// Exact Horner evaluation.
Rational eval(const RatPoly& p, const Rational& t);

/// Horner evaluation with every coefficient and intermediate rounded to
/// `precision_bits`.
mpf_class eval_float(const RatPoly& p, const mpf_class& t,
                     unsigned precision_bits);
double eval_float(const RatPoly& p, double t);

/// Serialization as "num/den" strings, lowest power first.
std::vector<std::string> serialize(const RatPoly& p);
RatPoly parse_rat_poly(const std::vector<std::string>& coeffs);

}  // namespace spheremaps::exactpoly
