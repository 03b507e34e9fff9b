#pragma once

#include <spheremaps/exactpoly/rat_poly.hpp>

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace spheremaps::sosdecomp {

using exactpoly::RatPoly;
using exactpoly::Rational;

/// Smallest accepted working precision (IEEE double mantissa).
inline constexpr unsigned kMinPrecisionBits = 53;

/// Univariate polynomial with GMP floating coefficients, lowest power first,
/// carried at `precision_bits` and a uniform per-coefficient error bound.
class ApproxPoly {
 public:
  ApproxPoly() = default;
  /// Throws InvalidParameter for precision below kMinPrecisionBits or a
  /// negative/non-finite error bound.
  ApproxPoly(std::vector<mpf_class> coeffs, unsigned precision_bits,
             double coeff_error_bound = 0.0);

  /// Each coefficient of `p` rounded to `precision_bits`.
  static ApproxPoly from_exact(const RatPoly& p, unsigned precision_bits);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  unsigned precision_bits() const noexcept { return precision_bits_; }
  double coeff_error_bound() const noexcept { return coeff_error_bound_; }
  const std::vector<mpf_class>& coefficients() const noexcept { return coeffs_; }
  mpf_class coeff(std::size_t power) const;

  /// The exact dyadic rational value of every stored coefficient.
  RatPoly to_exact() const;

  double eval(double t) const;
  mpf_class eval(const mpf_class& t) const;

  /// Same polynomial stored at another precision (rounded or zero-extended).
  ApproxPoly with_precision(unsigned bits) const;

 private:
  void trim();

  std::vector<mpf_class> coeffs_;
  unsigned precision_bits_ = kMinPrecisionBits;
  double coeff_error_bound_ = 0.0;
};

/// 2^-bits at the given precision.
mpf_class unit_roundoff(unsigned bits);

/// Scientific decimal string carrying enough digits to reproduce `x` at
/// `precision_bits` on parsing.
std::string to_decimal_string(const mpf_class& x, unsigned precision_bits);
/// Throws ParseError.
mpf_class parse_decimal(std::string_view text, unsigned precision_bits);

/// Serialization: coefficients as decimal strings plus precision metadata.
struct SerializedApproxPoly {
  unsigned precision_bits = kMinPrecisionBits;
  std::string coeff_error_bound;
  std::vector<std::string> coefficients;
};
SerializedApproxPoly serialize(const ApproxPoly& p);
ApproxPoly deserialize(const SerializedApproxPoly& s);

}  // namespace spheremaps::sosdecomp
