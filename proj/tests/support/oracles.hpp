#pragma once

// Independent reference computations shared by unit and acceptance tests.
// They work on raw coefficient vectors and do not call library algebra.

#include <spheremaps/exactpoly/rational.hpp>

#include <vector>

namespace spheremaps::oracles {

using exactpoly::Rational;

// f(t) = c * (1 - t)^e differentiated symbolically j times and evaluated at
// 0, divided by j!. d/dt (1 - t)^e = -e (1 - t)^(e - 1).
inline Rational derivative_oracle(unsigned j) {
  Rational c = 1, e = exactpoly::make_rational(-1, 2);
  Rational factorial = 1;
  for (unsigned i = 0; i < j; ++i) {
    c = c * (-e);
    e -= 1;
    factorial *= i + 1;
  }
  return c / factorial;  // (1 - 0)^e = 1
}

// Plain coefficient convolution of (t - 1) phi^2 + 1.
inline std::vector<Rational> expansion_oracle(const std::vector<Rational>& phi_coeffs) {
  const std::size_t n = phi_coeffs.size();
  std::vector<Rational> sq(2 * n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sq[i + j] += phi_coeffs[i] * phi_coeffs[j];
  std::vector<Rational> out(sq.size() + 1);
  for (std::size_t i = 0; i < sq.size(); ++i) {
    out[i + 1] += sq[i];
    out[i] -= sq[i];
  }
  out[0] += 1;
  return out;
}

// Coefficients of lambda_ell read off the expansion oracle: entries
// ell+1 .. 2 ell+1 of (t - 1) phi_ell^2 + 1 with phi from the derivative
// oracle.
inline std::vector<Rational> lambda_oracle(unsigned ell) {
  std::vector<Rational> phi_coeffs;
  for (unsigned j = 0; j <= ell; ++j) phi_coeffs.push_back(derivative_oracle(j));
  const auto full = expansion_oracle(phi_coeffs);
  return {full.begin() + ell + 1, full.end()};
}

}  // namespace spheremaps::oracles
