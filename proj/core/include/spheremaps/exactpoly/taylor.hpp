#pragma once

#include <spheremaps/exactpoly/rat_poly.hpp>

namespace spheremaps::exactpoly {

/// j-th Taylor coefficient of (1 - t)^(-1/2) at 0:
/// (2j-1)(2j-3)...1 / (2^j j!). a_0 = 1.
Rational taylor_coeff(unsigned j);

/// Truncation of the Taylor series of (1 - t)^(-1/2) to degree `ell`.
RatPoly phi(unsigned ell);

/// The degree-`ell` polynomial with (t - 1) phi(ell)^2 + 1 = t^(ell+1) lambda.
/// Throws NonExactDivision if the division leaves a remainder.
RatPoly lambda(unsigned ell);

}  // namespace spheremaps::exactpoly
