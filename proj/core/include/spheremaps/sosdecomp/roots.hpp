#pragma once

#include <spheremaps/sosdecomp/approx_poly.hpp>
#include <spheremaps/sosdecomp/big_complex.hpp>

#include <vector>

namespace spheremaps::sosdecomp {

/// One cluster of roots: a representative value, the number of roots it
/// stands for, and a radius such that the disc around `value` contains that
/// many roots of the polynomial.
struct Root {
  BigComplex value;
  unsigned multiplicity = 1;
  mpf_class error_radius;
};

struct RootSet {
  std::vector<Root> roots;
  unsigned precision_bits = kMinPrecisionBits;

  unsigned total_multiplicity() const;
};

struct RootFinderOptions {
  unsigned max_iterations = 2000;
};

/// All complex roots of `p`.
///
/// Aberth simultaneous iteration runs at `working_bits`; approximations whose
/// inclusion discs overlap are merged into one cluster. Simple roots are then
/// polished by Newton's method at 2 * working_bits, and a cluster of size m by
/// Newton on the (m-1)-th derivative. Coefficients of `p` beyond the working
/// precision are used during polishing. Deterministic for fixed input.
///
/// Throws ZeroPolynomial, DegenerateLeadingCoefficient, NoConvergence.
RootSet find_roots(const ApproxPoly& p, unsigned working_bits,
                   const RootFinderOptions& options = {});
inline RootSet find_roots(const ApproxPoly& p) {
  return find_roots(p, p.precision_bits());
}

}  // namespace spheremaps::sosdecomp
