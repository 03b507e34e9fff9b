#pragma once

#include <spheremaps/exactpoly/sturm.hpp>
#include <spheremaps/sosdecomp/approx_poly.hpp>
#include <spheremaps/sosdecomp/roots.hpp>

namespace spheremaps::sosdecomp {

using exactpoly::PositivityCertificate;

inline constexpr unsigned kDefaultPrecisionBits = 256;
inline constexpr unsigned kMaxPrecisionBits = 4096;
inline constexpr double kDefaultTolerance = 1e-12;

struct SosOptions {
  double tolerance = kDefaultTolerance;
  /// Escalation ceiling: precision doubles from the requested value up to
  /// this many bits before the last error is rethrown.
  unsigned max_precision_bits = kMaxPrecisionBits;
  RootFinderOptions root_finder{};
};

/// target = p1^2 + p2^2 up to `residual_norm`, the exact coefficient 1-norm
/// of target - (p1^2 + p2^2) with p1, p2 taken at their stored values.
/// p1 has positive leading coefficient and deg p1 >= deg p2.
struct SOSCertificate {
  RatPoly target;
  ApproxPoly p1;
  ApproxPoly p2;
  double residual_norm = 0.0;
};

/// Coefficient 1-norm of target - (p1^2 + p2^2), computed exactly.
double sos_residual(const RatPoly& target, const ApproxPoly& p1, const ApproxPoly& p2);

/// Two-square decomposition of a polynomial certified nonnegative on all of
/// R: pair each complex root with its conjugate, take half of every real
/// root's (even) multiplicity, and split sqrt(lead) * prod (t - r) into real
/// and imaginary parts.
///
/// Throws InvalidParameter (certificate does not cover p on all reals),
/// OddMultiplicityRealRoot, ResidualTooLarge, and root finder errors.
SOSCertificate sos_decompose(const RatPoly& p, const PositivityCertificate& cert,
                             unsigned precision_bits = kDefaultPrecisionBits,
                             const SosOptions& options = {});

/// sos_decompose retried with doubled precision on ResidualTooLarge or
/// NoConvergence, up to options.max_precision_bits.
SOSCertificate sos_decompose_escalating(const RatPoly& p, const PositivityCertificate& cert,
                                        unsigned precision_bits = kDefaultPrecisionBits,
                                        const SosOptions& options = {});

/// alpha, beta1, beta2 with (1 - t) alpha^2 + t^k (beta1^2 + beta2^2) = 1.
struct CorollaryTriple {
  int k = 1;
  RatPoly alpha;
  PositivityCertificate alpha_certificate;
  PositivityCertificate lambda_certificate;
  ApproxPoly beta1;
  ApproxPoly beta2;
  double identity_residual = 0.0;
  unsigned precision_bits = kDefaultPrecisionBits;
};

/// Coefficient 1-norm of 1 - [(1 - t) alpha^2 + t^k (beta1^2 + beta2^2)].
double corollary_identity_residual(int k, const RatPoly& alpha, const ApproxPoly& beta1,
                                   const ApproxPoly& beta2);

/// Throws InvalidDegreeParity for even k, InvalidParameter for k < 1.
CorollaryTriple corollary1_triple(int k, unsigned precision_bits = kDefaultPrecisionBits,
                                  const SosOptions& options = {});

/// alpha~, beta1~, beta2~ with (1 - t^2) alpha~^2 + t^(2 ktilde)(beta1~^2 + beta2~^2) = 1.
struct PartBTriple {
  int ktilde = 1;
  RatPoly alpha_tilde;
  PositivityCertificate alpha_certificate;
  PositivityCertificate lambda_certificate;
  ApproxPoly beta1_tilde;
  ApproxPoly beta2_tilde;
  double identity_residual = 0.0;
  unsigned precision_bits = kDefaultPrecisionBits;
};

double partb_identity_residual(int ktilde, const RatPoly& alpha_tilde,
                               const ApproxPoly& beta1, const ApproxPoly& beta2);

/// Throws InvalidParameter for ktilde < 1.
PartBTriple partb_triple(int ktilde, unsigned precision_bits = kDefaultPrecisionBits,
                         const SosOptions& options = {});

}  // namespace spheremaps::sosdecomp
