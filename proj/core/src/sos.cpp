#include <spheremaps/errors.hpp>
#include <spheremaps/exactpoly/taylor.hpp>
#include <spheremaps/sosdecomp/sos.hpp>

namespace spheremaps::sosdecomp {

using exactpoly::SignClaim;
using exactpoly::SignDomain;

namespace {

double one_norm(const RatPoly& p) {
  Rational s = 0;
  for (const auto& c : p.coefficients()) s += abs(c);
  return s.get_d();
}

using ComplexCoeffs = std::vector<BigComplex>;

// Multiplies in place by (t - root).
void multiply_linear(ComplexCoeffs& q, const BigComplex& root) {
  const unsigned bits = q.front().precision();
  q.emplace_back(bits);
  for (std::size_t i = q.size() - 1; i > 0; --i) q[i] = q[i - 1] - root * q[i];
  q[0] = BigComplex(bits) - root * q[0];
}

// Real polynomial prod (t + |r| + radius) - prod (t + |r|), coefficientwise;
// bounds how far the coefficients of prod (t - r) move when every root moves
// within its radius.
std::vector<mpf_class> perturbation_bound(const std::vector<std::pair<mpf_class, mpf_class>>& factors,
                                          unsigned bits) {
  std::vector<mpf_class> hi{mpf_class(1, bits)}, lo{mpf_class(1, bits)};
  for (const auto& [modulus, radius] : factors) {
    auto mul = [&](std::vector<mpf_class>& c, const mpf_class& a) {
      c.emplace_back(0, bits);
      for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] + a * c[i];
      c[0] = a * c[0];
    };
    mul(hi, mpf_class(modulus + radius));
    mul(lo, modulus);
  }
  for (std::size_t i = 0; i < hi.size(); ++i) hi[i] -= lo[i];
  return hi;
}

}  // namespace

double sos_residual(const RatPoly& target, const ApproxPoly& p1, const ApproxPoly& p2) {
  const RatPoly e1 = p1.to_exact(), e2 = p2.to_exact();
  return one_norm(target - (e1 * e1 + e2 * e2));
}

SOSCertificate sos_decompose(const RatPoly& p, const PositivityCertificate& cert,
                             unsigned precision_bits, const SosOptions& options) {
  if (p.is_zero()) throw ZeroPolynomial("two-square decomposition of zero");
  if (!(cert.polynomial == p) || cert.domain.kind != SignDomain::Kind::AllReals)
    throw InvalidParameter("certificate does not cover this polynomial on all reals");
  if (precision_bits < kMinPrecisionBits)
    throw InvalidParameter("precision_bits must be >= 53");
  if (p.degree() % 2 != 0 || p.leading() < 0)
    throw OddMultiplicityRealRoot("odd degree or negative leading coefficient");

  const unsigned bits = precision_bits;
  const unsigned wide = 2 * bits;
  const mpf_class scale(sqrt(mpf_class(p.leading(), wide)));
  ComplexCoeffs q{BigComplex(scale, mpf_class(0, wide))};
  std::vector<std::pair<mpf_class, mpf_class>> moved;

  if (p.degree() > 0) {
    const RootSet roots = find_roots(ApproxPoly::from_exact(p, wide), bits, options.root_finder);
    unsigned upper = 0, lower = 0;
    for (const auto& r : roots.roots) {
      if (abs(r.value.im) <= r.error_radius) {
        if (r.multiplicity % 2 != 0)
          throw OddMultiplicityRealRoot("real root near " + to_decimal_string(r.value.re, 64) +
                                        " has multiplicity " + std::to_string(r.multiplicity));
        const BigComplex real_root(r.value.re, mpf_class(0, wide));
        for (unsigned j = 0; j < r.multiplicity / 2; ++j) {
          multiply_linear(q, real_root);
          moved.emplace_back(mpf_class(abs(r.value.re)), r.error_radius);
        }
      } else if (r.value.im > 0) {
        for (unsigned j = 0; j < r.multiplicity; ++j) {
          multiply_linear(q, r.value);
          moved.emplace_back(r.value.abs(), r.error_radius);
        }
        upper += r.multiplicity;
      } else {
        lower += r.multiplicity;
      }
    }
    if (upper != lower) throw NoConvergence("root set is not closed under conjugation");
  }

  std::vector<mpf_class> re, im;
  mpf_class largest(0, wide);
  for (const auto& c : q) {
    re.emplace_back(c.re, bits);
    im.emplace_back(c.im, bits);
    largest = std::max({largest, mpf_class(abs(c.re)), mpf_class(abs(c.im))});
  }
  mpf_class bound(largest * unit_roundoff(bits));
  for (const auto& d : perturbation_bound(moved, wide)) bound = std::max(bound, mpf_class(scale * d));

  SOSCertificate out;
  out.target = p;
  out.p1 = ApproxPoly(std::move(re), bits, bound.get_d());
  out.p2 = ApproxPoly(std::move(im), bits, bound.get_d());
  out.residual_norm = sos_residual(p, out.p1, out.p2);
  if (out.residual_norm > options.tolerance)
    throw ResidualTooLarge(out.residual_norm, options.tolerance);
  return out;
}

SOSCertificate sos_decompose_escalating(const RatPoly& p, const PositivityCertificate& cert,
                                        unsigned precision_bits, const SosOptions& options) {
  for (unsigned bits = precision_bits;; bits *= 2) {
    try {
      return sos_decompose(p, cert, bits, options);
    } catch (const ResidualTooLarge&) {
      if (2 * bits > options.max_precision_bits) throw;
    } catch (const NoConvergence&) {
      if (2 * bits > options.max_precision_bits) throw;
    }
  }
}

double corollary_identity_residual(int k, const RatPoly& alpha, const ApproxPoly& beta1,
                                   const ApproxPoly& beta2) {
  const RatPoly b1 = beta1.to_exact(), b2 = beta2.to_exact();
  const RatPoly lhs = RatPoly{1, -1} * alpha * alpha +
                      RatPoly::monomial(1, static_cast<std::size_t>(k)) * (b1 * b1 + b2 * b2);
  return one_norm(RatPoly::constant(1) - lhs);
}

CorollaryTriple corollary1_triple(int k, unsigned precision_bits, const SosOptions& options) {
  if (k % 2 == 0) throw InvalidDegreeParity("k must be odd, got " + std::to_string(k));
  if (k < 1) throw InvalidParameter("k must be positive, got " + std::to_string(k));
  const auto ell = static_cast<unsigned>(k - 1);

  CorollaryTriple t;
  t.k = k;
  t.alpha = exactpoly::phi(ell);
  t.alpha_certificate = exactpoly::certify_sign(t.alpha, SignDomain::all_reals(),
                                                SignClaim::StrictlyPositive);
  const RatPoly mu = exactpoly::lambda(ell);
  t.lambda_certificate = exactpoly::certify_sign(mu, SignDomain::all_reals(), SignClaim::Nonnegative);
  SOSCertificate sos = sos_decompose_escalating(mu, t.lambda_certificate, precision_bits, options);
  t.beta1 = std::move(sos.p1);
  t.beta2 = std::move(sos.p2);
  t.precision_bits = t.beta1.precision_bits();
  t.identity_residual = corollary_identity_residual(k, t.alpha, t.beta1, t.beta2);
  return t;
}

double partb_identity_residual(int ktilde, const RatPoly& alpha_tilde, const ApproxPoly& beta1,
                               const ApproxPoly& beta2) {
  const RatPoly b1 = beta1.to_exact(), b2 = beta2.to_exact();
  const RatPoly lhs = RatPoly{1, 0, -1} * alpha_tilde * alpha_tilde +
                      RatPoly::monomial(1, static_cast<std::size_t>(2 * ktilde)) * (b1 * b1 + b2 * b2);
  return one_norm(RatPoly::constant(1) - lhs);
}

PartBTriple partb_triple(int ktilde, unsigned precision_bits, const SosOptions& options) {
  if (ktilde < 1) throw InvalidParameter("ktilde must be >= 1, got " + std::to_string(ktilde));
  const auto ell = static_cast<unsigned>(ktilde - 1);

  PartBTriple t;
  t.ktilde = ktilde;
  t.alpha_tilde = exactpoly::phi(ell).compose_square();
  t.alpha_certificate = exactpoly::certify_sign(t.alpha_tilde, SignDomain::all_reals(),
                                                SignClaim::StrictlyPositive);
  const RatPoly mu = exactpoly::lambda(ell).compose_square();
  t.lambda_certificate = exactpoly::certify_sign(mu, SignDomain::all_reals(), SignClaim::Nonnegative);
  SOSCertificate sos = sos_decompose_escalating(mu, t.lambda_certificate, precision_bits, options);
  t.beta1_tilde = std::move(sos.p1);
  t.beta2_tilde = std::move(sos.p2);
  t.precision_bits = t.beta1_tilde.precision_bits();
  t.identity_residual = partb_identity_residual(ktilde, t.alpha_tilde, t.beta1_tilde, t.beta2_tilde);
  return t;
}

}  // namespace spheremaps::sosdecomp
