#include <spheremaps/exactpoly/taylor.hpp>
#include <spheremaps/sosdecomp/roots.hpp>
#include <spheremaps/sosdecomp/sos.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace spheremaps::sosdecomp {
namespace {

using exactpoly::certify_sign;
using exactpoly::make_rational;
using exactpoly::SignClaim;
using exactpoly::SignDomain;

Rational q(long num, long den = 1) { return make_rational(num, den); }

ApproxPoly approx(const RatPoly& p, unsigned bits = 256) { return ApproxPoly::from_exact(p, bits); }

PositivityCertificate nonneg(const RatPoly& p) {
  return certify_sign(p, SignDomain::all_reals(), SignClaim::Nonnegative);
}

TEST(ApproxPoly, InvariantsAndExactValue) {
  EXPECT_THROW(ApproxPoly({mpf_class(1)}, 32), InvalidParameter);
  EXPECT_THROW(ApproxPoly({mpf_class(1)}, 64, -1.0), InvalidParameter);
  EXPECT_THROW(ApproxPoly({mpf_class(1)}, 64, std::nan("")), InvalidParameter);
  const ApproxPoly p = approx(RatPoly{q(1, 2), 0, q(3, 4)}, 64);
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p.to_exact(), (RatPoly{q(1, 2), 0, q(3, 4)}));  // dyadic values are exact
  EXPECT_DOUBLE_EQ(p.eval(2.0), 3.5);
}

TEST(ApproxPoly, SerializationPreservesValueToStatedPrecision) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> num(-100000, 100000), den(1, 99991);
  for (unsigned bits : {64u, 256u, 1024u}) {
    std::vector<mpf_class> c;
    for (int i = 0; i < 6; ++i) c.emplace_back(mpf_class(q(num(rng), den(rng)), bits));
    const ApproxPoly p(c, bits, 1e-30);
    const ApproxPoly back = deserialize(serialize(p));
    ASSERT_EQ(back.precision_bits(), bits);
    EXPECT_EQ(back.coeff_error_bound(), 1e-30);
    ASSERT_EQ(back.degree(), p.degree());
    for (std::size_t i = 0; i < c.size(); ++i) {
      const mpf_class diff(abs(back.coefficients()[i] - p.coefficients()[i]));
      const mpf_class scale(abs(p.coefficients()[i]) * unit_roundoff(bits - 4));
      EXPECT_LE(diff, scale) << bits;
    }
  }
  EXPECT_THROW(parse_decimal("abc", 64), ParseError);
}

TEST(FindRoots, ConjugatePairOfUnitCircle) {
  const RootSet rs = find_roots(approx(RatPoly{1, 0, 1}));
  ASSERT_EQ(rs.roots.size(), 2u);
  for (const auto& r : rs.roots) {
    EXPECT_EQ(r.multiplicity, 1u);
    EXPECT_LT(std::abs(r.value.re.get_d()), 1e-60);
    EXPECT_NEAR(std::abs(r.value.im.get_d()), 1.0, 1e-60);
    EXPECT_LT(r.error_radius.get_d(), 1e-60);
  }
  EXPECT_LT(mpf_class(rs.roots[0].value.im * rs.roots[1].value.im), 0);
}

TEST(FindRoots, DoubleRootIsClustered) {
  const RootSet rs = find_roots(approx(RatPoly{1, -2, 1}));
  ASSERT_EQ(rs.roots.size(), 1u);
  EXPECT_EQ(rs.roots[0].multiplicity, 2u);
  const mpf_class dist((rs.roots[0].value - BigComplex(mpf_class(1, 512), mpf_class(0, 512))).abs());
  EXPECT_LE(dist, rs.roots[0].error_radius);
  EXPECT_LT(rs.roots[0].error_radius.get_d(), 1e-30);
}

TEST(FindRoots, LambdaTwoMatchesQuadraticFormula) {
  // 9t^2 + 15t + 40 scaled by 1/64: roots (-15 +- i sqrt(1215)) / 18
  const RootSet rs = find_roots(approx(exactpoly::lambda(2)));
  ASSERT_EQ(rs.roots.size(), 2u);
  const mpf_class re(mpf_class(-15, 512) / 18);
  const mpf_class im(sqrt(mpf_class(1215, 512)) / 18);
  for (const auto& r : rs.roots) {
    EXPECT_LT(mpf_class(abs(r.value.re - re)).get_d(), 1e-70);
    EXPECT_LT(mpf_class(abs(abs(r.value.im) - im)).get_d(), 1e-70);
  }
  EXPECT_NEAR(re.get_d(), -0.8333, 1e-4);
  EXPECT_NEAR(im.get_d(), 1.9365, 1e-4);
}

// Product of (t - root) times the leading coefficient reproduces the input
// within the perturbation allowed by the radii.
void expect_reconstruction(const RatPoly& p) {
  const unsigned bits = 256;
  const RootSet rs = find_roots(approx(p, 2 * bits), bits);
  ASSERT_EQ(rs.total_multiplicity(), static_cast<unsigned>(p.degree()));
  const unsigned w = rs.precision_bits;
  std::vector<BigComplex> prod{BigComplex(mpf_class(p.leading(), w), mpf_class(0, w))};
  std::vector<mpf_class> hi{mpf_class(abs(p.leading()), w)}, lo = hi;
  for (const auto& r : rs.roots) {
    for (unsigned m = 0; m < r.multiplicity; ++m) {
      prod.emplace_back(w);
      for (std::size_t i = prod.size() - 1; i > 0; --i) prod[i] = prod[i - 1] - r.value * prod[i];
      prod[0] = BigComplex(w) - r.value * prod[0];
      const mpf_class a = r.value.abs(), b(a + r.error_radius);
      hi.emplace_back(0, w);
      lo.emplace_back(0, w);
      for (std::size_t i = hi.size() - 1; i > 0; --i) {
        hi[i] = hi[i - 1] + b * hi[i];
        lo[i] = lo[i - 1] + a * lo[i];
      }
      hi[0] = b * hi[0];
      lo[0] = a * lo[0];
    }
  }
  for (int i = 0; i <= p.degree(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const mpf_class allowed(hi[idx] - lo[idx] + unit_roundoff(bits) * 1024 * (hi[idx] + 1));
    const mpf_class err_re(abs(prod[idx].re - mpf_class(p.coeff(idx), w)));
    const mpf_class err_im(abs(prod[idx].im));
    EXPECT_LE(err_re, allowed) << "coefficient " << i;
    EXPECT_LE(err_im, allowed) << "coefficient " << i;
  }
}

TEST(FindRoots, ProductReproducesCoefficients) {
  expect_reconstruction(exactpoly::lambda(2));
  expect_reconstruction(exactpoly::lambda(8));
  expect_reconstruction(exactpoly::lambda(14));
  expect_reconstruction(RatPoly{1, -2, 1} * RatPoly{2, 0, 1});
  expect_reconstruction(RatPoly{-1, 1} * RatPoly{-2, 1} * RatPoly{-3, 1});
}

TEST(FindRoots, ConjugateClosedAndDeterministic) {
  const RootSet a = find_roots(approx(exactpoly::lambda(10)));
  const RootSet b = find_roots(approx(exactpoly::lambda(10)));
  ASSERT_EQ(a.roots.size(), b.roots.size());
  for (std::size_t i = 0; i < a.roots.size(); ++i) {
    EXPECT_EQ(a.roots[i].value.re, b.roots[i].value.re);
    EXPECT_EQ(a.roots[i].value.im, b.roots[i].value.im);
    bool has_conjugate = false;
    for (const auto& r : a.roots) {
      const mpf_class d((r.value - a.roots[i].value.conj()).abs());
      has_conjugate = has_conjugate || d <= r.error_radius + a.roots[i].error_radius;
    }
    EXPECT_TRUE(has_conjugate);
  }
}

TEST(FindRoots, Errors) {
  EXPECT_THROW(find_roots(ApproxPoly({}, 64)), ZeroPolynomial);
  std::vector<mpf_class> c{mpf_class(1, 128), mpf_class(1, 128), mpf_class(1e-60, 128)};
  EXPECT_THROW(find_roots(ApproxPoly(c, 128)), DegenerateLeadingCoefficient);
  RootFinderOptions tight;
  tight.max_iterations = 1;
  EXPECT_THROW(find_roots(approx(exactpoly::lambda(12)), 256, tight), NoConvergence);
}

void expect_sum_of_squares(const SOSCertificate& c, double tol) {
  const RatPoly p1 = c.p1.to_exact(), p2 = c.p2.to_exact();
  const RatPoly diff = c.target - (p1 * p1 + p2 * p2);
  Rational norm = 0;
  for (const auto& x : diff.coefficients()) norm += abs(x);
  EXPECT_LE(norm.get_d(), tol);
  EXPECT_DOUBLE_EQ(norm.get_d(), c.residual_norm);
  EXPECT_LE(c.p1.degree(), c.target.degree() / 2);
  EXPECT_LE(c.p2.degree(), c.target.degree() / 2);
  EXPECT_GE(c.p1.degree(), c.p2.degree());
  EXPECT_GT(c.p1.coefficients().back(), 0);
}

TEST(SosDecompose, Examples) {
  const auto one = sos_decompose(RatPoly{1}, nonneg(RatPoly{1}));
  EXPECT_EQ(one.residual_norm, 0.0);
  EXPECT_EQ(one.p1.to_exact(), RatPoly{1});
  EXPECT_TRUE(one.p2.is_zero());

  const RatPoly circle{1, 0, 1};
  expect_sum_of_squares(sos_decompose(circle, nonneg(circle)), 1e-12);

  const RatPoly l2 = exactpoly::lambda(2);
  const auto c = sos_decompose(l2, nonneg(l2), 256);
  expect_sum_of_squares(c, 1e-12);
}

TEST(SosDecompose, RealRootsOfEvenMultiplicity) {
  const RatPoly p = RatPoly{-1, 1} * RatPoly{-1, 1} * RatPoly{1, 1, 1};
  expect_sum_of_squares(sos_decompose(p, nonneg(p)), 1e-12);
  const RatPoly quartic = RatPoly{-2, 0, 1} * RatPoly{-2, 0, 1};
  expect_sum_of_squares(sos_decompose(quartic, nonneg(quartic)), 1e-12);
}

TEST(SosDecompose, Errors) {
  const RatPoly p{1, 0, 1};
  EXPECT_THROW(sos_decompose(RatPoly{2, 0, 1}, nonneg(p)), InvalidParameter);
  const auto half_line = certify_sign(p, SignDomain::nonnegative_reals(), SignClaim::Nonnegative);
  EXPECT_THROW(sos_decompose(p, half_line), InvalidParameter);
  SosOptions strict;
  strict.tolerance = 0.0;
  EXPECT_THROW(sos_decompose(exactpoly::lambda(4), nonneg(exactpoly::lambda(4)), 64, strict),
               ResidualTooLarge);
  // A forged certificate for a polynomial with a simple real root.
  auto forged = nonneg(p);
  const RatPoly bad = RatPoly{-1, 1} * RatPoly{1, 1} * RatPoly{1, 0, 1} * RatPoly{1, 0, 1};
  forged.polynomial = bad;
  EXPECT_THROW(sos_decompose(bad, forged), OddMultiplicityRealRoot);
}

TEST(SosDecompose, PrecisionEscalationNeverIncreasesResidual) {
  for (int k = 1; k <= 15; k += 2) {
    const RatPoly mu = exactpoly::lambda(static_cast<unsigned>(k - 1));
    const auto cert = nonneg(mu);
    double previous = INFINITY;
    for (unsigned bits : {64u, 128u, 256u, 512u, 1024u}) {
      const double r = sos_decompose(mu, cert, bits).residual_norm;
      EXPECT_LE(r, previous) << "k=" << k << " bits=" << bits;
      previous = r;
    }
  }
}

TEST(SosDecompose, EscalationRecoversFromTightTolerance) {
  SosOptions opts;
  opts.tolerance = 1e-60;
  const RatPoly mu = exactpoly::lambda(6);
  const auto c = sos_decompose_escalating(mu, nonneg(mu), 64, opts);
  EXPECT_GT(c.p1.precision_bits(), 64u);
  EXPECT_LE(c.residual_norm, 1e-60);
  opts.max_precision_bits = 128;
  opts.tolerance = 0.0;
  EXPECT_THROW(sos_decompose_escalating(mu, nonneg(mu), 64, opts), ResidualTooLarge);
}

TEST(CorollaryTriple, Examples) {
  const auto t1 = corollary1_triple(1);
  EXPECT_EQ(t1.alpha, RatPoly{1});
  EXPECT_EQ(t1.beta1.to_exact(), RatPoly{1});
  EXPECT_TRUE(t1.beta2.is_zero());
  EXPECT_EQ(t1.identity_residual, 0.0);

  const auto t3 = corollary1_triple(3);
  EXPECT_EQ(t3.alpha, (RatPoly{1, q(1, 2), q(3, 8)}));
  EXPECT_LE(t3.beta1.degree(), 1);
  EXPECT_LE(t3.beta2.degree(), 1);
  EXPECT_LE(t3.identity_residual, 1e-12);

  EXPECT_THROW(corollary1_triple(2), InvalidDegreeParity);
  EXPECT_THROW(corollary1_triple(-3), InvalidParameter);
}

TEST(CorollaryTriple, IdentityHoldsPointwise) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int k = 1; k <= 9; k += 2) {
    const auto t = corollary1_triple(k);
    ASSERT_EQ(t.alpha.degree(), k - 1);
    ASSERT_TRUE(t.alpha_certificate.recheck());
    const RatPoly b1 = t.beta1.to_exact(), b2 = t.beta2.to_exact();
    for (int s = 0; s < 100; ++s) {
      const Rational x(dist(rng));
      const Rational a = exactpoly::eval(t.alpha, x);
      const Rational u = exactpoly::eval(b1, x), v = exactpoly::eval(b2, x);
      Rational xk = 1;
      for (int i = 0; i < k; ++i) xk *= x;
      const Rational value = (1 - x) * a * a + xk * (u * u + v * v);
      const double scale = std::pow(std::max(1.0, std::abs(x.get_d())), 2 * k - 1);
      EXPECT_LE(Rational(abs(value - 1)).get_d(), 10 * t.identity_residual * scale + 0.0) << k;
    }
    // at t = 1 the identity forces beta1(1)^2 + beta2(1)^2 = 1
    const double at_one = t.beta1.eval(1.0) * t.beta1.eval(1.0) + t.beta2.eval(1.0) * t.beta2.eval(1.0);
    EXPECT_NEAR(at_one, 1.0, 1e-10);
  }
}

TEST(PartBTriple, Examples) {
  const auto t1 = partb_triple(1);
  EXPECT_EQ(t1.alpha_tilde, RatPoly{1});
  EXPECT_EQ(t1.beta1_tilde.to_exact(), RatPoly{1});
  EXPECT_TRUE(t1.beta2_tilde.is_zero());
  EXPECT_EQ(t1.identity_residual, 0.0);

  // lambda~_1 = 3/4 + t^2/4 = (sqrt(3)/2)^2 + (t/2)^2
  const auto t2 = partb_triple(2);
  EXPECT_EQ(t2.alpha_tilde, (RatPoly{1, 0, q(1, 2)}));
  EXPECT_LE(t2.identity_residual, 1e-12);
  const RatPoly b1 = t2.beta1_tilde.to_exact(), b2 = t2.beta2_tilde.to_exact();
  const RatPoly s = b1 * b1 + b2 * b2;
  EXPECT_NEAR(s.coeff(0).get_d(), 0.75, 1e-15);
  EXPECT_NEAR(s.coeff(1).get_d(), 0.0, 1e-15);
  EXPECT_NEAR(s.coeff(2).get_d(), 0.25, 1e-15);
  EXPECT_LE(t2.beta1_tilde.degree(), 1);

  EXPECT_THROW(partb_triple(0), InvalidParameter);
}

TEST(PartBTriple, EvenAlphaAndDegreeBounds) {
  for (int kt = 1; kt <= 6; ++kt) {
    const auto t = partb_triple(kt);
    for (int i = 1; i <= t.alpha_tilde.degree(); i += 2) EXPECT_EQ(t.alpha_tilde.coeff(i), 0);
    EXPECT_LE(t.beta1_tilde.degree(), kt - 1);
    EXPECT_LE(t.beta2_tilde.degree(), kt - 1);
    EXPECT_LE(t.identity_residual, 1e-12);
    EXPECT_TRUE(t.alpha_certificate.recheck());
  }
}

}  // namespace
}  // namespace spheremaps::sosdecomp
