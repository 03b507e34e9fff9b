#include <spheremaps/errors.hpp>
#include <spheremaps/mapforge/sphere_map.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace spheremaps::mapforge {
namespace {

double norm2(const Point& p) {
  double s = 0.0;
  for (double v : p) s += v * v;
  return s;
}

double max_abs_diff(const Point& a, const Point& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

std::vector<Point> box_points(std::size_t dim, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<Point> out(count, Point(dim));
  for (auto& p : out)
    for (auto& v : p) v = u(rng);
  return out;
}

// Moves a double sample exactly onto its domain at `bits` precision.
std::vector<mpf_class> lift(const Point& p, const Domain& d, unsigned bits) {
  std::vector<mpf_class> x;
  for (double v : p) x.emplace_back(v, bits);
  if (d.kind == Domain::Kind::Sphere) {
    mpf_class s(0, bits);
    for (const auto& v : x) s += v * v;
    const mpf_class inv(1 / sqrt(s), bits);
    for (auto& v : x) v *= inv;
    return x;
  }
  const auto xdim = static_cast<std::size_t>(2 * d.r);
  mpf_class t(0, bits), y2(0, bits);
  for (std::size_t i = 0; i < x.size(); ++i) (i < xdim ? t : y2) += x[i] * x[i];
  const mpf_class s(sqrt(t * t + y2), bits);
  const mpf_class t_new(t / s, bits);
  const mpf_class scale(sqrt(t_new / t), bits);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] *= (i < xdim ? scale : mpf_class(1 / s, bits));
  return x;
}

template <class Map, class Eval>
double worst_sphere_deviation(const Map& m, const Domain& d, Eval eval, unsigned bits, std::size_t samples) {
  mpf_class worst(0, bits);
  for (const auto& p : sample_domain(d, samples, 99)) {
    const auto x = lift(p, d, bits);
    const auto f = eval(m, x, bits);
    mpf_class s(0, bits);
    for (const auto& v : f) s += v * v;
    const mpf_class dev(abs(s - 1), bits);
    if (dev > worst) worst = dev;
  }
  return worst.get_d();
}

TEST(ConstructA, Errors) {
  EXPECT_THROW(construct_a(2, 2), InvalidParity);
  EXPECT_THROW(construct_a(0, 2), InvalidParity);
  EXPECT_THROW(construct_a(3, 3), InvalidDimension);
  EXPECT_THROW(construct_a(3, 0), InvalidDimension);
  const auto m = construct_a(-3, 4);
  EXPECT_TRUE(m.conjugate);
  EXPECT_EQ(m.triple.k, 3);
  EXPECT_EQ(m.algebraic_degree(), 5);
}

TEST(EvaluateA, Examples) {
  const auto id = construct_a(1, 2);
  const Point p{0.6, 0.8, 0.0};
  EXPECT_LT(max_abs_diff(evaluate_a(id, p), p), 1e-15);
  EXPECT_THROW(evaluate_a(id, Point{1.0, 0.0}), DimensionMismatch);

  const auto m3 = construct_a(3, 2);
  EXPECT_NEAR(norm2(evaluate_a(m3, Point{1.0, 0.0, 0.0})), 1.0, 1e-10);
  for (int k : {1, 3, -5, 7}) {
    const auto m = construct_a(k, 4);
    const Point north{0, 0, 1, 0, 0};
    EXPECT_LT(max_abs_diff(evaluate_a(m, north), north), 1e-15) << k;
  }
}

TEST(EvaluateA, EquatorIsFixedSetwise) {
  for (int k : {1, 3, -3, 5, 9}) {
    const auto m = construct_a(k, 2);
    for (int i = 0; i < 64; ++i) {
      const double th = 2 * M_PI * i / 64;
      const Point out = evaluate_a(m, Point{std::cos(th), std::sin(th), 0.0});
      EXPECT_NEAR(std::hypot(out[0], out[1]), 1.0, 1e-12) << k;
      EXPECT_EQ(out[2], 0.0);
    }
  }
}

TEST(EvaluateA, ConjugateSymmetry) {
  for (int k : {1, 3, 5}) {
    const auto plus = construct_a(k, 4), minus = construct_a(-k, 4);
    for (const auto& p : sample_domain(Domain::sphere(4), 200, 4)) {
      Point flipped = p;
      flipped[1] = -flipped[1];
      // conj(z)^k = (conj z)^k: reflecting the input alone turns k into -k
      EXPECT_LT(max_abs_diff(evaluate_a(minus, p), evaluate_a(plus, flipped)), 1e-15);
    }
  }
}

TEST(SpherePreservation, VariantAWithinIdentityResidual) {
  for (int k : {1, 3, -3, 5, 7}) {
    for (int n : {2, 4}) {
      const auto m = construct_a(k, n);
      const unsigned bits = 2 * m.triple.precision_bits;
      const double floor = std::ldexp(1.0, -static_cast<int>(bits) + 16);
      const double worst = worst_sphere_deviation(
          m, Domain::sphere(n), [](const auto& mm, const auto& x, unsigned b) { return evaluate_a(mm, x, b); },
          bits, 300);
      EXPECT_LE(worst, 100 * m.triple.identity_residual + floor) << "k=" << k << " n=" << n;
      double worst_double = 0.0;
      for (const auto& p : sample_domain(Domain::sphere(n), 10000, 0))
        worst_double = std::max(worst_double, std::abs(norm2(evaluate_a(m, p)) - 1));
      EXPECT_LE(worst_double, 1e-12) << "k=" << k << " n=" << n;
    }
  }
}

TEST(ExpandA, IdentityComponents) {
  const auto e = expand_a(construct_a(1, 2));
  ASSERT_EQ(e.components.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    ASSERT_EQ(e.components[i].size(), 1u);
    const auto& [ex, c] = *e.components[i].terms().begin();
    Exponents expected(3, 0);
    expected[i] = 1;
    EXPECT_EQ(ex, expected);
    EXPECT_EQ(c, 1);
  }
  EXPECT_FALSE(e.declared_degree.has_value());
}

TEST(ExpandA, MonomialDegreesForKThree) {
  const auto e = expand_a(construct_a(3, 2));
  EXPECT_EQ(e.components[0].monomial_degrees(), (std::vector<unsigned>{3, 5}));
  EXPECT_EQ(e.components[1].monomial_degrees(), (std::vector<unsigned>{3, 5}));
  EXPECT_EQ(e.components[2].monomial_degrees(), (std::vector<unsigned>{1, 3, 5}));
}

TEST(ExpandA, AgreesWithStructuredEvaluation) {
  for (int k : {1, -1, 3, -3, 5, 9}) {
    for (int n : {2, 4}) {
      const auto m = construct_a(k, n);
      const auto e = expand_a(m);
      const CompiledMap c(e);
      for (const auto& p : box_points(static_cast<std::size_t>(n + 1), 100, 5)) {
        const Point a = evaluate_a(m, p), b = c.eval(p), slow = e.eval(p);
        const double scale = std::max(1.0, std::sqrt(norm2(a)));
        EXPECT_LE(max_abs_diff(a, b), 1e-10 * scale) << "k=" << k;
        EXPECT_LE(max_abs_diff(a, slow), 1e-10 * scale) << "k=" << k;
      }
    }
  }
}

TEST(Homogenize, StructureValuesAndScaling) {
  const auto e1 = expand_a(construct_a(1, 2));
  const auto h1 = homogenize(e1, 1);
  EXPECT_EQ(h1.components[0].terms(), e1.components[0].terms());
  EXPECT_TRUE(h1.structurally_homogeneous());

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> scale(0.5, 2.0);
  for (int k : {3, -5, 9}) {
    const auto m = construct_a(k, 2);
    const auto e = expand_a(m);
    const auto h = homogenize(e, m.algebraic_degree());
    ASSERT_TRUE(h.structurally_homogeneous());
    EXPECT_EQ(*h.declared_degree, 2 * std::abs(k) - 1);
    for (const auto& c : h.components)
      EXPECT_EQ(c.monomial_degrees(), (std::vector<unsigned>{static_cast<unsigned>(2 * std::abs(k) - 1)}));
    const CompiledMap ch(h), ce(e);
    for (const auto& p : sample_domain(Domain::sphere(2), 100, 6))
      EXPECT_LE(max_abs_diff(ch.eval(p), ce.eval(p)), 1e-10);
    for (const auto& p : box_points(3, 50, 7)) {
      const double s = scale(rng);
      Point sp = p;
      for (auto& v : sp) v *= s;
      const Point a = ch.eval(sp), b = ch.eval(p);
      const double f = std::pow(s, m.algebraic_degree());
      for (std::size_t i = 0; i < a.size(); ++i)
        EXPECT_LE(std::abs(a[i] - f * b[i]), 1e-9 * std::max(std::abs(a[i]), 1.0));
    }
  }
}

TEST(Homogenize, Errors) {
  MultiPoly p(2, 64);
  p.add_term({1, 1}, mpf_class(1));
  HomogeneousMap m{2, 1, {p}, std::nullopt};
  EXPECT_THROW(homogenize(m, 3), ParityMismatch);
  EXPECT_THROW(homogenize(m, 1), DegreeExceeded);
  EXPECT_NO_THROW(homogenize(m, 4));
}

TEST(BuiltinEquatorial, Examples) {
  const auto f = builtin_equatorial(1, false);
  EXPECT_EQ(f.declared_degree, 2);
  for (const auto& p : box_points(2, 50, 9)) {
    const Point v = f.eval(p);
    EXPECT_DOUBLE_EQ(v[0], p[0] * p[0] - p[1] * p[1]);
    EXPECT_DOUBLE_EQ(v[1], 2 * p[0] * p[1]);
    const Point w = builtin_equatorial(1, true).eval(p);
    EXPECT_DOUBLE_EQ(w[0], v[0]);
    EXPECT_DOUBLE_EQ(w[1], -v[1]);
  }
  const auto c = builtin_equatorial(0, false);
  EXPECT_EQ(c.eval(Point{0.3, -2.0}), (Point{1.0, 0.0}));
  EXPECT_THROW(builtin_equatorial(-1, false), InvalidParameter);
}

TEST(ValidateEquatorial, Examples) {
  EXPECT_LE(validate_equatorial(builtin_equatorial(1, false), 1, 1).max_deviation, 1e-14);
  EXPECT_LE(validate_equatorial(builtin_equatorial(3, true), 3, 1).max_deviation, 1e-13);

  HomogeneousMap zero{2, 2, {MultiPoly(2, 64), MultiPoly(2, 64)}, 2};
  EXPECT_THROW(validate_equatorial(zero, 1, 1), ValidationFailed);
  EXPECT_THROW(validate_equatorial(builtin_equatorial(2, false), 1, 1), ValidationFailed);
  auto undeclared = builtin_equatorial(1, false);
  undeclared.declared_degree.reset();
  EXPECT_THROW(validate_equatorial(undeclared, 1, 1), ValidationFailed);
  EXPECT_THROW(validate_equatorial(builtin_equatorial(1, false), 1, 2), ValidationFailed);
}

TEST(ApplyJ, Examples) {
  EXPECT_EQ(apply_J(Point{1, 0}), (Point{0, 1}));
  EXPECT_EQ(apply_J(Point{1, 2, 3, 4}), (Point{-2, 1, -4, 3}));
  EXPECT_THROW(apply_J(Point{1, 2, 3}), OddLength);
  for (const auto& v : box_points(6, 100, 10)) {
    const Point jv = apply_J(v), jjv = apply_J(jv);
    double dot = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      dot += v[i] * jv[i];
      EXPECT_EQ(jjv[i], -v[i]);
    }
    EXPECT_LE(std::abs(dot), 1e-14);
  }
  std::vector<mpf_class> x{mpf_class(1, 128) / 3, mpf_class(2, 128) / 7};
  const auto jx = apply_J(x);
  EXPECT_EQ(mpf_class(x[0] * jx[0] + x[1] * jx[1]), 0);
}

// Quaternion squaring: a homogeneous degree-2 map S^3 -> S^3.
HomogeneousMap quaternion_square() {
  HomogeneousMap f{4, 4, std::vector<MultiPoly>(4, MultiPoly(4, 64)), 2};
  f.components[0].add_term({2, 0, 0, 0}, mpf_class(1));
  for (std::size_t i = 1; i < 4; ++i) {
    Exponents sq(4, 0), cross(4, 0);
    sq[i] = 2;
    cross[0] = 1;
    cross[i] = 1;
    f.components[0].add_term(sq, mpf_class(-1));
    f.components[i].add_term(cross, mpf_class(2));
  }
  return f;
}

TEST(ConstructB, Errors) {
  EXPECT_THROW(construct_b(3, 2, 1), InvalidParity);
  EXPECT_THROW(construct_b(0, 2, 1), InvalidParity);
  EXPECT_THROW(construct_b(2, 2, 2), InvalidDimension);
  EXPECT_THROW(construct_b(2, 3, 1), InvalidDimension);
  EXPECT_THROW(construct_b(2, 4, 2), MissingEquatorialMap);
  const auto wrong_degree = builtin_equatorial(2, false);
  EXPECT_THROW(construct_b(2, 2, 1, &wrong_degree), ValidationFailed);
}

TEST(EvaluateB, MatchesIntroductionExample) {
  const auto m = construct_b(2, 2, 1);
  EXPECT_EQ(m.k(), 2);
  EXPECT_EQ(m.triple.alpha_tilde, exactpoly::RatPoly{1});
  for (const auto& p : sample_domain(Domain::squashed(2, 1), 100, 11)) {
    const Point expected{p[0] * p[0] - p[1] * p[1], 2 * p[0] * p[1], p[2]};
    EXPECT_LE(max_abs_diff(evaluate_b(m, p), expected), 1e-12);
  }
}

TEST(SpherePreservation, VariantBWithinIdentityResidual) {
  for (int k : {2, -2, 4, -4, 6}) {
    for (int n : {2, 4}) {
      const auto m = construct_b(k, n, 1);
      const unsigned bits = 2 * m.triple.precision_bits;
      const double floor = std::ldexp(1.0, -static_cast<int>(bits) + 16);
      const Domain d = Domain::squashed(n, 1);
      const double worst = worst_sphere_deviation(
          m, d, [](const auto& mm, const auto& x, unsigned b) { return evaluate_b(mm, x, b); }, bits, 300);
      EXPECT_LE(worst, 100 * m.triple.identity_residual + floor) << "k=" << k << " n=" << n;
      double worst_double = 0.0;
      for (const auto& p : sample_domain(d, 10000, 0))
        worst_double = std::max(worst_double, std::abs(norm2(evaluate_b(m, p)) - 1));
      EXPECT_LE(worst_double, 1e-12) << "k=" << k << " n=" << n;
    }
  }
}

TEST(ConstructB, UserSuppliedEquatorialMap) {
  const auto f = quaternion_square();
  validate_equatorial(f, 1, 2);
  for (int k : {2, -2}) {
    const auto m = construct_b(k, 4, 2, &f);
    const Domain d = Domain::squashed(4, 2);
    for (const auto& p : sample_domain(d, 2000, 12)) EXPECT_NEAR(norm2(evaluate_b(m, p)), 1.0, 1e-12);
    const auto e = expand_b(m);
    for (const auto& p : box_points(5, 50, 13)) {
      const Point a = evaluate_b(m, p);
      EXPECT_LE(max_abs_diff(a, e.eval(p)), 1e-10 * std::max(1.0, std::sqrt(norm2(a))));
    }
  }
}

TEST(ExpandB, AgreesWithStructuredEvaluation) {
  for (int k : {2, -2, 4, 6}) {
    const auto m = construct_b(k, 4, 1);
    const CompiledMap c(expand_b(m));
    for (const auto& p : box_points(5, 100, 14)) {
      const Point a = evaluate_b(m, p);
      EXPECT_LE(max_abs_diff(a, c.eval(p)), 1e-10 * std::max(1.0, std::sqrt(norm2(a)))) << k;
    }
  }
}

TEST(SampleDomain, OnDomainAndDeterministic) {
  for (int n : {2, 4, 6}) {
    for (const auto& p : sample_domain(Domain::sphere(n), 1000, 1)) {
      ASSERT_EQ(p.size(), static_cast<std::size_t>(n + 1));
      EXPECT_LE(std::abs(Domain::sphere(n).defining_function(p)), 1e-14);
    }
    for (int r = 1; 2 * r <= n; ++r) {
      const Domain d = Domain::squashed(n, r);
      for (const auto& p : sample_domain(d, 1000, 2)) EXPECT_LE(std::abs(d.defining_function(p)), 1e-14);
    }
  }
  EXPECT_EQ(sample_domain(Domain::squashed(4, 1), 50, 3), sample_domain(Domain::squashed(4, 1), 50, 3));
  EXPECT_NE(sample_domain(Domain::sphere(2), 5, 3), sample_domain(Domain::sphere(2), 5, 4));
  EXPECT_THROW(sample_domain(Domain::sphere(2), 0, 0), InvalidParameter);
  EXPECT_EQ(Domain::squashed(4, 1).to_string(), "S^4_2");
}

TEST(CompiledMap, JacobianMatchesSymbolicDerivatives) {
  const auto e = expand_a(construct_a(5, 2));
  const CompiledMap c(e);
  for (const auto& p : box_points(3, 20, 15)) {
    std::vector<double> v(3), jac(9);
    c.eval_with_jacobian(p.data(), v.data(), jac.data());
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_NEAR(v[i], e.components[i].eval(p), 1e-9 * std::max(1.0, std::abs(v[i])));
      for (std::size_t j = 0; j < 3; ++j) {
        const double d = e.components[i].derivative(j).eval(p);
        EXPECT_NEAR(jac[i * 3 + j], d, 1e-9 * std::max(1.0, std::abs(d)));
      }
    }
  }
}

}  // namespace
}  // namespace spheremaps::mapforge
