#include <spheremaps/degreelab/degree.hpp>
#include <spheremaps/errors.hpp>

#include <Eigen/Dense>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <thread>
#include <vector>

namespace spheremaps::degreelab {

using mapforge::CompiledMap;
using exactpoly::SignClaim;
using exactpoly::SignDomain;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMinModulus = 0.5;
constexpr double kMinNorm = 1e-6;
constexpr int kMaxBisections = 48;

std::pair<double, double> checked(const EquatorCurve& curve, double theta) {
  const auto w = curve(theta);
  const double r = std::hypot(w.first, w.second);
  if (!(r >= kMinModulus))
    throw EquatorDegeneracy("|F| = " + std::to_string(r) + " on the equator at theta = " + std::to_string(theta));
  return w;
}

double arg_increment(std::pair<double, double> a, std::pair<double, double> b) {
  return std::atan2(a.first * b.second - a.second * b.first, a.first * b.first + a.second * b.second);
}

double track(const EquatorCurve& curve, double ta, std::pair<double, double> wa, double tb,
             std::pair<double, double> wb, int depth) {
  const double d = arg_increment(wa, wb);
  if (std::abs(d) < kPi / 2) return d;
  if (depth >= kMaxBisections) throw EquatorDegeneracy("argument tracking did not resolve near theta = " + std::to_string(ta));
  const double tm = 0.5 * (ta + tb);
  const auto wm = checked(curve, tm);
  return track(curve, ta, wa, tm, wm, depth + 1) + track(curve, tm, wm, tb, wb, depth + 1);
}

constexpr double kRoundingFloor = 1e-12;

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

struct GlTable {
  explicit GlTable(std::size_t n) : table(gsl_integration_glfixed_table_alloc(n), gsl_integration_glfixed_table_free) {}
  std::unique_ptr<gsl_integration_glfixed_table, void (*)(gsl_integration_glfixed_table*)> table;
};

double degree_integral(const CompiledMap& f, Surface surface, unsigned polar, unsigned azimuthal) {
  GlTable gl(polar);
  double total = 0.0;
  double x[3], xs[3], xt[3], v[3], jac[9];
  for (unsigned i = 0; i < polar; ++i) {
    double s = 0.0, w = 0.0;
    gsl_integration_glfixed_point(0.0, kPi, i, &s, &w, gl.table.get());
    const double sn = std::sin(s), cs = std::cos(s);
    double row = 0.0;
    for (unsigned j = 0; j < azimuthal; ++j) {
      const double th = 2 * kPi * j / azimuthal;
      const double ct = std::cos(th), st = std::sin(th);
      // radial profile rho(s) in the (x1, x2) plane and its derivative
      const double rho = surface == Surface::Sphere ? sn : std::sqrt(sn);
      const double drho = surface == Surface::Sphere ? cs : cs / (2 * std::sqrt(sn));
      x[0] = rho * ct, x[1] = rho * st, x[2] = cs;
      xs[0] = drho * ct, xs[1] = drho * st, xs[2] = -sn;
      xt[0] = -rho * st, xt[1] = rho * ct, xt[2] = 0.0;
      f.eval_with_jacobian(x, v, jac);
      double fs[3], ft[3];
      for (int a = 0; a < 3; ++a) {
        fs[a] = jac[3 * a] * xs[0] + jac[3 * a + 1] * xs[1] + jac[3 * a + 2] * xs[2];
        ft[a] = jac[3 * a] * xt[0] + jac[3 * a + 1] * xt[1] + jac[3 * a + 2] * xt[2];
      }
      const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
      if (!(norm >= kMinNorm))
        throw NormalizationBreakdown("|F| = " + std::to_string(norm) + " at s = " + std::to_string(s) +
                                     ", theta = " + std::to_string(th));
      const double det = v[0] * (fs[1] * ft[2] - fs[2] * ft[1]) - v[1] * (fs[0] * ft[2] - fs[2] * ft[0]) +
                         v[2] * (fs[0] * ft[1] - fs[1] * ft[0]);
      row += det / (norm * norm * norm);
    }
    total += w * row * (2 * kPi / azimuthal);
  }
  return total / (4 * kPi);
}

// det[F, DF e_1, ..., DF e_n] / |F|^(n+1), e_i the columns 1..n of a
// Householder reflection sending e_0 to -x (or x), signed so det[x, e] = 1.
double mc_integrand(const CompiledMap& f, const double* x, std::size_t dim) {
  std::vector<double> v(dim), jac(dim * dim), h(dim);
  f.eval_with_jacobian(x, v.data(), jac.data());
  const bool flip = x[0] < -0.5;
  for (std::size_t i = 0; i < dim; ++i) h[i] = x[i];
  h[0] += flip ? -1.0 : 1.0;
  double hh = 0.0;
  for (double c : h) hh += c * c;

  Eigen::MatrixXd m(dim, dim);
  double norm = 0.0;
  for (std::size_t a = 0; a < dim; ++a) {
    m(static_cast<Eigen::Index>(a), 0) = v[a];
    norm += v[a] * v[a];
  }
  norm = std::sqrt(norm);
  if (!(norm >= kMinNorm)) throw NormalizationBreakdown("|F| = " + std::to_string(norm) + " at a sample");
  std::vector<double> e(dim);
  for (std::size_t col = 1; col < dim; ++col) {
    const double c = 2 * h[col] / hh;
    for (std::size_t a = 0; a < dim; ++a) e[a] = (a == col ? 1.0 : 0.0) - c * h[a];
    for (std::size_t a = 0; a < dim; ++a) {
      double s = 0.0;
      for (std::size_t b = 0; b < dim; ++b) s += jac[a * dim + b] * e[b];
      m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(col)) = s;
    }
  }
  const double det = m.partialPivLu().determinant();
  return (flip ? -det : det) / std::pow(norm, static_cast<double>(dim));
}

}  // namespace

long DegreeEstimate::nearest_integer() const { return std::lround(value); }

bool DegreeEstimate::conclusive() const {
  return std::abs(value - static_cast<double>(nearest_integer())) <= error_estimate && error_estimate < 0.5;
}

int winding_number(const EquatorCurve& curve, unsigned subdivisions) {
  if (subdivisions < 4) subdivisions = 4;
  double total = 0.0;
  double ta = 0.0;
  auto wa = checked(curve, ta);
  const auto w0 = wa;
  for (unsigned i = 1; i <= subdivisions; ++i) {
    const double tb = 2 * kPi * i / subdivisions;
    const auto wb = i == subdivisions ? w0 : checked(curve, tb);
    total += track(curve, ta, wa, tb, wb, 0);
    ta = tb;
    wa = wb;
  }
  return static_cast<int>(std::lround(total / (2 * kPi)));
}

int winding_number(const SphereMapA& m, unsigned subdivisions) {
  subdivisions = std::max(subdivisions, 8u * static_cast<unsigned>(m.algebraic_degree()));
  return winding_number(
      [&](double th) {
        mapforge::Point p(static_cast<std::size_t>(m.n + 1), 0.0);
        p[0] = std::cos(th);
        p[1] = std::sin(th);
        const auto out = mapforge::evaluate_a(m, p);
        return std::make_pair(out[0], out[1]);
      },
      subdivisions);
}

int winding_number(const SphereMapB& m, unsigned subdivisions) {
  if (m.r != 1) throw InvalidDimension("equator winding is implemented for r = 1 only");
  subdivisions = std::max(subdivisions, 8u * (4u * static_cast<unsigned>(m.ktilde) - 1u));
  return winding_number(
      [&](double th) {
        mapforge::Point p(static_cast<std::size_t>(m.n + 1), 0.0);
        p[0] = std::cos(th);
        p[1] = std::sin(th);
        const auto out = mapforge::evaluate_b(m, p);
        return std::make_pair(out[0], out[1]);
      },
      subdivisions);
}

int winding_number(const HomogeneousMap& map, unsigned subdivisions) {
  if (map.input_dim < 2 || map.components.size() < 2) throw InvalidDimension("map needs at least two coordinates");
  int degree = 1;
  for (const auto& c : map.components) degree = std::max(degree, c.degree());
  subdivisions = std::max(subdivisions, 8u * static_cast<unsigned>(degree));
  const CompiledMap f(map);
  return winding_number(
      [&](double th) {
        mapforge::Point p(map.input_dim, 0.0);
        p[0] = std::cos(th);
        p[1] = std::sin(th);
        const auto out = f.eval(p);
        return std::make_pair(out[0], out[1]);
      },
      subdivisions);
}

namespace {

constexpr const char* kAssumption =
    "alpha > 0 gives F^-1(S^1) = S^1 with orientation preserved transversally to S^1; "
    "this step is analytic and not machine-checked";

}  // namespace

DegreeCertificate equator_certificate(const SphereMapA& m) {
  DegreeCertificate c;
  c.alpha_certificate = exactpoly::certify_sign(m.triple.alpha, SignDomain::all_reals(), SignClaim::StrictlyPositive);
  c.winding = winding_number(m);
  c.degree = c.winding;
  c.assumption = kAssumption;
  return c;
}

DegreeCertificate equator_certificate(const SphereMapB& m) {
  DegreeCertificate c;
  c.alpha_certificate =
      exactpoly::certify_sign(m.triple.alpha_tilde, SignDomain::all_reals(), SignClaim::StrictlyPositive);
  c.winding = winding_number(m);
  c.degree = c.winding;
  c.assumption = kAssumption;
  return c;
}

DegreeEstimate integral_degree(const HomogeneousMap& map, Surface surface, Grid grid) {
  if (map.input_dim != 3 || map.components.size() != 3) throw InvalidDimension("degree integral needs a map R^3 -> R^3");
  if (grid.polar < 2 || grid.azimuthal < 2) throw InvalidParameter("grid must have at least 2 x 2 nodes");
  const CompiledMap f(map);
  DegreeEstimate e;
  e.method = "integral";
  e.value = degree_integral(f, surface, grid.polar, grid.azimuthal);
  e.error_estimate = std::abs(e.value - degree_integral(f, surface, grid.polar / 2, grid.azimuthal / 2));
  e.nodes_or_samples = static_cast<std::uint64_t>(grid.polar) * grid.azimuthal;
  if (!(e.error_estimate <= 0.25))
    throw GridTooCoarse("full and half grid differ by " + std::to_string(e.error_estimate));
  return e;
}

DegreeEstimate integral_degree(const SphereMapA& m, Grid grid) {
  if (m.n != 2) throw InvalidDimension("degree integral needs n = 2");
  return integral_degree(mapforge::expand_a(m), Surface::Sphere, grid);
}

DegreeEstimate integral_degree(const SphereMapB& m, Grid grid) {
  if (m.n != 2 || m.r != 1) throw InvalidDimension("degree integral needs n = 2 and r = 1");
  return integral_degree(mapforge::expand_b(m), Surface::Squashed, grid);
}

DegreeEstimate montecarlo_degree(const HomogeneousMap& map, const MonteCarloOptions& options) {
  const std::size_t dim = map.input_dim;
  if (dim < 3 || map.components.size() != dim) throw InvalidDimension("Monte Carlo degree needs a map R^(n+1) -> R^(n+1)");
  if (options.samples < 2) throw InvalidParameter("need at least 2 samples");
  const CompiledMap f(map);
  const std::size_t n = options.samples;
  std::vector<double> values(n);

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss;
  constexpr std::size_t kBlock = 1 << 15;
  std::vector<double> points;
  const unsigned workers = std::max(1u, options.workers);
  for (std::size_t begin = 0; begin < n; begin += kBlock) {
    const std::size_t count = std::min(kBlock, n - begin);
    points.assign(count * dim, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
      double s = 0.0;
      do {
        s = 0.0;
        for (std::size_t a = 0; a < dim; ++a) {
          points[i * dim + a] = gauss(rng);
          s += points[i * dim + a] * points[i * dim + a];
        }
      } while (s == 0.0);
      const double inv = 1.0 / std::sqrt(s);
      for (std::size_t a = 0; a < dim; ++a) points[i * dim + a] *= inv;
    }
    auto work = [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) values[begin + i] = mc_integrand(f, &points[i * dim], dim);
    };
    if (workers == 1) {
      work(0, count);
    } else {
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(workers);
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            work(count * w / workers, count * (w + 1) / workers);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& t : pool) t.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
  }

  const double mean = pairwise_sum(values.data(), n) / static_cast<double>(n);
  std::vector<double> magnitudes(n);
  for (std::size_t i = 0; i < n; ++i) magnitudes[i] = std::abs(values[i]);
  const double mean_abs = pairwise_sum(magnitudes.data(), n) / static_cast<double>(n);
  for (auto& v : values) v = (v - mean) * (v - mean);
  const double variance = pairwise_sum(values.data(), n) / static_cast<double>(n - 1);

  DegreeEstimate e;
  e.method = "montecarlo";
  e.value = mean;
  e.standard_error = std::sqrt(variance / static_cast<double>(n));
  // floating-point floor: a constant integrand has zero sample variance
  e.error_estimate = 1.96 * e.standard_error + kRoundingFloor * mean_abs;
  e.nodes_or_samples = n;
  e.seed = options.seed;
  if (!(e.standard_error <= 0.5))
    throw InsufficientSamples("standard error " + std::to_string(e.standard_error) + " with " + std::to_string(n) +
                              " samples");
  return e;
}

DegreeEstimate montecarlo_degree(const SphereMapA& m, const MonteCarloOptions& options) {
  if (m.n < 4) throw InvalidDimension("Monte Carlo degree is for n >= 4; use the integral for n = 2");
  return montecarlo_degree(mapforge::expand_a(m), options);
}

}  // namespace spheremaps::degreelab
