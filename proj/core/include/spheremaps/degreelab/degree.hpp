#pragma once

#include <spheremaps/exactpoly/sturm.hpp>
#include <spheremaps/mapforge/sphere_map.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

namespace spheremaps::degreelab {

using exactpoly::PositivityCertificate;
using mapforge::HomogeneousMap;
using mapforge::SphereMapA;
using mapforge::SphereMapB;

/// Degree read off the equator: alpha > 0 on R (exact Sturm certificate)
/// forces F^-1(S^1) = S^1, and the degree equals the winding of F on S^1.
struct DegreeCertificate {
  int degree = 0;
  int winding = 0;
  PositivityCertificate alpha_certificate;
  std::string method = "equator";
  /// The analytic step linking positivity and winding to the degree.
  std::string assumption;
};

struct DegreeEstimate {
  double value = 0.0;
  /// Integral: Richardson difference against the half grid. Monte Carlo:
  /// half-width of the 95% interval plus 1e-12 times the mean |integrand|.
  double error_estimate = 0.0;
  std::string method;
  std::uint64_t nodes_or_samples = 0;
  std::optional<std::uint64_t> seed;
  /// Monte Carlo only.
  double standard_error = 0.0;

  long nearest_integer() const;
  /// True when the nearest integer lies within error_estimate of value.
  bool conclusive() const;
};

/// Plane curve theta -> (u, v), 2 pi periodic.
using EquatorCurve = std::function<std::pair<double, double>(double)>;

inline constexpr unsigned kDefaultSubdivisions = 64;

/// Winding number about the origin. Segments are bisected until every
/// argument increment is below pi / 2; the initial nodes must not alias the
/// curve. Throws EquatorDegeneracy when |curve| < 0.5 at a node. The map
/// overloads start from at least 8 nodes per unit of algebraic degree.
int winding_number(const EquatorCurve& curve, unsigned subdivisions = kDefaultSubdivisions);
int winding_number(const SphereMapA& m, unsigned subdivisions = kDefaultSubdivisions);
/// r = 1 only (InvalidDimension otherwise).
int winding_number(const SphereMapB& m, unsigned subdivisions = kDefaultSubdivisions);
/// First two output coordinates on {(cos t, sin t, 0, ..., 0)}.
int winding_number(const HomogeneousMap& map, unsigned subdivisions = kDefaultSubdivisions);

/// Certifies alpha (alpha~) strictly positive on R, then reports the
/// winding number as the degree. ClaimFalse propagates.
DegreeCertificate equator_certificate(const SphereMapA& m);
DegreeCertificate equator_certificate(const SphereMapB& m);

struct Grid {
  unsigned polar = 64;
  unsigned azimuthal = 128;
};

enum class Surface { Sphere, Squashed };

/// (1 / 4 pi) times the integral of det(F, F_s, F_theta) / |F|^3 over the
/// polar/azimuthal parametrization of S^2 or S^2_2; Gauss-Legendre in s,
/// trapezoid in theta. Throws GridTooCoarse when the full and half grids
/// differ by more than 0.25 and NormalizationBreakdown when |F| < 1e-6 at
/// a node.
DegreeEstimate integral_degree(const HomogeneousMap& map, Surface surface, Grid grid = {});
/// n = 2 (InvalidDimension otherwise).
DegreeEstimate integral_degree(const SphereMapA& m, Grid grid = {});
/// n = 2 and r = 1.
DegreeEstimate integral_degree(const SphereMapB& m, Grid grid = {});

struct MonteCarloOptions {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  /// Worker threads; results do not depend on this value.
  unsigned workers = 1;
};

/// Mean of det[F, DF e_1, ..., DF e_n] / |F|^(n+1) over uniform points of
/// S^n, e_i an oriented tangent frame. Variant A with even n >= 4. Throws
/// InsufficientSamples when the standard error exceeds 0.5.
DegreeEstimate montecarlo_degree(const SphereMapA& m, const MonteCarloOptions& options = {});
DegreeEstimate montecarlo_degree(const HomogeneousMap& map, const MonteCarloOptions& options = {});

}  // namespace spheremaps::degreelab
