#pragma once

#include <spheremaps/mapforge/multipoly.hpp>
#include <spheremaps/sosdecomp/sos.hpp>

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

namespace spheremaps::mapforge {

using sosdecomp::CorollaryTriple;
using sosdecomp::PartBTriple;
using Point = std::vector<double>;

/// Orientation of S^n and S^n_{2r}: outward normal (gradient of the
/// defining function) followed by a positively oriented tangent frame.
inline constexpr const char* kOrientationConvention = "outward-normal-first";

/// F(z, y) = ((beta1 + i beta2)(|z|^2) z^k, alpha(|z|^2) y) on S^n, with
/// z = x0 + i x1 and z^k replaced by conj(z)^|k| when k < 0.
struct SphereMapA {
  int k = 1;
  int n = 2;
  CorollaryTriple triple;
  bool conjugate = false;

  int algebraic_degree() const { return 2 * std::abs(k) - 1; }
};

/// F(x, y) = (beta1~(|x|^2) f(x) + beta2~(|x|^2) J f(x), alpha~(|x|^2) y)
/// on S^n_{2r} = {|x|^4 + |y|^2 = 1}, x in R^{2r}.
struct SphereMapB {
  int ktilde = 1;
  int r = 1;
  int n = 2;
  PartBTriple triple;
  HomogeneousMap equatorial_map;
  bool conjugate = false;

  int k() const { return conjugate ? -2 * ktilde : 2 * ktilde; }
};

/// Throws InvalidParity (k even or zero), InvalidDimension (n odd or < 2).
SphereMapA construct_a(int k, int n, unsigned precision_bits = sosdecomp::kDefaultPrecisionBits);

Point evaluate_a(const SphereMapA& m, const Point& p);
/// Evaluation with every operation carried at `bits`.
std::vector<mpf_class> evaluate_a(const SphereMapA& m, const std::vector<mpf_class>& p, unsigned bits);

/// Explicit expansion over R^{n+1}; every monomial has odd degree at most
/// 2|k| - 1 and declared_degree is left unset. Throws
/// MonomialParityViolation if that structure is broken.
HomogeneousMap expand_a(const SphereMapA& m);

/// Multiplies each monomial of degree d by (sum x_i^2)^((target - d) / 2).
/// Throws ParityMismatch and DegreeExceeded.
HomogeneousMap homogenize(const HomogeneousMap& map, int target_degree);

/// z -> z^(2 ktilde) (or its conjugate) on R^2; the constant (1, 0) for
/// ktilde = 0.
HomogeneousMap builtin_equatorial(int ktilde, bool conjugate,
                                  unsigned precision_bits = sosdecomp::kDefaultPrecisionBits);

struct EquatorialValidation {
  bool structural = false;
  double max_deviation = 0.0;
  Point worst_point;
};

/// Checks structural homogeneity of degree 2 ktilde and | |f(u)| - 1 | <=
/// tolerance at `samples` points of S^{2r-1}. Throws ValidationFailed
/// naming the failing check.
EquatorialValidation validate_equatorial(const HomogeneousMap& f, int ktilde, int r,
                                         std::size_t samples = 1000, std::uint64_t seed = 0,
                                         double tolerance = 1e-10);

/// (x1, x2, ..., x_{2r-1}, x_{2r}) -> (-x2, x1, ..., -x_{2r}, x_{2r-1}).
/// Throws OddLength.
template <class T>
std::vector<T> apply_J(const std::vector<T>& v);

/// k even and nonzero; ktilde = |k| / 2. For r = 1 and no f the built-in
/// equatorial map is used. A supplied f is validated; for k < 0 its second
/// output coordinate is negated, matching the built-in conjugation.
/// Throws InvalidParity, InvalidDimension, MissingEquatorialMap,
/// ValidationFailed.
SphereMapB construct_b(int k, int n, int r, const HomogeneousMap* f = nullptr,
                       unsigned precision_bits = sosdecomp::kDefaultPrecisionBits);

Point evaluate_b(const SphereMapB& m, const Point& p);
std::vector<mpf_class> evaluate_b(const SphereMapB& m, const std::vector<mpf_class>& p, unsigned bits);

/// Explicit expansion of variant B over R^{n+1} (not homogeneous).
HomogeneousMap expand_b(const SphereMapB& m);

struct Domain {
  enum class Kind { Sphere, Squashed };
  Kind kind = Kind::Sphere;
  int n = 2;
  int r = 1;

  static Domain sphere(int n) { return {Kind::Sphere, n, 0}; }
  static Domain squashed(int n, int r) { return {Kind::Squashed, n, r}; }
  /// |x|^2 - 1 on S^n, (x_1^2 + ... + x_{2r}^2)^2 + |y|^2 - 1 on S^n_{2r}.
  double defining_function(const Point& p) const;
  std::string to_string() const;
};

/// Deterministic for a fixed seed. Squashed samples are not uniform.
std::vector<Point> sample_domain(const Domain& domain, std::size_t count, std::uint64_t seed);

extern template std::vector<double> apply_J(const std::vector<double>&);
extern template std::vector<mpf_class> apply_J(const std::vector<mpf_class>&);

}  // namespace spheremaps::mapforge
