#pragma once

#include <spheremaps/errors.hpp>
#include <spheremaps/exactpoly/rat_poly.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace spheremaps::exactpoly {

/// A rational number or one of the two infinities.
struct ExtendedRational {
  enum class Kind { NegInf, Finite, PosInf };
  Kind kind = Kind::Finite;
  Rational value;

  static ExtendedRational neg_inf() { return {Kind::NegInf, 0}; }
  static ExtendedRational pos_inf() { return {Kind::PosInf, 0}; }
  static ExtendedRational finite(const Rational& v) { return {Kind::Finite, v}; }

  bool is_finite() const noexcept { return kind == Kind::Finite; }
  std::string to_string() const;
};

/// Half-open interval (lo, hi].
struct Interval {
  ExtendedRational lo = ExtendedRational::neg_inf();
  ExtendedRational hi = ExtendedRational::pos_inf();
};

/// p / gcd(p, p'), primitive with positive leading coefficient.
/// Throws ZeroPolynomial.
RatPoly squarefree_part(const RatPoly& p);

/// Yun decomposition p = c * f_1 * f_2^2 * ... * f_m^m with square-free,
/// pairwise coprime, monic f_i. Entry i-1 holds f_i; trailing entries are
/// never constant. The scalar c is returned separately.
struct SquarefreeFactorization {
  Rational content;
  std::vector<RatPoly> factors;
};
SquarefreeFactorization squarefree_factorization(const RatPoly& p);

/// Negated-remainder chain p, p', -rem(p, p'), ... with every member
/// rescaled by a positive constant to a primitive integer polynomial.
class SturmSequence {
 public:
  /// Throws ZeroPolynomial or NotSquareFree.
  explicit SturmSequence(const RatPoly& p);

  std::size_t sign_variations(const ExtendedRational& x) const;
  /// Distinct real roots in (lo, hi].
  std::size_t count(const Interval& interval) const;
  const std::vector<RatPoly>& chain() const noexcept { return chain_; }

 private:
  std::vector<RatPoly> chain_;
};

/// Distinct real roots of the square-free polynomial p in (lo, hi].
std::size_t sturm_root_count(const RatPoly& p, const Interval& interval);

/// Strict upper bound on the modulus of every complex root (Cauchy).
Rational cauchy_root_bound(const RatPoly& p);

/// Isolating intervals (lo, hi] with finite endpoints, one per distinct real
/// root of the square-free polynomial p, sorted increasing. Every value in
/// `split_points` ends up as an endpoint, so a root equal to a split point is
/// the `hi` of its interval.
std::vector<std::pair<Rational, Rational>> isolate_real_roots(
    const RatPoly& p, const std::vector<Rational>& split_points = {});

struct SignDomain {
  enum class Kind { AllReals, NonnegativeReals, ClosedInterval };
  Kind kind = Kind::AllReals;
  Rational lo, hi;  // used by ClosedInterval only

  static SignDomain all_reals() { return {Kind::AllReals, 0, 0}; }
  static SignDomain nonnegative_reals() { return {Kind::NonnegativeReals, 0, 0}; }
  /// Throws InvalidParameter when lo > hi.
  static SignDomain closed(const Rational& lo, const Rational& hi);

  bool contains(const Rational& x) const;
  bool in_interior(const Rational& x) const;
  std::string to_string() const;
};

enum class SignClaim { StrictlyPositive, Nonnegative };
std::string to_string(SignClaim claim);

/// Number of distinct roots of multiplicity `multiplicity` in the domain.
struct MultiplicityCount {
  unsigned multiplicity = 0;
  std::size_t roots_in_domain = 0;
  std::size_t roots_in_interior = 0;
};

/// Re-checkable evidence that a polynomial has a sign on a domain.
///
/// strictly-positive: the square-free part has no root in the closed domain
/// and the polynomial is positive at `sample`.
/// nonnegative: no root of odd multiplicity lies in the domain interior and
/// the polynomial is positive at the non-root `sample`.
struct PositivityCertificate {
  RatPoly polynomial;
  SignDomain domain;
  SignClaim claim = SignClaim::StrictlyPositive;
  std::size_t squarefree_root_count = 0;
  Rational sample;
  int sample_sign = 0;
  std::vector<MultiplicityCount> multiplicities;

  /// Recomputes the evidence from scratch and compares.
  bool recheck() const;
};

/// Raised when a sign claim fails. `witness` is a point of the domain where
/// the claim is violated. When `exact` is false the violating point is an
/// irrational root and `witness` lies within 2^-64 of it.
class ClaimFalse : public Error {
 public:
  ClaimFalse(Rational witness, bool exact);

  const Rational& witness() const noexcept { return witness_; }
  bool exact() const noexcept { return exact_; }

 private:
  Rational witness_;
  bool exact_;
};

/// Decides the claim exactly. Returns a certificate or throws ClaimFalse.
/// Throws ZeroPolynomial for p = 0.
PositivityCertificate certify_sign(const RatPoly& p, const SignDomain& domain,
                                   SignClaim claim);

}  // namespace spheremaps::exactpoly
