#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace spheremaps::mapforge {

using Exponents = std::vector<unsigned>;

/// Sparse real polynomial in a fixed number of variables with GMP float
/// coefficients. Zero coefficients are never stored.
class MultiPoly {
 public:
  using Terms = std::map<Exponents, mpf_class>;

  MultiPoly() = default;
  MultiPoly(std::size_t num_vars, unsigned precision_bits);

  static MultiPoly constant(std::size_t num_vars, const mpf_class& c, unsigned precision_bits);
  static MultiPoly variable(std::size_t num_vars, std::size_t index, unsigned precision_bits);

  std::size_t num_vars() const noexcept { return num_vars_; }
  unsigned precision_bits() const noexcept { return precision_bits_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Adds c * x^e. Throws DimensionMismatch on a wrong exponent length.
  void add_term(const Exponents& e, const mpf_class& c);

  /// Largest total degree, -1 for the zero polynomial.
  int degree() const;
  /// Sorted distinct total degrees of the stored monomials.
  std::vector<unsigned> monomial_degrees() const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const mpf_class& s);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const mpf_class& s) { return a *= s; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);

  MultiPoly pow(unsigned e) const;
  /// Partial derivative with respect to variable `index`.
  MultiPoly derivative(std::size_t index) const;
  /// Same polynomial in `num_vars` variables, variable i renamed to
  /// offset + i.
  MultiPoly embed(std::size_t num_vars, std::size_t offset) const;

  mpf_class eval(const std::vector<mpf_class>& x, unsigned bits) const;
  double eval(const std::vector<double>& x) const;

 private:
  std::size_t num_vars_ = 0;
  unsigned precision_bits_ = 64;
  Terms terms_;
};

/// Polynomial map R^input_dim -> R^output_dim. declared_degree is set only
/// once every monomial of every component is known to have that degree.
struct HomogeneousMap {
  std::size_t input_dim = 0;
  std::size_t output_dim = 0;
  std::vector<MultiPoly> components;
  std::optional<int> declared_degree;

  /// True iff declared_degree is set and every monomial has that degree.
  bool structurally_homogeneous() const;
  std::size_t term_count() const;

  std::vector<double> eval(const std::vector<double>& x) const;
  std::vector<mpf_class> eval(const std::vector<mpf_class>& x, unsigned bits) const;
};

/// Double-precision flattening of a polynomial map for repeated evaluation
/// of values and Jacobians.
class CompiledMap {
 public:
  CompiledMap() = default;
  explicit CompiledMap(const HomogeneousMap& map);

  std::size_t input_dim() const noexcept { return input_dim_; }
  std::size_t output_dim() const noexcept { return output_dim_; }

  void eval(const double* x, double* out) const;
  std::vector<double> eval(const std::vector<double>& x) const;
  /// Values and row-major Jacobian (output_dim x input_dim).
  void eval_with_jacobian(const double* x, double* out, double* jac) const;

 private:
  struct Term {
    std::size_t component;
    double coeff;
    std::size_t exps;  // offset into exps_, input_dim_ entries
  };
  void fill_powers(const double* x, std::vector<double>& powers) const;

  std::size_t input_dim_ = 0;
  std::size_t output_dim_ = 0;
  unsigned max_exp_ = 0;
  std::vector<Term> terms_;
  std::vector<unsigned> exps_;
};

}  // namespace spheremaps::mapforge
