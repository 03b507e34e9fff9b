#include <spheremaps/errors.hpp>
#include <spheremaps/mapforge/sphere_map.hpp>
#include <spheremaps/sosdecomp/big_complex.hpp>

#include <cmath>
#include <complex>
#include <map>
#include <random>

namespace spheremaps::mapforge {

using sosdecomp::ApproxPoly;
using sosdecomp::BigComplex;

namespace {

void check_dimension(int n) {
  if (n < 2 || n % 2 != 0) throw InvalidDimension("n must be even and >= 2, got " + std::to_string(n));
}

template <class T>
void check_point(const std::vector<T>& p, int n) {
  if (p.size() != static_cast<std::size_t>(n + 1))
    throw DimensionMismatch("point of length " + std::to_string(p.size()) + " for n = " + std::to_string(n));
}

std::vector<mpf_class> coefficients_of(const exactpoly::RatPoly& p, unsigned bits) {
  std::vector<mpf_class> out;
  for (const auto& c : p.coefficients()) out.emplace_back(c, bits);
  return out;
}

// sum_m c_m rho^m by Horner's rule.
MultiPoly substitute(const std::vector<mpf_class>& c, const MultiPoly& rho) {
  MultiPoly acc(rho.num_vars(), rho.precision_bits());
  for (std::size_t i = c.size(); i-- > 0;)
    acc = acc * rho + MultiPoly::constant(rho.num_vars(), c[i], rho.precision_bits());
  return acc;
}

// Real and imaginary parts of (x_a + i x_b)^e.
std::pair<MultiPoly, MultiPoly> complex_power(std::size_t num_vars, std::size_t a, std::size_t b,
                                              unsigned e, unsigned bits) {
  MultiPoly re(num_vars, bits), im(num_vars, bits);
  mpz_class binom = 1;
  for (unsigned j = 0; j <= e; ++j) {
    Exponents ex(num_vars, 0);
    ex[a] = e - j;
    ex[b] += j;
    const mpf_class c(binom, bits);
    switch (j % 4) {
      case 0: re.add_term(ex, c); break;
      case 1: im.add_term(ex, c); break;
      case 2: re.add_term(ex, mpf_class(-c)); break;
      default: im.add_term(ex, mpf_class(-c)); break;
    }
    binom = binom * (e - j) / (j + 1);
  }
  return {std::move(re), std::move(im)};
}

MultiPoly squared_norm(std::size_t num_vars, std::size_t count, unsigned bits) {
  MultiPoly s(num_vars, bits);
  for (std::size_t i = 0; i < count; ++i) {
    Exponents e(num_vars, 0);
    e[i] = 2;
    s.add_term(e, mpf_class(1, bits));
  }
  return s;
}

std::complex<double> int_power(std::complex<double> z, unsigned e) {
  std::complex<double> w = 1.0;
  for (unsigned i = 0; i < e; ++i) w *= z;
  return w;
}

BigComplex int_power(const BigComplex& z, unsigned e, unsigned bits) {
  BigComplex w(mpf_class(1, bits), mpf_class(0, bits));
  for (unsigned i = 0; i < e; ++i) w = w * z;
  return w;
}

mpf_class sum_squares(const std::vector<mpf_class>& v, std::size_t begin, std::size_t end, unsigned bits) {
  mpf_class s(0, bits);
  for (std::size_t i = begin; i < end; ++i) s += v[i] * v[i];
  return s;
}

}  // namespace

template <class T>
std::vector<T> apply_J(const std::vector<T>& v) {
  if (v.size() % 2 != 0) throw OddLength("apply_J needs an even-length vector, got " + std::to_string(v.size()));
  std::vector<T> out = v;  // keeps per-element precision for mpf_class
  for (std::size_t i = 0; i < v.size(); i += 2) {
    out[i] = -v[i + 1];
    out[i + 1] = v[i];
  }
  return out;
}

template std::vector<double> apply_J(const std::vector<double>&);
template std::vector<mpf_class> apply_J(const std::vector<mpf_class>&);

SphereMapA construct_a(int k, int n, unsigned precision_bits) {
  if (k == 0 || k % 2 == 0) throw InvalidParity("variant a needs odd nonzero k, got " + std::to_string(k));
  check_dimension(n);
  SphereMapA m;
  m.k = k;
  m.n = n;
  m.conjugate = k < 0;
  m.triple = sosdecomp::corollary1_triple(std::abs(k), precision_bits);
  return m;
}

Point evaluate_a(const SphereMapA& m, const Point& p) {
  check_point(p, m.n);
  const std::complex<double> z(p[0], p[1]);
  const double t = std::norm(z);
  std::complex<double> w = int_power(z, static_cast<unsigned>(std::abs(m.k)));
  if (m.conjugate) w = std::conj(w);
  const std::complex<double> f = std::complex<double>(m.triple.beta1.eval(t), m.triple.beta2.eval(t)) * w;
  const double a = exactpoly::eval_float(m.triple.alpha, t);
  Point out(p.size());
  out[0] = f.real();
  out[1] = f.imag();
  for (std::size_t j = 2; j < p.size(); ++j) out[j] = a * p[j];
  return out;
}

std::vector<mpf_class> evaluate_a(const SphereMapA& m, const std::vector<mpf_class>& p, unsigned bits) {
  check_point(p, m.n);
  const BigComplex z(mpf_class(p[0], bits), mpf_class(p[1], bits));
  const mpf_class t = z.norm();
  BigComplex w = int_power(z, static_cast<unsigned>(std::abs(m.k)), bits);
  if (m.conjugate) w = w.conj();
  const BigComplex beta(m.triple.beta1.with_precision(bits).eval(t),
                        m.triple.beta2.with_precision(bits).eval(t));
  const BigComplex f = beta * w;
  const mpf_class a = exactpoly::eval_float(m.triple.alpha, t, bits);
  std::vector<mpf_class> out;
  out.push_back(f.re);
  out.push_back(f.im);
  for (std::size_t j = 2; j < p.size(); ++j) out.emplace_back(a * p[j], bits);
  return out;
}

HomogeneousMap expand_a(const SphereMapA& m) {
  const auto dim = static_cast<std::size_t>(m.n + 1);
  const unsigned bits = m.triple.precision_bits;
  const auto e = static_cast<unsigned>(std::abs(m.k));
  const MultiPoly rho = squared_norm(dim, 2, bits);
  auto [re, im] = complex_power(dim, 0, 1, e, bits);
  if (m.conjugate) im *= mpf_class(-1, bits);
  const MultiPoly b1 = substitute(m.triple.beta1.coefficients(), rho);
  const MultiPoly b2 = substitute(m.triple.beta2.coefficients(), rho);
  const MultiPoly a = substitute(coefficients_of(m.triple.alpha, bits), rho);

  HomogeneousMap out;
  out.input_dim = out.output_dim = dim;
  out.components.push_back(b1 * re - b2 * im);
  out.components.push_back(b1 * im + b2 * re);
  for (std::size_t j = 2; j < dim; ++j) out.components.push_back(a * MultiPoly::variable(dim, j, bits));

  const unsigned top = 2 * e - 1;
  for (std::size_t c = 0; c < out.components.size(); ++c)
    for (unsigned d : out.components[c].monomial_degrees())
      if (d % 2 == 0 || d > top)
        throw MonomialParityViolation("component " + std::to_string(c) + " has a monomial of degree " +
                                      std::to_string(d));
  return out;
}

HomogeneousMap homogenize(const HomogeneousMap& map, int target_degree) {
  if (target_degree < 0) throw DegreeExceeded("negative target degree");
  const auto target = static_cast<unsigned>(target_degree);
  unsigned bits = 64;
  for (const auto& c : map.components) bits = std::max(bits, c.precision_bits());
  const MultiPoly s = squared_norm(map.input_dim, map.input_dim, bits);
  std::map<unsigned, MultiPoly> s_powers;

  HomogeneousMap out;
  out.input_dim = map.input_dim;
  out.output_dim = map.output_dim;
  for (const auto& comp : map.components) {
    MultiPoly h(comp.num_vars(), bits);
    for (const auto& [e, c] : comp.terms()) {
      unsigned d = 0;
      for (unsigned v : e) d += v;
      if (d > target)
        throw DegreeExceeded("monomial of degree " + std::to_string(d) + " above target " + std::to_string(target));
      if ((target - d) % 2 != 0)
        throw ParityMismatch("monomial of degree " + std::to_string(d) + " cannot reach degree " +
                             std::to_string(target));
      const unsigned power = (target - d) / 2;
      auto it = s_powers.find(power);
      if (it == s_powers.end()) it = s_powers.emplace(power, s.pow(power)).first;
      MultiPoly mono(comp.num_vars(), bits);
      mono.add_term(e, c);
      h += mono * it->second;
    }
    out.components.push_back(std::move(h));
  }
  out.declared_degree = target_degree;
  return out;
}

HomogeneousMap builtin_equatorial(int ktilde, bool conjugate, unsigned precision_bits) {
  if (ktilde < 0) throw InvalidParameter("ktilde must be >= 0, got " + std::to_string(ktilde));
  HomogeneousMap f;
  f.input_dim = f.output_dim = 2;
  f.declared_degree = 2 * ktilde;
  if (ktilde == 0) {
    f.components.push_back(MultiPoly::constant(2, mpf_class(1, precision_bits), precision_bits));
    f.components.emplace_back(2, precision_bits);
    return f;
  }
  auto [re, im] = complex_power(2, 0, 1, static_cast<unsigned>(2 * ktilde), precision_bits);
  if (conjugate) im *= mpf_class(-1, precision_bits);
  f.components.push_back(std::move(re));
  f.components.push_back(std::move(im));
  return f;
}

EquatorialValidation validate_equatorial(const HomogeneousMap& f, int ktilde, int r, std::size_t samples,
                                         std::uint64_t seed, double tolerance) {
  const auto dim = static_cast<std::size_t>(2 * r);
  if (r < 1 || f.input_dim != dim || f.output_dim != dim || f.components.size() != dim)
    throw ValidationFailed("equatorial map must be R^" + std::to_string(dim) + " -> R^" + std::to_string(dim));
  EquatorialValidation report;
  report.structural = f.declared_degree == 2 * ktilde && f.structurally_homogeneous();
  if (!report.structural)
    throw ValidationFailed("structural check: equatorial map is not homogeneous of degree " +
                           std::to_string(2 * ktilde));
  const CompiledMap compiled(f);
  for (const auto& u : sample_domain(Domain::sphere(2 * r - 1), samples, seed)) {
    const Point v = compiled.eval(u);
    double s = 0.0;
    for (double x : v) s += x * x;
    const double dev = std::abs(std::sqrt(s) - 1.0);
    if (dev > report.max_deviation || report.worst_point.empty()) {
      report.max_deviation = dev;
      report.worst_point = u;
    }
  }
  if (!(report.max_deviation <= tolerance)) {
    std::string where;
    for (double x : report.worst_point) where += (where.empty() ? "" : ", ") + std::to_string(x);
    throw ValidationFailed("norm check: | |f(u)| - 1 | = " + std::to_string(report.max_deviation) +
                           " at u = (" + where + ")");
  }
  return report;
}

SphereMapB construct_b(int k, int n, int r, const HomogeneousMap* f, unsigned precision_bits) {
  if (k == 0 || k % 2 != 0) throw InvalidParity("variant b needs even nonzero k, got " + std::to_string(k));
  check_dimension(n);
  if (r < 1 || 2 * r > n)
    throw InvalidDimension("r must satisfy 2 <= 2r <= n, got r = " + std::to_string(r));
  SphereMapB m;
  m.ktilde = std::abs(k) / 2;
  m.r = r;
  m.n = n;
  m.conjugate = k < 0;
  if (f == nullptr) {
    if (r != 1) throw MissingEquatorialMap("r > 1 needs a caller-supplied equatorial map");
    m.equatorial_map = builtin_equatorial(m.ktilde, m.conjugate, precision_bits);
  } else {
    validate_equatorial(*f, m.ktilde, r);
    m.equatorial_map = *f;
    if (m.conjugate) m.equatorial_map.components[1] *= mpf_class(-1, m.equatorial_map.components[1].precision_bits());
  }
  m.triple = sosdecomp::partb_triple(m.ktilde, precision_bits);
  return m;
}

Point evaluate_b(const SphereMapB& m, const Point& p) {
  check_point(p, m.n);
  const auto dim = static_cast<std::size_t>(2 * m.r);
  const Point x(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(dim));
  double t = 0.0;
  for (double v : x) t += v * v;
  const Point fx = m.equatorial_map.eval(x);
  const Point jfx = apply_J(fx);
  const double b1 = m.triple.beta1_tilde.eval(t), b2 = m.triple.beta2_tilde.eval(t);
  const double a = exactpoly::eval_float(m.triple.alpha_tilde, t);
  Point out(p.size());
  for (std::size_t i = 0; i < dim; ++i) out[i] = b1 * fx[i] + b2 * jfx[i];
  for (std::size_t j = dim; j < p.size(); ++j) out[j] = a * p[j];
  return out;
}

std::vector<mpf_class> evaluate_b(const SphereMapB& m, const std::vector<mpf_class>& p, unsigned bits) {
  check_point(p, m.n);
  const auto dim = static_cast<std::size_t>(2 * m.r);
  std::vector<mpf_class> x;
  for (std::size_t i = 0; i < dim; ++i) x.emplace_back(p[i], bits);
  const mpf_class t = sum_squares(x, 0, dim, bits);
  const auto fx = m.equatorial_map.eval(x, bits);
  const auto jfx = apply_J(fx);
  const mpf_class b1 = m.triple.beta1_tilde.with_precision(bits).eval(t);
  const mpf_class b2 = m.triple.beta2_tilde.with_precision(bits).eval(t);
  const mpf_class a = exactpoly::eval_float(m.triple.alpha_tilde, t, bits);
  std::vector<mpf_class> out;
  for (std::size_t i = 0; i < dim; ++i) out.emplace_back(b1 * fx[i] + b2 * jfx[i], bits);
  for (std::size_t j = dim; j < p.size(); ++j) out.emplace_back(a * p[j], bits);
  return out;
}

HomogeneousMap expand_b(const SphereMapB& m) {
  const auto dim = static_cast<std::size_t>(m.n + 1);
  const auto xdim = static_cast<std::size_t>(2 * m.r);
  const unsigned bits = m.triple.precision_bits;
  const MultiPoly rho = squared_norm(dim, xdim, bits);
  const MultiPoly b1 = substitute(m.triple.beta1_tilde.coefficients(), rho);
  const MultiPoly b2 = substitute(m.triple.beta2_tilde.coefficients(), rho);
  const MultiPoly a = substitute(coefficients_of(m.triple.alpha_tilde, bits), rho);
  std::vector<MultiPoly> f;
  for (const auto& c : m.equatorial_map.components) f.push_back(c.embed(dim, 0));

  HomogeneousMap out;
  out.input_dim = out.output_dim = dim;
  for (std::size_t i = 0; i < xdim; i += 2) {
    out.components.push_back(b1 * f[i] - b2 * f[i + 1]);
    out.components.push_back(b1 * f[i + 1] + b2 * f[i]);
  }
  for (std::size_t j = xdim; j < dim; ++j) out.components.push_back(a * MultiPoly::variable(dim, j, bits));
  return out;
}

double Domain::defining_function(const Point& p) const {
  if (kind == Kind::Sphere) {
    double s = 0.0;
    for (double v : p) s += v * v;
    return s - 1.0;
  }
  double x2 = 0.0, y2 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) (i < static_cast<std::size_t>(2 * r) ? x2 : y2) += p[i] * p[i];
  return x2 * x2 + y2 - 1.0;
}

std::string Domain::to_string() const {
  if (kind == Kind::Sphere) return "S^" + std::to_string(n);
  return "S^" + std::to_string(n) + "_" + std::to_string(2 * r);
}

namespace {

Point normal_unit_vector(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> gauss;
  for (;;) {
    Point v(dim);
    double s = 0.0;
    for (auto& x : v) {
      x = gauss(rng);
      s += x * x;
    }
    if (s == 0.0) continue;
    const double inv = 1.0 / std::sqrt(s);
    for (auto& x : v) x *= inv;
    return v;
  }
}

}  // namespace

std::vector<Point> sample_domain(const Domain& domain, std::size_t count, std::uint64_t seed) {
  if (count < 1) throw InvalidParameter("count must be >= 1");
  if (domain.n < 1) throw InvalidDimension("n must be positive");
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  out.reserve(count);
  const auto dim = static_cast<std::size_t>(domain.n + 1);
  if (domain.kind == Domain::Kind::Sphere) {
    for (std::size_t i = 0; i < count; ++i) out.push_back(normal_unit_vector(rng, dim));
    return out;
  }
  if (domain.r < 1 || 2 * domain.r > domain.n)
    throw InvalidDimension("r must satisfy 2 <= 2r <= n");
  const auto xdim = static_cast<std::size_t>(2 * domain.r);
  for (std::size_t i = 0; i < count; ++i) {
    const Point u = normal_unit_vector(rng, xdim);
    const Point w = normal_unit_vector(rng, dim - xdim + 1);
    const double s = std::sqrt(std::abs(w[0]));
    Point p;
    p.reserve(dim);
    for (double v : u) p.push_back(s * v);
    p.insert(p.end(), w.begin() + 1, w.end());
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace spheremaps::mapforge
