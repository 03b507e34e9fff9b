#include <spheremaps/errors.hpp>
#include <spheremaps/sosdecomp/roots.hpp>

#include <cmath>
#include <numbers>
#include <numeric>

namespace spheremaps::sosdecomp {

namespace {

using Coeffs = std::vector<mpf_class>;

Coeffs at_precision(const ApproxPoly& p, unsigned bits) {
  Coeffs out;
  out.reserve(p.coefficients().size());
  for (const auto& c : p.coefficients()) out.emplace_back(c, bits);
  return out;
}

Coeffs derivative(const Coeffs& a, unsigned order) {
  Coeffs d = a;
  for (unsigned k = 0; k < order && !d.empty(); ++k) {
    Coeffs next;
    for (std::size_t i = 1; i < d.size(); ++i) next.emplace_back(mpf_class(d[i] * static_cast<unsigned long>(i)));
    d = std::move(next);
  }
  return d;
}

struct Evaluation {
  BigComplex value;
  BigComplex slope;
  mpf_class noise;  // bound on the rounding error of `value`
};

Evaluation horner(const Coeffs& a, const BigComplex& z, const mpf_class& roundoff) {
  const unsigned bits = static_cast<unsigned>(a.back().get_prec());
  Evaluation e{BigComplex(a.back(), mpf_class(0, bits)), BigComplex(bits), mpf_class(abs(a.back()))};
  const mpf_class r = z.abs();
  for (std::size_t i = a.size() - 1; i-- > 0;) {
    e.slope = e.slope * z + e.value;
    e.value = e.value * z + BigComplex(a[i], mpf_class(0, bits));
    e.noise = e.noise * r + abs(a[i]);
  }
  e.noise *= roundoff * static_cast<unsigned long>(4 * a.size());
  return e;
}

double log2_abs(const mpf_class& x) {
  long exp = 0;
  const double mant = mpf_get_d_2exp(&exp, x.get_mpf_t());
  return std::log2(std::fabs(mant)) + static_cast<double>(exp);
}

std::vector<BigComplex> initial_guesses(const Coeffs& a, unsigned bits) {
  const std::size_t n = a.size() - 1;
  double log_radius = 0.0;
  if (a.front() != 0) log_radius = (log2_abs(a.front()) - log2_abs(a.back())) / static_cast<double>(n);
  const double radius = std::exp2(log_radius);
  std::vector<BigComplex> z;
  z.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n) + 0.4;
    z.emplace_back(mpf_class(radius * std::cos(theta), bits), mpf_class(radius * std::sin(theta), bits));
  }
  return z;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

unsigned RootSet::total_multiplicity() const {
  unsigned total = 0;
  for (const auto& r : roots) total += r.multiplicity;
  return total;
}

RootSet find_roots(const ApproxPoly& p, unsigned working_bits,
                   const RootFinderOptions& options) {
  if (p.is_zero()) throw ZeroPolynomial("roots of the zero polynomial");
  if (working_bits < kMinPrecisionBits)
    throw InvalidParameter("working precision below 53 bits");
  const unsigned w = working_bits;
  const unsigned w2 = 2 * working_bits;
  RootSet out;
  out.precision_bits = w2;
  if (p.degree() == 0) return out;

  const Coeffs a = at_precision(p, w);
  const std::size_t n = a.size() - 1;
  mpf_class largest(0, w);
  for (const auto& c : a) largest = std::max(largest, mpf_class(abs(c)));
  mpf_class lead_floor = largest * unit_roundoff(w / 2);
  if (abs(a.back()) <= lead_floor)
    throw DegenerateLeadingCoefficient("leading coefficient is negligible against the coefficient norm");

  const mpf_class u = unit_roundoff(w);
  std::vector<BigComplex> z = initial_guesses(a, w);
  std::vector<bool> done(n, false);
  std::vector<mpf_class> noise(n, mpf_class(0, w)), residual(n, mpf_class(0, w));

  std::size_t remaining = n;
  for (unsigned iter = 0; iter < options.max_iterations && remaining > 0; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const Evaluation e = horner(a, z[i], u);
      residual[i] = e.value.abs();
      noise[i] = e.noise;
      if (residual[i] <= e.noise) {
        done[i] = true;
        --remaining;
        continue;
      }
      if (e.slope.norm() == 0) {
        z[i] = z[i] + BigComplex(mpf_class(1e-3, w), mpf_class(1e-3, w));
        continue;
      }
      const BigComplex newton = e.value / e.slope;
      BigComplex sum(w);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const BigComplex diff = z[i] - z[j];
        if (diff.norm() == 0) continue;
        sum = sum + BigComplex(mpf_class(1, w), mpf_class(0, w)) / diff;
      }
      const BigComplex denom = BigComplex(mpf_class(1, w), mpf_class(0, w)) - newton * sum;
      z[i] = z[i] - (denom.norm() == 0 ? newton : newton / denom);
    }
  }
  if (remaining > 0)
    throw NoConvergence(std::to_string(remaining) + " of " + std::to_string(n) +
                        " roots unconverged after " + std::to_string(options.max_iterations) +
                        " iterations");

  // Inclusion radii n * |p(z_i)| / |a_n prod_{j != i} (z_i - z_j)|.
  std::vector<mpf_class> radius(n, mpf_class(0, w));
  std::vector<bool> unbounded(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    mpf_class denom(abs(a.back()));
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) denom *= (z[i] - z[j]).abs();
    if (denom == 0) {
      unbounded[i] = true;
      continue;
    }
    radius[i] = mpf_class(std::max(residual[i], noise[i]) * static_cast<unsigned long>(n) / denom);
  }
  UnionFind clusters(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (unbounded[i] || unbounded[j] || (z[i] - z[j]).abs() <= radius[i] + radius[j])
        clusters.unite(i, j);

  const Coeffs a2 = at_precision(p, w2);
  const mpf_class u2 = unit_roundoff(w2);
  for (std::size_t head = 0; head < n; ++head) {
    if (clusters.find(head) != head) continue;
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (clusters.find(i) == head) members.push_back(i);
    const auto m = static_cast<unsigned>(members.size());

    BigComplex center(w2);
    for (auto i : members) center = center + z[i].with_precision(w2);
    center = center * mpf_class(mpf_class(1, w2) / m);

    const Coeffs q = derivative(a2, m - 1);
    BigComplex polished = center;
    for (int iter = 0; iter < 64; ++iter) {
      const Evaluation e = horner(q, polished, u2);
      if (e.slope.norm() == 0 || e.value.abs() <= e.noise) break;
      const BigComplex step = e.value / e.slope;
      polished = polished - step;
      if (step.abs() <= u2 * polished.abs() * 16) break;
    }

    Root root{polished, m, mpf_class(0, w2)};
    if (m == 1) {
      const std::size_t i = members.front();
      const Evaluation e = horner(a2, polished, u2);
      const bool stayed = !unbounded[i] && (polished - z[i].with_precision(w2)).abs() <= radius[i];
      if (stayed && e.slope.norm() != 0) {
        root.error_radius = mpf_class(std::max(e.value.abs(), e.noise) * static_cast<unsigned long>(n) / e.slope.abs());
        root.error_radius = std::min(root.error_radius, mpf_class(radius[i], w2));
      } else {
        root.value = z[i].with_precision(w2);
        root.error_radius = mpf_class(radius[i], w2);
      }
    } else {
      bool any_unbounded = false;
      for (auto i : members) any_unbounded = any_unbounded || unbounded[i];
      if (any_unbounded)
        throw NoConvergence("coincident root approximations without inclusion radius");
      mpf_class spread(0, w2);
      for (auto i : members) spread = std::max(spread, mpf_class((polished - z[i].with_precision(w2)).abs() + radius[i]));
      root.error_radius = spread;
    }
    out.roots.push_back(std::move(root));
  }
  return out;
}

}  // namespace spheremaps::sosdecomp
