#include <spheremaps/errors.hpp>
#include <spheremaps/exactpoly/taylor.hpp>

namespace spheremaps::exactpoly {

Rational taylor_coeff(unsigned j) {
  // a_j = a_{j-1} * (2j - 1) / (2j)
  Rational a = 1;
  for (unsigned i = 1; i <= j; ++i) a *= Rational(2 * i - 1, 2 * i);
  a.canonicalize();
  return a;
}

RatPoly phi(unsigned ell) {
  std::vector<Rational> c(ell + 1);
  c[0] = 1;
  for (unsigned j = 1; j <= ell; ++j) {
    c[j] = c[j - 1] * Rational(2 * j - 1, 2 * j);
    c[j].canonicalize();
  }
  return RatPoly(std::move(c));
}

RatPoly lambda(unsigned ell) {
  const RatPoly p = phi(ell);
  RatPoly lhs = RatPoly{-1, 1} * p * p + RatPoly::constant(1);
  RatPoly q = lhs.divide_by_power_of_t(ell + 1);
  if (q.degree() != static_cast<int>(ell))
    throw NonExactDivision("quotient has degree " + std::to_string(q.degree()) +
                           ", expected " + std::to_string(ell));
  return q;
}

}  // namespace spheremaps::exactpoly
