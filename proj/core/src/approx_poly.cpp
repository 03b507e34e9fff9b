#include <spheremaps/errors.hpp>
#include <spheremaps/sosdecomp/approx_poly.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>

namespace spheremaps::sosdecomp {

ApproxPoly::ApproxPoly(std::vector<mpf_class> coeffs, unsigned precision_bits,
                       double coeff_error_bound)
    : precision_bits_(precision_bits), coeff_error_bound_(coeff_error_bound) {
  if (precision_bits < kMinPrecisionBits)
    throw InvalidParameter("precision_bits must be >= 53, got " +
                           std::to_string(precision_bits));
  if (!std::isfinite(coeff_error_bound) || coeff_error_bound < 0)
    throw InvalidParameter("coefficient error bound must be finite and >= 0");
  coeffs_.reserve(coeffs.size());
  for (auto& c : coeffs) coeffs_.emplace_back(c, precision_bits);
  trim();
}

ApproxPoly ApproxPoly::from_exact(const RatPoly& p, unsigned precision_bits) {
  std::vector<mpf_class> c;
  c.reserve(p.coefficients().size());
  for (const auto& q : p.coefficients()) c.emplace_back(q, precision_bits);
  return ApproxPoly(std::move(c), precision_bits);
}

void ApproxPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpf_class ApproxPoly::coeff(std::size_t power) const {
  return power < coeffs_.size() ? coeffs_[power] : mpf_class(0, precision_bits_);
}

RatPoly ApproxPoly::to_exact() const {
  std::vector<Rational> c;
  c.reserve(coeffs_.size());
  for (const auto& x : coeffs_) c.emplace_back(x);  // mpf values are dyadic
  return RatPoly(std::move(c));
}

double ApproxPoly::eval(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + it->get_d();
  return acc;
}

mpf_class ApproxPoly::eval(const mpf_class& t) const {
  mpf_class acc(0, std::max<unsigned>(precision_bits_, static_cast<unsigned>(t.get_prec())));
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

ApproxPoly ApproxPoly::with_precision(unsigned bits) const {
  return ApproxPoly(coeffs_, bits, coeff_error_bound_);
}

mpf_class unit_roundoff(unsigned bits) {
  mpf_class u(1, bits);
  mpf_div_2exp(u.get_mpf_t(), u.get_mpf_t(), bits);
  return u;
}

std::string to_decimal_string(const mpf_class& x, unsigned precision_bits) {
  if (x == 0) return "0";
  const auto digits = static_cast<std::size_t>(std::ceil(precision_bits * std::log10(2.0))) + 2;
  mp_exp_t exp = 0;
  std::unique_ptr<char, void (*)(void*)> raw(
      mpf_get_str(nullptr, &exp, 10, digits, x.get_mpf_t()), std::free);
  std::string mant(raw.get());
  std::string sign;
  if (!mant.empty() && mant.front() == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  // mpf_get_str yields 0.mant * 10^exp
  std::string out = sign + mant.substr(0, 1);
  if (mant.size() > 1) out += "." + mant.substr(1);
  out += "e" + std::to_string(static_cast<long>(exp) - 1);
  return out;
}

mpf_class parse_decimal(std::string_view text, unsigned precision_bits) {
  mpf_class x(0, precision_bits);
  if (text.empty() || x.set_str(std::string(text), 10) != 0)
    throw ParseError("malformed decimal '" + std::string(text) + "'");
  return x;
}

SerializedApproxPoly serialize(const ApproxPoly& p) {
  SerializedApproxPoly s;
  s.precision_bits = p.precision_bits();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", p.coeff_error_bound());
  s.coeff_error_bound = buf;
  for (const auto& c : p.coefficients())
    s.coefficients.push_back(to_decimal_string(c, p.precision_bits()));
  return s;
}

ApproxPoly deserialize(const SerializedApproxPoly& s) {
  std::vector<mpf_class> c;
  for (const auto& text : s.coefficients) c.push_back(parse_decimal(text, s.precision_bits));
  char* end = nullptr;
  const double bound = std::strtod(s.coeff_error_bound.c_str(), &end);
  if (s.coeff_error_bound.empty() || *end != '\0')
    throw ParseError("malformed coefficient error bound '" + s.coeff_error_bound + "'");
  return ApproxPoly(std::move(c), s.precision_bits, bound);
}

}  // namespace spheremaps::sosdecomp
