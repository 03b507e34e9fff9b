#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <string>

namespace spheremaps::sosdecomp {

/// Complex number over GMP floats. Arithmetic results take the larger of the
/// operand precisions.
struct BigComplex {
  mpf_class re;
  mpf_class im;

  explicit BigComplex(unsigned precision_bits = 64)
      : re(0, precision_bits), im(0, precision_bits) {}
  BigComplex(const mpf_class& r, const mpf_class& i) : re(r), im(i) {}

  unsigned precision() const {
    return static_cast<unsigned>(std::max(re.get_prec(), im.get_prec()));
  }
  BigComplex with_precision(unsigned bits) const {
    return {mpf_class(re, bits), mpf_class(im, bits)};
  }

  BigComplex conj() const { return {re, mpf_class(-im)}; }
  mpf_class norm() const { return mpf_class(re * re + im * im); }
  mpf_class abs() const { return mpf_class(sqrt(norm())); }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {mpf_class(a.re + b.re), mpf_class(a.im + b.im)};
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {mpf_class(a.re - b.re), mpf_class(a.im - b.im)};
  }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {mpf_class(a.re * b.re - a.im * b.im), mpf_class(a.re * b.im + a.im * b.re)};
  }
  friend BigComplex operator*(const BigComplex& a, const mpf_class& s) {
    return {mpf_class(a.re * s), mpf_class(a.im * s)};
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    const mpf_class d = b.norm();
    return {mpf_class((a.re * b.re + a.im * b.im) / d),
            mpf_class((a.im * b.re - a.re * b.im) / d)};
  }
};

}  // namespace spheremaps::sosdecomp
