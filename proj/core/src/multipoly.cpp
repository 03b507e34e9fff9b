#include <spheremaps/errors.hpp>
#include <spheremaps/mapforge/multipoly.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace spheremaps::mapforge {

namespace {

unsigned total(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

}  // namespace

MultiPoly::MultiPoly(std::size_t num_vars, unsigned precision_bits)
    : num_vars_(num_vars), precision_bits_(precision_bits) {}

MultiPoly MultiPoly::constant(std::size_t num_vars, const mpf_class& c, unsigned precision_bits) {
  MultiPoly p(num_vars, precision_bits);
  p.add_term(Exponents(num_vars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t num_vars, std::size_t index, unsigned precision_bits) {
  if (index >= num_vars) throw DimensionMismatch("variable index out of range");
  MultiPoly p(num_vars, precision_bits);
  Exponents e(num_vars, 0);
  e[index] = 1;
  p.add_term(e, mpf_class(1, precision_bits));
  return p;
}

void MultiPoly::add_term(const Exponents& e, const mpf_class& c) {
  if (e.size() != num_vars_)
    throw DimensionMismatch("exponent vector of length " + std::to_string(e.size()) + " in " +
                            std::to_string(num_vars_) + " variables");
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, mpf_class(c, precision_bits_));
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

int MultiPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(total(e)));
  return d;
}

std::vector<unsigned> MultiPoly::monomial_degrees() const {
  std::set<unsigned> s;
  for (const auto& [e, c] : terms_) s.insert(total(e));
  return {s.begin(), s.end()};
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.num_vars_ != num_vars_) throw DimensionMismatch("adding polynomials in different variables");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (o.num_vars_ != num_vars_) throw DimensionMismatch("subtracting polynomials in different variables");
  for (const auto& [e, c] : o.terms_) add_term(e, mpf_class(-c));
  return *this;
}

MultiPoly& MultiPoly::operator*=(const mpf_class& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.num_vars_ != b.num_vars_) throw DimensionMismatch("multiplying polynomials in different variables");
  MultiPoly out(a.num_vars_, std::max(a.precision_bits_, b.precision_bits_));
  Exponents e(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, mpf_class(ca * cb, out.precision_bits_));
    }
  }
  return out;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(num_vars_, mpf_class(1, precision_bits_), precision_bits_);
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::derivative(std::size_t index) const {
  if (index >= num_vars_) throw DimensionMismatch("derivative index out of range");
  MultiPoly out(num_vars_, precision_bits_);
  for (const auto& [e, c] : terms_) {
    if (e[index] == 0) continue;
    Exponents d = e;
    --d[index];
    out.add_term(d, mpf_class(c * e[index], precision_bits_));
  }
  return out;
}

MultiPoly MultiPoly::embed(std::size_t num_vars, std::size_t offset) const {
  if (offset + num_vars_ > num_vars) throw DimensionMismatch("embedding does not fit");
  MultiPoly out(num_vars, precision_bits_);
  for (const auto& [e, c] : terms_) {
    Exponents w(num_vars, 0);
    std::copy(e.begin(), e.end(), w.begin() + static_cast<std::ptrdiff_t>(offset));
    out.add_term(w, c);
  }
  return out;
}

mpf_class MultiPoly::eval(const std::vector<mpf_class>& x, unsigned bits) const {
  if (x.size() != num_vars_) throw DimensionMismatch("point has wrong dimension");
  mpf_class sum(0, bits), term(0, bits), xp(0, bits);
  for (const auto& [e, c] : terms_) {
    term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      mpf_pow_ui(xp.get_mpf_t(), mpf_class(x[i], bits).get_mpf_t(), e[i]);
      term *= xp;
    }
    sum += term;
  }
  return sum;
}

double MultiPoly::eval(const std::vector<double>& x) const {
  if (x.size() != num_vars_) throw DimensionMismatch("point has wrong dimension");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i)
      for (unsigned j = 0; j < e[i]; ++j) term *= x[i];
    sum += term;
  }
  return sum;
}

bool HomogeneousMap::structurally_homogeneous() const {
  if (!declared_degree || *declared_degree < 0) return false;
  const auto d = static_cast<unsigned>(*declared_degree);
  for (const auto& c : components) {
    if (c.num_vars() != input_dim) return false;
    for (const auto& [e, coeff] : c.terms())
      if (total(e) != d) return false;
  }
  return components.size() == output_dim;
}

std::size_t HomogeneousMap::term_count() const {
  std::size_t n = 0;
  for (const auto& c : components) n += c.size();
  return n;
}

std::vector<double> HomogeneousMap::eval(const std::vector<double>& x) const {
  std::vector<double> out;
  out.reserve(components.size());
  for (const auto& c : components) out.push_back(c.eval(x));
  return out;
}

std::vector<mpf_class> HomogeneousMap::eval(const std::vector<mpf_class>& x, unsigned bits) const {
  std::vector<mpf_class> out;
  out.reserve(components.size());
  for (const auto& c : components) out.push_back(c.eval(x, bits));
  return out;
}

CompiledMap::CompiledMap(const HomogeneousMap& map)
    : input_dim_(map.input_dim), output_dim_(map.components.size()) {
  for (std::size_t k = 0; k < map.components.size(); ++k) {
    if (map.components[k].num_vars() != input_dim_)
      throw DimensionMismatch("component " + std::to_string(k) + " has wrong number of variables");
    for (const auto& [e, c] : map.components[k].terms()) {
      terms_.push_back({k, c.get_d(), exps_.size()});
      exps_.insert(exps_.end(), e.begin(), e.end());
      for (unsigned v : e) max_exp_ = std::max(max_exp_, v);
    }
  }
}

void CompiledMap::fill_powers(const double* x, std::vector<double>& powers) const {
  const std::size_t stride = max_exp_ + 1;
  powers.assign(input_dim_ * stride, 1.0);
  for (std::size_t i = 0; i < input_dim_; ++i)
    for (std::size_t j = 1; j < stride; ++j) powers[i * stride + j] = powers[i * stride + j - 1] * x[i];
}

void CompiledMap::eval(const double* x, double* out) const {
  std::vector<double> powers;
  fill_powers(x, powers);
  const std::size_t stride = max_exp_ + 1;
  std::fill(out, out + output_dim_, 0.0);
  for (const auto& t : terms_) {
    double v = t.coeff;
    for (std::size_t i = 0; i < input_dim_; ++i) v *= powers[i * stride + exps_[t.exps + i]];
    out[t.component] += v;
  }
}

std::vector<double> CompiledMap::eval(const std::vector<double>& x) const {
  if (x.size() != input_dim_) throw DimensionMismatch("point has wrong dimension");
  std::vector<double> out(output_dim_);
  eval(x.data(), out.data());
  return out;
}

void CompiledMap::eval_with_jacobian(const double* x, double* out, double* jac) const {
  std::vector<double> powers;
  fill_powers(x, powers);
  const std::size_t stride = max_exp_ + 1;
  std::fill(out, out + output_dim_, 0.0);
  std::fill(jac, jac + output_dim_ * input_dim_, 0.0);
  std::vector<double> prefix(input_dim_ + 1), suffix(input_dim_ + 1);
  for (const auto& t : terms_) {
    const unsigned* e = &exps_[t.exps];
    prefix[0] = 1.0;
    for (std::size_t i = 0; i < input_dim_; ++i) prefix[i + 1] = prefix[i] * powers[i * stride + e[i]];
    suffix[input_dim_] = 1.0;
    for (std::size_t i = input_dim_; i-- > 0;) suffix[i] = suffix[i + 1] * powers[i * stride + e[i]];
    out[t.component] += t.coeff * prefix[input_dim_];
    double* row = jac + t.component * input_dim_;
    for (std::size_t i = 0; i < input_dim_; ++i) {
      if (e[i] == 0) continue;
      row[i] += t.coeff * e[i] * prefix[i] * powers[i * stride + e[i] - 1] * suffix[i + 1];
    }
  }
}

}  // namespace spheremaps::mapforge
