#include <spheremaps/exactpoly/sturm.hpp>

#include <algorithm>
#include <stdexcept>

namespace spheremaps::exactpoly {

namespace {

int sign_of(const Rational& q) { return sgn(q); }

int sign_at(const RatPoly& p, const ExtendedRational& x) {
  if (p.is_zero()) return 0;
  switch (x.kind) {
    case ExtendedRational::Kind::PosInf:
      return sign_of(p.leading());
    case ExtendedRational::Kind::NegInf:
      return sign_of(p.leading()) * (p.degree() % 2 == 0 ? 1 : -1);
    case ExtendedRational::Kind::Finite:
      break;
  }
  return sign_of(eval(p, x.value));
}

bool less(const ExtendedRational& a, const ExtendedRational& b) {
  using K = ExtendedRational::Kind;
  if (a.kind == K::PosInf || b.kind == K::NegInf) return false;
  if (a.kind == K::NegInf || b.kind == K::PosInf) return true;
  return a.value < b.value;
}

enum class Location { Outside, Boundary, Interior };

struct RootInfo {
  Rational lo, hi;  // isolating interval (lo, hi]
  unsigned multiplicity = 0;
  Location location = Location::Outside;
  bool rational = false;  // the root equals hi exactly
};

struct RootAnalysis {
  RatPoly squarefree;
  std::vector<RootInfo> roots;
  unsigned max_multiplicity = 0;
};

std::vector<Rational> domain_endpoints(const SignDomain& d) {
  switch (d.kind) {
    case SignDomain::Kind::AllReals:
      return {};
    case SignDomain::Kind::NonnegativeReals:
      return {Rational(0)};
    case SignDomain::Kind::ClosedInterval:
      return {d.lo, d.hi};
  }
  return {};
}

RootAnalysis analyze(const RatPoly& p, const SignDomain& domain) {
  RootAnalysis out;
  out.squarefree = squarefree_part(p);
  const auto factorization = squarefree_factorization(p);
  out.max_multiplicity = static_cast<unsigned>(factorization.factors.size());

  std::vector<SturmSequence> factor_chains;
  factor_chains.reserve(factorization.factors.size());
  for (const auto& f : factorization.factors) factor_chains.emplace_back(
      f.degree() > 0 ? f : RatPoly::constant(1));

  const auto endpoints = domain_endpoints(domain);
  for (const auto& [lo, hi] : isolate_real_roots(out.squarefree, endpoints)) {
    RootInfo info{lo, hi};
    const Interval iv{ExtendedRational::finite(lo), ExtendedRational::finite(hi)};
    for (std::size_t i = 0; i < factor_chains.size(); ++i) {
      if (factorization.factors[i].degree() > 0 && factor_chains[i].count(iv) == 1) {
        info.multiplicity = static_cast<unsigned>(i + 1);
        break;
      }
    }
    info.rational = eval(out.squarefree, hi) == 0;
    const bool at_endpoint =
        info.rational && std::find(endpoints.begin(), endpoints.end(), hi) != endpoints.end();
    if (at_endpoint) {
      info.location = Location::Boundary;
    } else {
      // The interval lies strictly between consecutive split points.
      Rational mid = (lo + hi) / 2;
      info.location = domain.in_interior(mid) ? Location::Interior : Location::Outside;
    }
    out.roots.push_back(std::move(info));
  }
  return out;
}

std::vector<MultiplicityCount> tally(const RootAnalysis& a) {
  std::vector<MultiplicityCount> counts;
  for (unsigned m = 1; m <= a.max_multiplicity; ++m) {
    MultiplicityCount c{m, 0, 0};
    for (const auto& r : a.roots) {
      if (r.multiplicity != m) continue;
      if (r.location != Location::Outside) ++c.roots_in_domain;
      if (r.location == Location::Interior) ++c.roots_in_interior;
    }
    if (c.roots_in_domain > 0) counts.push_back(c);
  }
  return counts;
}

std::size_t roots_in_domain(const RootAnalysis& a) {
  return static_cast<std::size_t>(std::count_if(a.roots.begin(), a.roots.end(), [](const RootInfo& r) {
    return r.location != Location::Outside;
  }));
}

std::optional<Rational> domain_lower(const SignDomain& d) {
  if (d.kind == SignDomain::Kind::AllReals) return std::nullopt;
  return d.kind == SignDomain::Kind::NonnegativeReals ? Rational(0) : d.lo;
}

std::optional<Rational> domain_upper(const SignDomain& d) {
  if (d.kind != SignDomain::Kind::ClosedInterval) return std::nullopt;
  return d.hi;
}

std::size_t count_in(const SturmSequence& s, const Rational& lo, const Rational& hi) {
  return s.count({ExtendedRational::finite(lo), ExtendedRational::finite(hi)});
}

// A non-root point of the domain interior.
Rational pick_sample(const RatPoly& p, const SignDomain& domain) {
  std::vector<Rational> candidates;
  if (domain.kind == SignDomain::Kind::ClosedInterval) {
    const Rational width = domain.hi - domain.lo;
    for (int denom = 2; denom <= 1 << 12; denom *= 2)
      for (int j = 1; j < denom; j += 2)
        candidates.push_back(domain.lo + width * Rational(j, denom));
  } else {
    for (int m = 0; m <= 4 * (p.degree() + 2); ++m) {
      candidates.push_back(Rational(m, 2));
      candidates.push_back(Rational(-m, 2));
    }
  }
  for (auto& c : candidates) {
    c.canonicalize();
    if (domain.in_interior(c) && eval(p, c) != 0) return c;
  }
  throw std::logic_error("no non-root sample found");
}

// A domain point where p < 0 near an interior root of odd multiplicity.
Rational negative_point_near(const RatPoly& p, const RatPoly& squarefree,
                             const SignDomain& domain, RootInfo root) {
  const SturmSequence chain(squarefree);
  std::optional<Rational> exact_root;
  std::optional<Rational> left, right;
  if (root.rational) {
    exact_root = root.hi;
  } else {
    right = root.hi;
    Rational lo = root.lo, hi = root.hi;
    while (!left) {
      Rational m = (lo + hi) / 2;
      if (count_in(chain, lo, m) == 0) {
        left = m;
      } else if (eval(squarefree, m) == 0) {
        exact_root = m;
        break;
      } else {
        hi = m;
      }
    }
  }
  if (exact_root) {
    const Rational r = *exact_root;
    const auto up = domain_upper(domain);
    const auto down = domain_lower(domain);
    Rational dr = up ? std::min(Rational(1), Rational(*up - r)) / 2 : Rational(1);
    while (count_in(chain, r, r + dr) > 0) dr /= 2;
    right = r + dr;
    Rational dl = down ? std::min(Rational(1), Rational(r - *down)) / 2 : Rational(1);
    while (count_in(chain, r - dl, r) > 1 || eval(squarefree, r - dl) == 0) dl /= 2;
    left = r - dl;
  }
  for (const auto& c : {*left, *right}) {
    if (domain.contains(c) && eval(p, c) < 0) return c;
  }
  throw std::logic_error("odd-multiplicity root without sign change");
}

// Approximates a root to within 2^-64; the flag reports whether it is exact.
std::pair<Rational, bool> approximate_root(const RatPoly& squarefree, RootInfo root) {
  if (root.rational) return {root.hi, true};
  const SturmSequence chain(squarefree);
  const Rational eps(Integer(1), Integer(1) << 64);
  Rational lo = root.lo, hi = root.hi;
  while (hi - lo > eps) {
    Rational m = (lo + hi) / 2;
    if (eval(squarefree, m) == 0) return {m, true};
    if (count_in(chain, lo, m) == 1)
      hi = m;
    else
      lo = m;
  }
  return {(lo + hi) / 2, false};
}

bool satisfies_claim(SignClaim claim, std::size_t root_count,
                     const std::vector<MultiplicityCount>& counts, int sample_sign) {
  if (sample_sign <= 0) return false;
  if (claim == SignClaim::StrictlyPositive) return root_count == 0;
  return std::all_of(counts.begin(), counts.end(), [](const MultiplicityCount& c) {
    return c.multiplicity % 2 == 0 || c.roots_in_interior == 0;
  });
}

}  // namespace

std::string ExtendedRational::to_string() const {
  switch (kind) {
    case Kind::NegInf:
      return "-inf";
    case Kind::PosInf:
      return "+inf";
    case Kind::Finite:
      break;
  }
  return exactpoly::to_string(value);
}

RatPoly squarefree_part(const RatPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("square-free part of the zero polynomial");
  if (p.degree() == 0) return RatPoly::constant(1);
  RatPoly q = exact_quotient(p, gcd(p, p.derivative())).primitive();
  if (q.leading() < 0) q = -q;
  return q;
}

SquarefreeFactorization squarefree_factorization(const RatPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("factorization of the zero polynomial");
  SquarefreeFactorization out{p.leading(), {}};
  const RatPoly g = p.monic();
  if (g.degree() == 0) return out;
  RatPoly a = gcd(g, g.derivative());
  RatPoly b = exact_quotient(g, a);
  RatPoly c = exact_quotient(g.derivative(), a);
  RatPoly d = c - b.derivative();
  while (b.degree() > 0) {
    a = gcd(b, d);
    out.factors.push_back(a);
    b = exact_quotient(b, a);
    c = exact_quotient(d, a);
    d = c - b.derivative();
  }
  while (!out.factors.empty() && out.factors.back().degree() <= 0) out.factors.pop_back();
  return out;
}

SturmSequence::SturmSequence(const RatPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("Sturm sequence of the zero polynomial");
  if (p.degree() > 0 && gcd(p, p.derivative()).degree() > 0)
    throw NotSquareFree(p.to_string());
  chain_.push_back(p.primitive());
  if (p.degree() == 0) return;
  chain_.push_back(p.derivative().primitive());
  while (chain_.back().degree() > 0) {
    RatPoly r = -divmod(chain_[chain_.size() - 2], chain_.back()).second;
    if (r.is_zero()) break;
    chain_.push_back(r.primitive());
  }
}

std::size_t SturmSequence::sign_variations(const ExtendedRational& x) const {
  std::size_t variations = 0;
  int previous = 0;
  for (const auto& q : chain_) {
    const int s = sign_at(q, x);
    if (s == 0) continue;
    if (previous != 0 && s != previous) ++variations;
    previous = s;
  }
  return variations;
}

std::size_t SturmSequence::count(const Interval& interval) const {
  if (!less(interval.lo, interval.hi)) return 0;
  const auto a = sign_variations(interval.lo);
  const auto b = sign_variations(interval.hi);
  return a >= b ? a - b : 0;
}

std::size_t sturm_root_count(const RatPoly& p, const Interval& interval) {
  return SturmSequence(p).count(interval);
}

Rational cauchy_root_bound(const RatPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("root bound of the zero polynomial");
  Rational m = 0;
  const Rational lead = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = abs(p.coefficients()[static_cast<std::size_t>(i)]) / lead;
    if (r > m) m = r;
  }
  return m + 1;
}

std::vector<std::pair<Rational, Rational>> isolate_real_roots(
    const RatPoly& p, const std::vector<Rational>& split_points) {
  const SturmSequence chain(p);
  std::vector<std::pair<Rational, Rational>> out;
  if (p.degree() <= 0) return out;
  Rational bound = cauchy_root_bound(p);
  for (const auto& s : split_points) bound = std::max(bound, Rational(abs(s) + 1));
  std::vector<Rational> cuts{-bound};
  for (const auto& s : split_points) cuts.push_back(s);
  cuts.push_back(bound);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<std::pair<Rational, Rational>> stack;
  for (std::size_t i = cuts.size() - 1; i > 0; --i) stack.emplace_back(cuts[i - 1], cuts[i]);
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    const auto n = count_in(chain, lo, hi);
    if (n == 0) continue;
    if (n == 1) {
      out.emplace_back(lo, hi);
      continue;
    }
    Rational mid = (lo + hi) / 2;
    stack.emplace_back(mid, hi);
    stack.emplace_back(lo, mid);
  }
  return out;
}

SignDomain SignDomain::closed(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw InvalidParameter("closed interval needs lo < hi");
  return {Kind::ClosedInterval, lo, hi};
}

bool SignDomain::contains(const Rational& x) const {
  switch (kind) {
    case Kind::AllReals:
      return true;
    case Kind::NonnegativeReals:
      return x >= 0;
    case Kind::ClosedInterval:
      return lo <= x && x <= hi;
  }
  return false;
}

bool SignDomain::in_interior(const Rational& x) const {
  switch (kind) {
    case Kind::AllReals:
      return true;
    case Kind::NonnegativeReals:
      return x > 0;
    case Kind::ClosedInterval:
      return lo < x && x < hi;
  }
  return false;
}

std::string SignDomain::to_string() const {
  switch (kind) {
    case Kind::AllReals:
      return "all-reals";
    case Kind::NonnegativeReals:
      return "nonnegative-reals";
    case Kind::ClosedInterval:
      return "[" + exactpoly::to_string(lo) + ", " + exactpoly::to_string(hi) + "]";
  }
  return "";
}

std::string to_string(SignClaim claim) {
  return claim == SignClaim::StrictlyPositive ? "strictly-positive" : "nonnegative";
}

ClaimFalse::ClaimFalse(Rational witness, bool exact)
    : Error("ClaimFalse", std::string("claim fails ") + (exact ? "at " : "near ") +
                              exactpoly::to_string(witness)),
      witness_(std::move(witness)),
      exact_(exact) {}

PositivityCertificate certify_sign(const RatPoly& p, const SignDomain& domain,
                                   SignClaim claim) {
  if (p.is_zero()) throw ZeroPolynomial("sign of the zero polynomial");
  const RootAnalysis a = analyze(p, domain);

  // Odd multiplicity in the interior: p is negative on one side.
  for (const auto& r : a.roots) {
    if (r.location == Location::Interior && r.multiplicity % 2 == 1)
      throw ClaimFalse(negative_point_near(p, a.squarefree, domain, r), true);
  }
  if (claim == SignClaim::StrictlyPositive) {
    for (const auto& r : a.roots) {
      if (r.location == Location::Outside) continue;
      auto [w, exact] = approximate_root(a.squarefree, r);
      throw ClaimFalse(w, exact);
    }
  }

  PositivityCertificate cert;
  cert.polynomial = p;
  cert.domain = domain;
  cert.claim = claim;
  cert.squarefree_root_count = roots_in_domain(a);
  cert.multiplicities = tally(a);
  cert.sample = pick_sample(p, domain);
  cert.sample_sign = sign_of(eval(p, cert.sample));
  if (cert.sample_sign < 0) throw ClaimFalse(cert.sample, true);
  return cert;
}

bool PositivityCertificate::recheck() const {
  if (polynomial.is_zero()) return false;
  if (!domain.in_interior(sample)) return false;
  if (sign_of(eval(polynomial, sample)) != sample_sign) return false;
  const RootAnalysis a = analyze(polynomial, domain);
  const auto counts = tally(a);
  if (roots_in_domain(a) != squarefree_root_count) return false;
  if (counts.size() != multiplicities.size()) return false;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i].multiplicity != multiplicities[i].multiplicity ||
        counts[i].roots_in_domain != multiplicities[i].roots_in_domain ||
        counts[i].roots_in_interior != multiplicities[i].roots_in_interior)
      return false;
  }
  return satisfies_claim(claim, squarefree_root_count, multiplicities, sample_sign);
}

}  // namespace spheremaps::exactpoly
