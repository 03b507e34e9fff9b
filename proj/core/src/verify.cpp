#include <spheremaps/bundle/verify.hpp>
#include <spheremaps/errors.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace spheremaps::bundle {

using mapforge::CompiledMap;
using mapforge::Domain;
using mapforge::Point;

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

double norm_sq_deviation(const Point& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::abs(s - 1.0);
}

double max_diff(const Point& a, const Point& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  if (a.size() != b.size()) d = INFINITY;
  return d;
}

// A NaN measurement never passes.
bool within(double measured, double threshold) { return measured <= threshold; }

CheckRecord failed_with(const std::string& name, double threshold, const Error& e) {
  return {name, false, NAN, threshold, e.what()};
}

CheckRecord montecarlo_check(const mapforge::SphereMapA& m, const VerifyOptions& o) {
  constexpr std::uint64_t kMaxSamples = 1000000;
  std::uint64_t samples = std::min(o.montecarlo_samples, kMaxSamples);
  for (;;) {
    try {
      const auto e = degreelab::montecarlo_degree(m, {samples, o.seed, o.workers});
      if (e.error_estimate <= 0.5 || samples >= kMaxSamples) {
        const bool covers = std::abs(e.value - m.k) <= e.error_estimate;
        return {"degree_montecarlo", covers && e.error_estimate <= 0.5, e.value, e.error_estimate,
                "estimate " + fmt(e.value) + " +- " + fmt(e.error_estimate) + " (95%) from " +
                    std::to_string(samples) + " samples, target " + std::to_string(m.k)};
      }
    } catch (const InsufficientSamples& ex) {
      if (samples >= kMaxSamples) return failed_with("degree_montecarlo", 0.5, ex);
    }
    samples = std::min(samples * 2, kMaxSamples);
  }
}

}  // namespace

bool VerificationReport::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const CheckRecord* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << " measured=" << fmt(c.measured)
       << " threshold=" << fmt(c.threshold);
    if (!c.detail.empty()) os << "  " << c.detail;
    os << "\n";
  }
  os << "overall: " << (passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

VerificationReport verify(const MapBundle& b, const VerifyOptions& o) {
  VerificationReport report;
  auto& checks = report.checks;
  const bool a = b.is_variant_a();
  const int target = b.target_degree();
  const int n = a ? b.map_a().n : b.map_b().n;
  const int r = a ? 0 : b.map_b().r;

  // identity residual, recomputed from the stored polynomials
  {
    double res;
    if (a) {
      const auto& t = b.map_a().triple;
      res = sosdecomp::corollary_identity_residual(t.k, t.alpha, t.beta1, t.beta2);
    } else {
      const auto& t = b.map_b().triple;
      res = sosdecomp::partb_identity_residual(t.ktilde, t.alpha_tilde, t.beta1_tilde, t.beta2_tilde);
    }
    checks.push_back({"identity_residual", within(res, o.identity_tolerance), res, o.identity_tolerance,
                      "stored " + fmt(b.identity_residual())});
  }

  // sampled sphere preservation and agreement of the explicit forms
  const Domain domain = a ? Domain::sphere(n) : Domain::squashed(n, r);
  const auto points = mapforge::sample_domain(domain, o.samples, o.seed);
  std::optional<CompiledMap> expanded, homogenized;
  if (b.expanded) expanded.emplace(*b.expanded);
  if (b.homogenized) homogenized.emplace(*b.homogenized);
  double sphere_dev = 0.0, expansion_dev = 0.0;
  std::string worst = "structured";
  for (const auto& p : points) {
    const Point f = a ? mapforge::evaluate_a(b.map_a(), p) : mapforge::evaluate_b(b.map_b(), p);
    auto track = [&](const Point& v, const char* form) {
      const double d = norm_sq_deviation(v);
      if (!(d <= sphere_dev)) {
        sphere_dev = std::isnan(d) ? INFINITY : d;
        worst = form;
      }
    };
    track(f, "structured");
    if (expanded) {
      const Point e = expanded->eval(p);
      track(e, "expanded");
      expansion_dev = std::max(expansion_dev, max_diff(f, e));
    }
    if (homogenized) {
      const Point h = homogenized->eval(p);
      track(h, "homogenized");
      expansion_dev = std::max(expansion_dev, max_diff(f, h));
    }
  }
  checks.push_back({"sphere_preservation", within(sphere_dev, o.tolerance), sphere_dev, o.tolerance,
                    "sup |‖F‖^2 - 1| over " + std::to_string(points.size()) + " points of " +
                        domain.to_string() + ", worst form " + worst});
  if (expanded || homogenized)
    checks.push_back({"expansion_consistency", within(expansion_dev, o.tolerance), expansion_dev, o.tolerance,
                      "sup difference between structured and explicit forms"});

  if (b.homogenized) {
    const int want = b.map_a().algebraic_degree();
    const auto& h = *b.homogenized;
    const bool ok = h.structurally_homogeneous() && h.declared_degree == want;
    checks.push_back({"structural_homogeneity", ok, h.declared_degree ? double(*h.declared_degree) : NAN,
                      double(want), std::to_string(h.term_count()) + " terms"});
  }

  // degree evidence
  if (a || r == 1) {
    try {
      const auto cert = a ? degreelab::equator_certificate(b.map_a()) : degreelab::equator_certificate(b.map_b());
      bool ok = cert.degree == target && cert.alpha_certificate.recheck();
      std::string detail = "winding " + std::to_string(cert.winding) + ", alpha > 0 on R certified";
      if (b.certificate && b.certificate->degree != cert.degree) {
        ok = false;
        detail += ", stored degree " + std::to_string(b.certificate->degree) + " disagrees";
      }
      checks.push_back({"equator_certificate", ok, double(cert.degree), double(target), detail});
    } catch (const Error& e) {
      checks.push_back(failed_with("equator_certificate", target, e));
    }
  }
  if (n == 2 && (a || r == 1)) {
    try {
      const auto e = a ? degreelab::integral_degree(b.map_a(), o.grid) : degreelab::integral_degree(b.map_b(), o.grid);
      const double dev = std::abs(e.value - target);
      checks.push_back({"degree_integral", within(dev, o.integral_tolerance), dev, o.integral_tolerance,
                        "integral " + fmt(e.value) + " on grid " + std::to_string(o.grid.polar) + "x" +
                            std::to_string(o.grid.azimuthal) + ", target " + std::to_string(target)});
    } catch (const Error& e) {
      checks.push_back(failed_with("degree_integral", o.integral_tolerance, e));
    }
  } else if (a && n >= 4) {
    checks.push_back(montecarlo_check(b.map_a(), o));
  }
  return report;
}

}  // namespace spheremaps::bundle
