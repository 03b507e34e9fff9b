#include <spheremaps/bundle/bundle.hpp>
#include <spheremaps/errors.hpp>
#include <spheremaps/version.hpp>

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>

namespace spheremaps::bundle {

using json = nlohmann::json;
using exactpoly::PositivityCertificate;
using exactpoly::RatPoly;
using exactpoly::SignClaim;
using exactpoly::SignDomain;
using mapforge::HomogeneousMap;
using mapforge::MultiPoly;
using sosdecomp::ApproxPoly;

namespace {

constexpr unsigned kDoubleBits = 53;

std::string double_string(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json tagged(double x) { return {{"value", double_string(x)}, {"precision_bits", kDoubleBits}}; }

double untag(const json& j) {
  const auto s = j.at("value").get<std::string>();
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw ParseError("bad float string '" + s + "'");
  return v;
}

json rat_poly_json(const RatPoly& p) { return exactpoly::serialize(p); }
RatPoly rat_poly_from(const json& j) { return exactpoly::parse_rat_poly(j.get<std::vector<std::string>>()); }

json approx_json(const ApproxPoly& p) {
  const auto s = sosdecomp::serialize(p);
  return {{"precision_bits", s.precision_bits}, {"coeff_error_bound", s.coeff_error_bound},
          {"coefficients", s.coefficients}};
}

ApproxPoly approx_from(const json& j) {
  sosdecomp::SerializedApproxPoly s;
  s.precision_bits = j.at("precision_bits").get<unsigned>();
  s.coeff_error_bound = j.at("coeff_error_bound").get<std::string>();
  s.coefficients = j.at("coefficients").get<std::vector<std::string>>();
  return sosdecomp::deserialize(s);
}

std::string domain_kind(SignDomain::Kind k) {
  switch (k) {
    case SignDomain::Kind::AllReals: return "all_reals";
    case SignDomain::Kind::NonnegativeReals: return "nonnegative_reals";
    default: return "closed";
  }
}

json certificate_json(const PositivityCertificate& c) {
  json mult = json::array();
  for (const auto& m : c.multiplicities)
    mult.push_back({{"multiplicity", m.multiplicity},
                    {"roots_in_domain", m.roots_in_domain},
                    {"roots_in_interior", m.roots_in_interior}});
  json domain = {{"kind", domain_kind(c.domain.kind)}};
  if (c.domain.kind == SignDomain::Kind::ClosedInterval) {
    domain["lo"] = exactpoly::to_string(c.domain.lo);
    domain["hi"] = exactpoly::to_string(c.domain.hi);
  }
  return {{"polynomial", rat_poly_json(c.polynomial)},
          {"domain", domain},
          {"claim", c.claim == SignClaim::StrictlyPositive ? "strictly_positive" : "nonnegative"},
          {"squarefree_root_count", c.squarefree_root_count},
          {"sample", exactpoly::to_string(c.sample)},
          {"sample_sign", c.sample_sign},
          {"multiplicities", mult}};
}

PositivityCertificate certificate_from(const json& j) {
  PositivityCertificate c;
  c.polynomial = rat_poly_from(j.at("polynomial"));
  const auto& d = j.at("domain");
  const auto kind = d.at("kind").get<std::string>();
  if (kind == "all_reals") {
    c.domain = SignDomain::all_reals();
  } else if (kind == "nonnegative_reals") {
    c.domain = SignDomain::nonnegative_reals();
  } else if (kind == "closed") {
    c.domain = SignDomain::closed(exactpoly::parse_rational(d.at("lo").get<std::string>()),
                                  exactpoly::parse_rational(d.at("hi").get<std::string>()));
  } else {
    throw ParseError("unknown sign domain '" + kind + "'");
  }
  const auto claim = j.at("claim").get<std::string>();
  if (claim != "strictly_positive" && claim != "nonnegative") throw ParseError("unknown sign claim '" + claim + "'");
  c.claim = claim == "strictly_positive" ? SignClaim::StrictlyPositive : SignClaim::Nonnegative;
  c.squarefree_root_count = j.at("squarefree_root_count").get<std::size_t>();
  c.sample = exactpoly::parse_rational(j.at("sample").get<std::string>());
  c.sample_sign = j.at("sample_sign").get<int>();
  for (const auto& m : j.at("multiplicities"))
    c.multiplicities.push_back({m.at("multiplicity").get<unsigned>(), m.at("roots_in_domain").get<std::size_t>(),
                                m.at("roots_in_interior").get<std::size_t>()});
  return c;
}

unsigned map_precision(const HomogeneousMap& m) {
  unsigned bits = sosdecomp::kMinPrecisionBits;
  for (const auto& c : m.components) bits = std::max(bits, c.precision_bits());
  return bits;
}

json map_json(const HomogeneousMap& m) {
  const unsigned bits = map_precision(m);
  json comps = json::array();
  for (const auto& c : m.components) {
    json terms = json::array();
    for (const auto& [e, coeff] : c.terms())
      terms.push_back({{"exponents", e}, {"coefficient", sosdecomp::to_decimal_string(coeff, bits)}});
    comps.push_back(terms);
  }
  return {{"input_dim", m.input_dim},
          {"output_dim", m.output_dim},
          {"declared_degree", m.declared_degree ? json(*m.declared_degree) : json(nullptr)},
          {"precision_bits", bits},
          {"components", comps}};
}

HomogeneousMap map_from(const json& j) {
  HomogeneousMap m;
  m.input_dim = j.at("input_dim").get<std::size_t>();
  m.output_dim = j.at("output_dim").get<std::size_t>();
  if (!j.at("declared_degree").is_null()) m.declared_degree = j.at("declared_degree").get<int>();
  const auto bits = j.at("precision_bits").get<unsigned>();
  if (bits < sosdecomp::kMinPrecisionBits) throw ParseError("precision_bits below 53");
  for (const auto& comp : j.at("components")) {
    MultiPoly p(m.input_dim, bits);
    for (const auto& t : comp) {
      const auto e = t.at("exponents").get<mapforge::Exponents>();
      if (e.size() != m.input_dim) throw ParseError("exponent vector has the wrong length");
      p.add_term(e, sosdecomp::parse_decimal(t.at("coefficient").get<std::string>(), bits));
    }
    m.components.push_back(std::move(p));
  }
  if (m.components.size() != m.output_dim) throw ParseError("component count differs from output_dim");
  return m;
}

json degree_certificate_json(const degreelab::DegreeCertificate& c) {
  return {{"method", c.method},
          {"degree", c.degree},
          {"winding", c.winding},
          {"assumption", c.assumption},
          {"alpha_certificate", certificate_json(c.alpha_certificate)}};
}

degreelab::DegreeCertificate degree_certificate_from(const json& j) {
  degreelab::DegreeCertificate c;
  c.method = j.at("method").get<std::string>();
  c.degree = j.at("degree").get<int>();
  c.winding = j.at("winding").get<int>();
  c.assumption = j.at("assumption").get<std::string>();
  c.alpha_certificate = certificate_from(j.at("alpha_certificate"));
  return c;
}

json estimate_json(const degreelab::DegreeEstimate& e) {
  return {{"method", e.method},
          {"value", tagged(e.value)},
          {"error_estimate", tagged(e.error_estimate)},
          {"standard_error", tagged(e.standard_error)},
          {"nodes_or_samples", e.nodes_or_samples},
          {"seed", e.seed ? json(*e.seed) : json(nullptr)}};
}

degreelab::DegreeEstimate estimate_from(const json& j) {
  degreelab::DegreeEstimate e;
  e.method = j.at("method").get<std::string>();
  e.value = untag(j.at("value"));
  e.error_estimate = untag(j.at("error_estimate"));
  e.standard_error = untag(j.at("standard_error"));
  e.nodes_or_samples = j.at("nodes_or_samples").get<std::uint64_t>();
  if (!j.at("seed").is_null()) e.seed = j.at("seed").get<std::uint64_t>();
  return e;
}

template <class Triple>
json triple_common(const Triple& t, const RatPoly& alpha, const ApproxPoly& b1, const ApproxPoly& b2) {
  return {{"alpha", rat_poly_json(alpha)},
          {"beta1", approx_json(b1)},
          {"beta2", approx_json(b2)},
          {"identity_residual", tagged(t.identity_residual)},
          {"alpha_certificate", certificate_json(t.alpha_certificate)},
          {"lambda_certificate", certificate_json(t.lambda_certificate)},
          {"precision_bits", t.precision_bits}};
}

template <class Triple>
void read_triple_common(const json& j, Triple& t, RatPoly& alpha, ApproxPoly& b1, ApproxPoly& b2) {
  alpha = rat_poly_from(j.at("alpha"));
  b1 = approx_from(j.at("beta1"));
  b2 = approx_from(j.at("beta2"));
  t.identity_residual = untag(j.at("identity_residual"));
  t.alpha_certificate = certificate_from(j.at("alpha_certificate"));
  t.lambda_certificate = certificate_from(j.at("lambda_certificate"));
  t.precision_bits = j.at("precision_bits").get<unsigned>();
}

int max_degree(const HomogeneousMap& m) {
  int d = 0;
  for (const auto& c : m.components) d = std::max(d, c.degree());
  return d;
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

int MapBundle::target_degree() const { return is_variant_a() ? map_a().k : map_b().k(); }

unsigned MapBundle::precision_bits() const {
  return is_variant_a() ? map_a().triple.precision_bits : map_b().triple.precision_bits;
}

double MapBundle::identity_residual() const {
  return is_variant_a() ? map_a().triple.identity_residual : map_b().triple.identity_residual;
}

MapBundle make_bundle_a(int k, int n, unsigned precision_bits, bool homogenize) {
  MapBundle b;
  auto m = mapforge::construct_a(k, n, precision_bits);
  b.expanded = mapforge::expand_a(m);
  if (homogenize) b.homogenized = mapforge::homogenize(*b.expanded, m.algebraic_degree());
  b.certificate = degreelab::equator_certificate(m);
  b.map = std::move(m);
  b.provenance.tool_version = kVersion;
  b.provenance.precision_bits = b.precision_bits();
  return b;
}

MapBundle make_bundle_b(int k, int n, int r, const HomogeneousMap* equatorial, unsigned precision_bits) {
  MapBundle b;
  auto m = mapforge::construct_b(k, n, r, equatorial, precision_bits);
  b.expanded = mapforge::expand_b(m);
  if (r == 1) b.certificate = degreelab::equator_certificate(m);
  b.map = std::move(m);
  b.provenance.tool_version = kVersion;
  b.provenance.precision_bits = b.precision_bits();
  return b;
}

std::string serialize(const MapBundle& b) {
  json j;
  j["schema_version"] = b.schema_version;
  j["orientation"] = mapforge::kOrientationConvention;
  if (b.is_variant_a()) {
    const auto& m = b.map_a();
    j["variant"] = "a";
    j["k"] = m.k;
    j["n"] = m.n;
    j["r"] = nullptr;
    j["conjugate"] = m.conjugate;
    j["algebraic_degree"] = m.algebraic_degree();
    j["triple"] = triple_common(m.triple, m.triple.alpha, m.triple.beta1, m.triple.beta2);
    j["triple"]["k"] = m.triple.k;
    j["equatorial_map"] = nullptr;
  } else {
    const auto& m = b.map_b();
    j["variant"] = "b";
    j["k"] = m.k();
    j["n"] = m.n;
    j["r"] = m.r;
    j["conjugate"] = m.conjugate;
    j["algebraic_degree"] = b.expanded ? json(max_degree(*b.expanded)) : json(nullptr);
    j["triple"] = triple_common(m.triple, m.triple.alpha_tilde, m.triple.beta1_tilde, m.triple.beta2_tilde);
    j["triple"]["ktilde"] = m.triple.ktilde;
    j["equatorial_map"] = map_json(m.equatorial_map);
  }
  j["precision_bits"] = b.precision_bits();
  j["expanded"] = b.expanded ? map_json(*b.expanded) : json(nullptr);
  j["homogenized"] = b.homogenized ? map_json(*b.homogenized) : json(nullptr);
  j["certificate"] = b.certificate ? degree_certificate_json(*b.certificate) : json(nullptr);
  j["estimates"] = json::array();
  for (const auto& e : b.estimates) j["estimates"].push_back(estimate_json(e));
  j["provenance"] = {{"tool", b.provenance.tool},
                     {"tool_version", b.provenance.tool_version},
                     {"precision_bits", b.provenance.precision_bits},
                     {"seeds", b.provenance.seeds},
                     {"timestamp", b.provenance.timestamp}};
  return j.dump(2) + "\n";
}

MapBundle deserialize(const std::string& text) {
  return guarded([&] {
    const json j = json::parse(text);
    MapBundle b;
    b.schema_version = j.at("schema_version").get<std::string>();
    if (b.schema_version != kSchemaVersion) throw ParseError("unsupported schema_version '" + b.schema_version + "'");
    const auto variant = j.at("variant").get<std::string>();
    const auto& t = j.at("triple");
    if (variant == "a") {
      mapforge::SphereMapA m;
      m.k = j.at("k").get<int>();
      m.n = j.at("n").get<int>();
      m.conjugate = j.at("conjugate").get<bool>();
      if (m.k % 2 == 0 || m.n < 2 || m.n % 2 != 0 || m.conjugate != (m.k < 0))
        throw ParseError("inconsistent variant a header");
      read_triple_common(t, m.triple, m.triple.alpha, m.triple.beta1, m.triple.beta2);
      m.triple.k = t.at("k").get<int>();
      if (m.triple.k != std::abs(m.k)) throw ParseError("triple k differs from |k|");
      b.map = std::move(m);
    } else if (variant == "b") {
      mapforge::SphereMapB m;
      const int k = j.at("k").get<int>();
      m.n = j.at("n").get<int>();
      m.r = j.at("r").get<int>();
      m.conjugate = j.at("conjugate").get<bool>();
      m.ktilde = std::abs(k) / 2;
      if (k == 0 || k % 2 != 0 || m.n < 2 || m.n % 2 != 0 || m.r < 1 || 2 * m.r > m.n || m.conjugate != (k < 0))
        throw ParseError("inconsistent variant b header");
      read_triple_common(t, m.triple, m.triple.alpha_tilde, m.triple.beta1_tilde, m.triple.beta2_tilde);
      m.triple.ktilde = t.at("ktilde").get<int>();
      if (m.triple.ktilde != m.ktilde) throw ParseError("triple ktilde differs from |k| / 2");
      m.equatorial_map = map_from(j.at("equatorial_map"));
      b.map = std::move(m);
    } else {
      throw ParseError("unknown variant '" + variant + "'");
    }
    if (!j.at("expanded").is_null()) b.expanded = map_from(j.at("expanded"));
    if (!j.at("homogenized").is_null()) b.homogenized = map_from(j.at("homogenized"));
    if (!j.at("certificate").is_null()) b.certificate = degree_certificate_from(j.at("certificate"));
    for (const auto& e : j.at("estimates")) b.estimates.push_back(estimate_from(e));
    const auto& p = j.at("provenance");
    b.provenance.tool = p.at("tool").get<std::string>();
    b.provenance.tool_version = p.at("tool_version").get<std::string>();
    b.provenance.precision_bits = p.at("precision_bits").get<unsigned>();
    b.provenance.seeds = p.at("seeds").get<std::map<std::string, std::uint64_t>>();
    b.provenance.timestamp = p.at("timestamp").get<std::string>();
    return b;
  });
}

std::string serialize_map(const HomogeneousMap& m) { return map_json(m).dump(2) + "\n"; }

HomogeneousMap deserialize_map(const std::string& text) {
  return guarded([&] { return map_from(json::parse(text)); });
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace spheremaps::bundle
