#pragma once

#include <spheremaps/degreelab/degree.hpp>
#include <spheremaps/mapforge/sphere_map.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace spheremaps::bundle {

inline constexpr const char* kSchemaVersion = "1.0";

struct Provenance {
  std::string tool = "spheremap";
  std::string tool_version;
  unsigned precision_bits = 0;
  std::map<std::string, std::uint64_t> seeds;
  /// The only field that varies between identical runs.
  std::string timestamp;
};

/// A constructed map with its triple, explicit polynomial forms, degree
/// evidence and provenance. See docs/bundle-schema.md.
struct MapBundle {
  std::string schema_version = kSchemaVersion;
  std::variant<mapforge::SphereMapA, mapforge::SphereMapB> map;
  std::optional<mapforge::HomogeneousMap> expanded;
  std::optional<mapforge::HomogeneousMap> homogenized;
  std::optional<degreelab::DegreeCertificate> certificate;
  std::vector<degreelab::DegreeEstimate> estimates;
  Provenance provenance;

  bool is_variant_a() const { return map.index() == 0; }
  const mapforge::SphereMapA& map_a() const { return std::get<0>(map); }
  const mapforge::SphereMapB& map_b() const { return std::get<1>(map); }
  /// Brouwer degree the construction targets: k for variant A, +-2 ktilde
  /// for variant B.
  int target_degree() const;
  unsigned precision_bits() const;
  double identity_residual() const;
};

/// Builds the map, its expansion (and homogenization for variant A when
/// requested) and, when r = 1, the equator certificate. The timestamp is
/// left empty.
MapBundle make_bundle_a(int k, int n, unsigned precision_bits, bool homogenize);
MapBundle make_bundle_b(int k, int n, int r, const mapforge::HomogeneousMap* equatorial,
                        unsigned precision_bits);

/// Pretty-printed JSON with sorted keys and a trailing newline.
std::string serialize(const MapBundle& b);
/// Throws ParseError on malformed documents or unknown schema versions.
MapBundle deserialize(const std::string& text);

/// Polynomial map alone, in the bundle's component format; used for
/// caller-supplied equatorial maps.
std::string serialize_map(const mapforge::HomogeneousMap& m);
mapforge::HomogeneousMap deserialize_map(const std::string& text);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

}  // namespace spheremaps::bundle
