#pragma once

#include <spheremaps/bundle/bundle.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace spheremaps::bundle {

struct CheckRecord {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckRecord> checks;

  bool passed() const;
  const CheckRecord* find(const std::string& name) const;
  /// One line per check plus an overall line.
  std::string to_text() const;
};

struct VerifyOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  /// Sup-norm tolerance for |‖F‖^2 - 1| and expansion agreement.
  double tolerance = 1e-9;
  double identity_tolerance = sosdecomp::kDefaultTolerance;
  degreelab::Grid grid{};
  double integral_tolerance = 1e-3;
  std::uint64_t montecarlo_samples = 200000;
  unsigned workers = 1;
};

/// Runs: identity_residual (recomputed exactly from the stored triple),
/// sphere_preservation (structured, expanded and homogenized forms on
/// domain samples), expansion_consistency, structural_homogeneity (when a
/// homogenized form is present), equator_certificate (r = 1), and the
/// degree integral (n = 2) or Monte Carlo estimate (variant A, n >= 4).
VerificationReport verify(const MapBundle& b, const VerifyOptions& options = {});

}  // namespace spheremaps::bundle
