#pragma once

// Scenario configuration for the experiment driver, read from one JSON
// document. Unknown keys are rejected; every error names the offending key.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lohe/integrate.hpp"

namespace lohe {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct HamiltonianMode {
  enum class Kind { Zero, Identical, Gaussian };
  Kind kind = Kind::Zero;
  /// Entry scale of the Gaussian u(d) draw (used by Identical and Gaussian).
  double sigma = 1.0;

  friend bool operator==(const HamiltonianMode&, const HamiltonianMode&) = default;
};

struct InitMode {
  enum class Kind { Haar, Cluster };
  Kind kind = Kind::Haar;
  std::uint64_t center_seed = 0;
  double radius = 0.5;

  friend bool operator==(const InitMode&, const InitMode&) = default;
};

struct ScenarioConfig {
  int d = 2;
  std::size_t n = 16;
  std::size_t p_reference = 0;
  double kappa = 1.0;
  double t_end = 1.0;
  double dt = 1e-3;
  Method method = Method::CF2;
  std::size_t record_every = 10;
  std::size_t retract_every = 64;
  HamiltonianMode hamiltonian;
  InitMode init;
  std::uint64_t seed = 0;
  std::size_t repetitions = 1;
  std::vector<std::size_t> n_list;
  std::vector<double> kappa_list;
  std::size_t samples = 1000;

  StepperConfig stepper() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Parses and validates a JSON document. Required keys: d, n, kappa, t_end,
/// dt. Defaults: method "CF2", record_every 10, retract_every 64,
/// hamiltonian_mode "zero", init_mode "haar", seed 0, repetitions 1,
/// n_list [n], kappa_list [kappa], p_reference 8·max(n_list), samples 1000.
/// hamiltonian_mode is "zero", "identical", "gaussian" or
/// {"kind": ..., "sigma": s}; init_mode is "haar" or
/// {"kind": "cluster", "center_seed": u64, "radius": r}.
ScenarioConfig parse_config(const std::string& json_text);

/// Resolved configuration as JSON with every key present.
std::string serialize_config(const ScenarioConfig& cfg, int indent = 2);

/// Applies the range checks of parse_config to an in-memory value.
void validate_config(const ScenarioConfig& cfg);

const char* to_string(HamiltonianMode::Kind k) noexcept;
const char* to_string(InitMode::Kind k) noexcept;

}  // namespace lohe
