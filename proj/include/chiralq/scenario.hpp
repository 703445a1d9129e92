#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chiralq/config.hpp"
#include "chiralq/constants.hpp"
#include "chiralq/dirac_sea.hpp"

namespace chiralq {

enum class ScenarioKind {
  SpectrumSweep,
  Washboard,
  HeatKernel,
  SpectralFlow,
  Rabi,
  LandauZener,
  Decoherence,
  CmeSweep,
};

const char* kind_name(ScenarioKind kind);
std::optional<ScenarioKind> kind_from_name(const std::string& name);

// One row of a scenario schema; the same table drives parsing, validation
// and the describe/list documentation.
struct ParamSpec {
  const char* section;
  const char* key;
  const char* type;  // "float" | "int" | "bool" | "string" | "float list"
  const char* default_value;  // nullptr = required
  const char* doc;
};

// Declarative run description, fully resolved against defaults.
struct Scenario {
  std::string name;
  ScenarioKind kind = ScenarioKind::Washboard;
  long seed = 0;
  std::string output_basename;

  PhysicalConstants constants;
  double ring_radius = 1e-6;          // m
  double ring_fermi_velocity = 1e6;   // m/s

  struct WashboardParams {
    double phi_min = -1.5;
    double phi_max = 2.5;
    long points = 1001;
    double u0 = 1.0;
    double beta = 0.0;
    CosineArgument cosine = CosineArgument::Literal;
  } washboard;

  struct SpectrumSweepParams {
    double phi_min = 0.0;
    double phi_max = 1.0;
    long points = 201;
    double e_min = -3.5;
    double e_max = 3.5;
  } spectrum;

  struct HeatKernelParams {
    std::vector<double> phi_values{0.1, 0.25, 0.4, 0.6, 0.75, 0.9};
    std::vector<double> epsilons{0.1, 0.05, 0.025, 0.0125};
    double residual_threshold = 1e-4;
    double sharp_lambda0 = 30.0;
    long sharp_width = 16;
  } heat_kernel;

  struct SpectralFlowParams {
    double phi_start = 0.25;
    double delta_phi = 1.0;
    double duration = 1.0;
    long steps = 200;
    double window_margin = 2.0;  // window = drift hull widened by this
  } spectral_flow;

  struct RabiParams {
    double omega_rabi = 0.0;  // required
    double detuning = 0.0;    // required
    double duration = 0.0;    // required
    double carrier = 50.0;
    long samples = 3000;
  } rabi;

  struct LandauZenerParams {
    double delta = 1.0;
    double sweep_rate = 2.0 * kPi;  // 2*pi*delta^2/v = 1 by default
    double span = 0.0;              // 0 = automatic
  } landau_zener;

  struct DecoherenceParams {
    double gamma_flip_hz = 1e9;
    double gamma_dephase_hz = 0.0;
    double rabi_frequency_hz = 1e13;
    double decay_horizons = 1.2;     // duration = horizons / Gamma
    long samples_per_period = 12;
  } decoherence;

  struct CmeSweepParams {
    long n_max = 20;
    std::vector<double> b_fields{0.0, 0.5, 1.0};
  } cme;

  // Canonical resolved key-value text (stable order), used for metadata
  // and the scenario hash.
  std::string resolved_text() const;
};

// Parses and validates a config document; collects every error (unknown
// keys and sections, type mismatches, missing required fields) with line
// numbers before throwing ConfigException.
Scenario parse_config(const std::string& text);

std::vector<std::string> list_scenarios();
const std::vector<ParamSpec>& scenario_schema(ScenarioKind kind);
std::string describe(ScenarioKind kind);
std::string describe(const std::string& kind_name);  // throws std::invalid_argument

}  // namespace chiralq
