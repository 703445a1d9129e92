#pragma once

#include <vector>

#include "chiralq/constants.hpp"
#include "chiralq/ode.hpp"
#include "chiralq/two_level.hpp"

namespace chiralq {

struct PureTrajectory {
  std::vector<double> times;
  std::vector<Eigen::Vector2cd> states;

  std::vector<double> population(int component) const;  // 0 = |R>, 1 = |L>
  std::vector<double> population_of(const Eigen::Vector2cd& reference) const;
  std::vector<double> norms() const;
};

struct DensityTrajectory {
  std::vector<double> times;
  std::vector<Eigen::Matrix2cd> states;

  std::vector<double> population(int component) const;
  std::vector<double> population_of(const Eigen::Vector2cd& reference) const;
  std::vector<double> traces() const;
  std::vector<double> min_eigenvalues() const;
  std::vector<double> purities() const;
};

// Schrodinger evolution i dpsi/dt = H(t) psi on the given sample grid
// (strictly increasing; first entry is the initial time). The initial
// state must be pure.
PureTrajectory evolve_unitary(const QubitState& initial, const TwoLevelSystem& sys,
                              const DriveProgram& drive, const std::vector<double>& t_grid,
                              const IntegrationOptions& opts = {});

// Lindblad evolution
//   drho/dt = -i[H(t), rho] + sum_k gamma_k (L_k rho L_k - rho)
// with the chirality-flip and optional dephasing jumps of NoiseModel.
// gamma = 0 reproduces the unitary populations.
DensityTrajectory evolve_dissipative(const QubitState& initial, const TwoLevelSystem& sys,
                                     const DriveProgram& drive, const NoiseModel& noise,
                                     const std::vector<double>& t_grid,
                                     const IntegrationOptions& opts = {});

// Diabatic transition probability for the linear sweep epsilon(t) = v*t
// across the avoided crossing of width 2*delta; converges to
// exp(-2*pi*delta^2/v). The sweep runs over epsilon in
// [-span/2, +span/2], which must dwarf both delta and sqrt(v); too-narrow
// spans raise std::domain_error.
double landau_zener_sweep(double delta, double sweep_rate, double span,
                          const IntegrationOptions& opts = {});

// Span accepted by landau_zener_sweep with comfortable margin.
double landau_zener_auto_span(double delta, double sweep_rate);

struct CoherenceGateReport {
  double ratio_frequency = 0.0;  // f_gate / Gamma
  double ratio_angular = 0.0;    // 2*pi*f_gate / Gamma
  double simulated_oscillations = -1.0;  // Rabi periods before 1/e decay
  double envelope_decay_time_natural = 0.0;
};

// Figure of merit of the qubit: the coherence-to-gate-time ratio in both
// the cyclic and angular frequency conventions, optionally backed by a
// dissipative simulation of a resonant Rabi drive at the gate frequency
// (rotating frame) whose oscillation count is counted until the envelope
// decays to 1/e. The simulated count matches f_gate/Gamma; the angular
// convention differs by exactly 2*pi.
CoherenceGateReport coherence_gate_ratio(double gamma_flip_hz, double f_gate_hz,
                                         const UnitSystem& units, bool simulate = true);

}  // namespace chiralq
