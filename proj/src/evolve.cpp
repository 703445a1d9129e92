#include "chiralq/evolve.hpp"

#include <cmath>
#include <stdexcept>

#include "chiralq/measure.hpp"

namespace chiralq {

namespace {

using Eigen::Matrix2cd;
using Eigen::Vector2cd;
const std::complex<double> kI(0.0, 1.0);

Matrix2cd hamiltonian_at(const TwoLevelSystem& sys, const DriveProgram& drive, double t) {
  if (drive.rotating_frame) {
    // Energy-eigenbasis RWA form; only meaningful at the degeneracy point.
    const double detuning_rwa = sys.splitting() - drive.carrier;
    const double omega_eff = drive.amplitude * drive.envelope_value(t);
    return 0.5 * detuning_rwa * pauli_z() +
           0.5 * omega_eff *
               (std::cos(drive.phase) * pauli_x() + std::sin(drive.phase) * pauli_y());
  }
  const double eps_half = 0.5 * sys.detuning +
                          drive.amplitude * drive.envelope_value(t) *
                              std::cos(drive.carrier * t + drive.phase);
  return eps_half * pauli_z() - sys.tunneling * pauli_x();
}

void check_grid(const std::vector<double>& t_grid) {
  if (t_grid.size() < 2) {
    throw std::invalid_argument("evolve: t_grid needs at least 2 samples");
  }
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) {
      throw std::invalid_argument("evolve: t_grid must be strictly increasing");
    }
  }
}

void check_rotating_frame(const TwoLevelSystem& sys, const DriveProgram& drive) {
  if (drive.rotating_frame && std::abs(sys.detuning) > 1e-12) {
    throw std::invalid_argument(
        "evolve: the rotating-frame drive is defined at detuning 0 only");
  }
}

}  // namespace

std::vector<double> PureTrajectory::population(int component) const {
  std::vector<double> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    out[i] = std::norm(states[i](component));
  }
  return out;
}

std::vector<double> PureTrajectory::population_of(const Vector2cd& reference) const {
  std::vector<double> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    out[i] = std::norm(reference.dot(states[i]));
  }
  return out;
}

std::vector<double> PureTrajectory::norms() const {
  std::vector<double> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) out[i] = states[i].norm();
  return out;
}

std::vector<double> DensityTrajectory::population(int component) const {
  std::vector<double> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    out[i] = states[i](component, component).real();
  }
  return out;
}

std::vector<double> DensityTrajectory::population_of(const Vector2cd& reference) const {
  std::vector<double> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    out[i] = (reference.adjoint() * states[i] * reference)(0).real();
  }
  return out;
}

std::vector<double> DensityTrajectory::traces() const {
  std::vector<double> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) out[i] = states[i].trace().real();
  return out;
}

std::vector<double> DensityTrajectory::min_eigenvalues() const {
  std::vector<double> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    Eigen::SelfAdjointEigenSolver<Matrix2cd> solver(states[i]);
    out[i] = solver.eigenvalues().minCoeff();
  }
  return out;
}

std::vector<double> DensityTrajectory::purities() const {
  std::vector<double> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    out[i] = (states[i] * states[i]).trace().real();
  }
  return out;
}

PureTrajectory evolve_unitary(const QubitState& initial, const TwoLevelSystem& sys,
                              const DriveProgram& drive, const std::vector<double>& t_grid,
                              const IntegrationOptions& opts) {
  check_grid(t_grid);
  check_rotating_frame(sys, drive);
  if (!initial.is_pure()) {
    throw std::invalid_argument("evolve_unitary: initial state must be pure");
  }

  auto rhs = [&sys, &drive](double t, const Vector2cd& psi) -> Vector2cd {
    return -kI * (hamiltonian_at(sys, drive, t) * psi);
  };

  PureTrajectory traj;
  traj.times = t_grid;
  traj.states.reserve(t_grid.size());
  DormandPrince<Vector2cd, decltype(rhs)> stepper(rhs, opts, t_grid.front(),
                                                  initial.amplitudes());
  traj.states.push_back(stepper.state());
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    stepper.advance_to(t_grid[i]);
    traj.states.push_back(stepper.state());
  }
  return traj;
}

DensityTrajectory evolve_dissipative(const QubitState& initial, const TwoLevelSystem& sys,
                                     const DriveProgram& drive, const NoiseModel& noise,
                                     const std::vector<double>& t_grid,
                                     const IntegrationOptions& opts) {
  check_grid(t_grid);
  check_rotating_frame(sys, drive);
  if (noise.gamma_flip < 0.0 || noise.gamma_dephase < 0.0) {
    throw std::invalid_argument("evolve_dissipative: noise rates must be non-negative");
  }

  // In the rotating (energy-basis) frame the chirality flip is diagonal and
  // acts as sigma_z, while dephasing maps to sigma_x; both jumps are
  // involutions, so D[L] rho = L rho L - rho.
  const Matrix2cd flip_op = drive.rotating_frame ? pauli_z() : pauli_x();
  const Matrix2cd dephase_op = drive.rotating_frame ? pauli_x() : pauli_z();
  const double g_flip = noise.gamma_flip;
  const double g_deph = noise.gamma_dephase;

  auto rhs = [&sys, &drive, flip_op, dephase_op, g_flip, g_deph](
                 double t, const Matrix2cd& rho) -> Matrix2cd {
    const Matrix2cd h = hamiltonian_at(sys, drive, t);
    Matrix2cd drho = -kI * (h * rho - rho * h);
    if (g_flip > 0.0) drho += g_flip * (flip_op * rho * flip_op - rho);
    if (g_deph > 0.0) drho += g_deph * (dephase_op * rho * dephase_op - rho);
    return drho;
  };

  DensityTrajectory traj;
  traj.times = t_grid;
  traj.states.reserve(t_grid.size());
  DormandPrince<Matrix2cd, decltype(rhs)> stepper(rhs, opts, t_grid.front(),
                                                  initial.as_density());
  traj.states.push_back(stepper.state());
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    stepper.advance_to(t_grid[i]);
    traj.states.push_back(stepper.state());
  }
  return traj;
}

double landau_zener_auto_span(double delta, double sweep_rate) {
  return 120.0 * std::max(delta, std::sqrt(sweep_rate));
}

double landau_zener_sweep(double delta, double sweep_rate, double span,
                          const IntegrationOptions& opts) {
  if (!(delta > 0.0) || !(sweep_rate > 0.0)) {
    throw std::domain_error("landau_zener_sweep: delta and sweep_rate must be positive");
  }
  const double eps_end = 0.5 * span;
  // the sweep must start and end deep in the diabatic regime
  if (!(eps_end >= 20.0 * delta) || !(eps_end >= 20.0 * std::sqrt(sweep_rate))) {
    throw std::domain_error(
        "landau_zener_sweep: span too narrow; need span/2 >= 20*max(delta, sqrt(v))");
  }
  const double t_end = eps_end / sweep_rate;

  auto rhs = [delta, sweep_rate](double t, const Vector2cd& psi) -> Vector2cd {
    const Matrix2cd h =
        0.5 * (sweep_rate * t) * pauli_z() - delta * pauli_x();
    return -kI * (h * psi);
  };

  const Eigensystem start = eigensystem(TwoLevelSystem{-eps_end, delta});
  const Eigensystem end = eigensystem(TwoLevelSystem{+eps_end, delta});

  IntegrationOptions lz_opts = opts;
  DormandPrince<Vector2cd, decltype(rhs)> stepper(rhs, lz_opts, -t_end, start.states[0]);
  stepper.advance_to(t_end);
  // diabatic transition = ending in the instantaneous excited state
  return std::norm(end.states[1].dot(stepper.state()));
}

CoherenceGateReport coherence_gate_ratio(double gamma_flip_hz, double f_gate_hz,
                                         const UnitSystem& units, bool simulate) {
  if (!(gamma_flip_hz > 0.0) || !(f_gate_hz > 0.0)) {
    throw std::domain_error("coherence_gate_ratio: rates must be positive");
  }
  CoherenceGateReport report;
  report.ratio_frequency = f_gate_hz / gamma_flip_hz;
  report.ratio_angular = 2.0 * kPi * f_gate_hz / gamma_flip_hz;
  if (!simulate) return report;

  // Resonant Rabi drive at the gate frequency with chirality-flip noise,
  // in the rotating frame: the envelope decays at exactly gamma, so the
  // counted oscillations realize the f_gate/Gamma convention.
  const double gamma = units.rate_natural(gamma_flip_hz);
  const double omega_rabi = units.angular_frequency_natural(f_gate_hz);
  const double splitting = 4.0 * omega_rabi;  // any carrier-resonant qubit works here
  TwoLevelSystem sys{0.0, splitting / 2.0};
  DriveProgram drive = DriveProgram::resonant_constant(omega_rabi, splitting, true);
  NoiseModel noise{gamma, 0.0};

  const double period = 2.0 * kPi / omega_rabi;
  const double horizon = 1.25 / gamma;
  const std::size_t per_period = 12;
  const auto n_samples =
      static_cast<std::size_t>(std::ceil(horizon / period * per_period));
  std::vector<double> t_grid(n_samples + 1);
  for (std::size_t i = 0; i <= n_samples; ++i) {
    t_grid[i] = horizon * static_cast<double>(i) / static_cast<double>(n_samples);
  }

  // Rotating-frame components are energy-basis components: the ground
  // state is (1, 0).
  QubitState rho0 = QubitState::pure(Vector2cd(1.0, 0.0));
  IntegrationOptions opts;
  opts.rtol = 1e-10;
  opts.atol = 1e-10;
  DensityTrajectory traj = evolve_dissipative(rho0, sys, drive, noise, t_grid, opts);

  // ground-state population in the energy basis: |0><0| = diag(1, 0) here
  std::vector<double> p0(traj.states.size());
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    p0[i] = traj.states[i](0, 0).real();
  }
  OscillationCount count = count_oscillations_until_decay(traj.times, p0, 0.5);
  report.simulated_oscillations = count.oscillations;
  report.envelope_decay_time_natural = count.t_decay;
  return report;
}

}  // namespace chiralq
