#pragma once

#include <Eigen/Dense>
#include <array>
#include <variant>

namespace chiralq {

const Eigen::Matrix2cd& pauli_x();
const Eigen::Matrix2cd& pauli_y();
const Eigen::Matrix2cd& pauli_z();

// Reduced flux qubit in the {|R>, |L>} chirality basis:
//
//   H = (epsilon/2) sigma_z - delta sigma_x
//
// The tunneling term enters with a minus sign so that at epsilon = 0 the
// ground state is the symmetric combination |0> = (|R> + |L>)/sqrt(2) and
// the excited state is |1> = (|R> - |L>)/sqrt(2), split by 2*delta.
// Energies in hbar*omega.
struct TwoLevelSystem {
  double detuning = 0.0;   // epsilon
  double tunneling = 0.0;  // delta >= 0

  Eigen::Matrix2cd hamiltonian() const;
  double splitting() const;  // 2*sqrt((epsilon/2)^2 + delta^2)
};

// epsilon(phi) = 2*(phi - 1/2): the energy asymmetry between the R- and
// L-ground configurations near half flux, inherited from the linear flux
// dependence of the level energies. delta < 0 raises
// std::invalid_argument.
TwoLevelSystem reduce_to_two_level(double phi, double delta);

struct Eigensystem {
  std::array<double, 2> energies;          // ground, excited
  std::array<Eigen::Vector2cd, 2> states;  // orthonormal, matching order
};

Eigensystem eigensystem(const TwoLevelSystem& sys);

// Pure state (two amplitudes in the {|R>, |L>} basis) or a 2x2 density
// matrix. Construction validates normalization, Hermiticity and
// positivity.
class QubitState {
 public:
  static QubitState pure(const Eigen::Vector2cd& amplitudes);
  static QubitState density(const Eigen::Matrix2cd& rho);

  bool is_pure() const { return std::holds_alternative<Eigen::Vector2cd>(value_); }
  const Eigen::Vector2cd& amplitudes() const;
  const Eigen::Matrix2cd& density_matrix() const;
  Eigen::Matrix2cd as_density() const;

  std::array<double, 2> populations() const;  // {p_R, p_L}
  double norm_or_trace() const;
  double purity() const;
  double min_eigenvalue() const;

 private:
  explicit QubitState(Eigen::Vector2cd v) : value_(std::move(v)) {}
  explicit QubitState(Eigen::Matrix2cd m) : value_(std::move(m)) {}
  std::variant<Eigen::Vector2cd, Eigen::Matrix2cd> value_;
};

// Chirality-flip noise with jump operator |R><L| + |L><R| (sigma_x) at
// rate gamma_flip, plus optional pure dephasing (sigma_z) at rate
// gamma_dephase. Rates in natural units (per 1/omega). gamma_flip = 0 and
// gamma_dephase = 0 reduce the dissipative channel to the identity.
struct NoiseModel {
  double gamma_flip = 0.0;
  double gamma_dephase = 0.0;
};

struct ConstantEnvelope {};
struct GaussianPulse {
  double t0 = 0.0;
  double sigma = 1.0;
};

// Flux-coupled drive. In the lab frame the detuning is modulated:
//
//   H(t) = [epsilon/2 + amplitude*envelope(t)*cos(carrier*t + phase)] sigma_z
//          - delta sigma_x
//
// With rotating_frame = true (valid only at epsilon = 0, on or near
// resonance) the same program is applied in the energy eigenbasis under
// the rotating-wave approximation:
//
//   H_rwa = ((2*delta - carrier)/2) sigma_z + (amplitude*envelope(t)/2) *
//           (cos(phase) sigma_x + sin(phase) sigma_y)
//
// and the chirality-flip jump operator maps to sigma_z (the flip is
// diagonal in the energy basis at epsilon = 0).
struct DriveProgram {
  double amplitude = 0.0;  // peak Rabi angular frequency, natural units
  double carrier = 0.0;    // carrier angular frequency, natural units
  double phase = 0.0;
  std::variant<ConstantEnvelope, GaussianPulse> envelope = ConstantEnvelope{};
  bool rotating_frame = false;

  double envelope_value(double t) const;

  static DriveProgram off();
  static DriveProgram resonant_constant(double amplitude, double carrier,
                                        bool rotating_frame = false);
  // amplitude chosen so the integrated pulse area is `area`.
  static DriveProgram gaussian_pulse(double area, double t0, double sigma, double carrier,
                                     bool rotating_frame = false);
};

}  // namespace chiralq
