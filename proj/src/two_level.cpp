#include "chiralq/two_level.hpp"

#include <cmath>
#include <stdexcept>

#include "chiralq/constants.hpp"

namespace chiralq {

namespace {
using Eigen::Matrix2cd;
using Eigen::Vector2cd;
const std::complex<double> kI(0.0, 1.0);
}  // namespace

const Matrix2cd& pauli_x() {
  static const Matrix2cd m = (Matrix2cd() << 0, 1, 1, 0).finished();
  return m;
}

const Matrix2cd& pauli_y() {
  static const Matrix2cd m = (Matrix2cd() << 0, -kI, kI, 0).finished();
  return m;
}

const Matrix2cd& pauli_z() {
  static const Matrix2cd m = (Matrix2cd() << 1, 0, 0, -1).finished();
  return m;
}

Matrix2cd TwoLevelSystem::hamiltonian() const {
  return 0.5 * detuning * pauli_z() - tunneling * pauli_x();
}

double TwoLevelSystem::splitting() const {
  return 2.0 * std::hypot(0.5 * detuning, tunneling);
}

TwoLevelSystem reduce_to_two_level(double phi, double delta) {
  if (delta < 0.0) {
    throw std::invalid_argument("reduce_to_two_level: delta must be non-negative");
  }
  return TwoLevelSystem{2.0 * (phi - 0.5), delta};
}

Eigensystem eigensystem(const TwoLevelSystem& sys) {
  Eigen::SelfAdjointEigenSolver<Matrix2cd> solver(sys.hamiltonian());
  Eigensystem out;
  out.energies = {solver.eigenvalues()(0), solver.eigenvalues()(1)};
  out.states = {Vector2cd(solver.eigenvectors().col(0)),
                Vector2cd(solver.eigenvectors().col(1))};
  return out;
}

QubitState QubitState::pure(const Vector2cd& amplitudes) {
  if (std::abs(amplitudes.squaredNorm() - 1.0) > 1e-10) {
    throw std::invalid_argument("QubitState: pure state must be normalized to 1e-10");
  }
  return QubitState(amplitudes);
}

QubitState QubitState::density(const Matrix2cd& rho) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("QubitState: density matrix must be Hermitian");
  }
  if (std::abs(rho.trace().real() - 1.0) > 1e-10) {
    throw std::invalid_argument("QubitState: density matrix trace must be 1 to 1e-10");
  }
  Eigen::SelfAdjointEigenSolver<Matrix2cd> solver(rho);
  if (solver.eigenvalues().minCoeff() < -1e-12) {
    throw std::invalid_argument("QubitState: density matrix must be positive");
  }
  return QubitState(rho);
}

const Vector2cd& QubitState::amplitudes() const {
  if (!is_pure()) throw std::logic_error("QubitState: not a pure state");
  return std::get<Vector2cd>(value_);
}

const Matrix2cd& QubitState::density_matrix() const {
  if (is_pure()) throw std::logic_error("QubitState: not a density matrix");
  return std::get<Matrix2cd>(value_);
}

Matrix2cd QubitState::as_density() const {
  if (is_pure()) {
    const Vector2cd& psi = std::get<Vector2cd>(value_);
    return psi * psi.adjoint();
  }
  return std::get<Matrix2cd>(value_);
}

std::array<double, 2> QubitState::populations() const {
  Matrix2cd rho = as_density();
  return {rho(0, 0).real(), rho(1, 1).real()};
}

double QubitState::norm_or_trace() const {
  if (is_pure()) return std::get<Vector2cd>(value_).norm();
  return std::get<Matrix2cd>(value_).trace().real();
}

double QubitState::purity() const {
  Matrix2cd rho = as_density();
  return (rho * rho).trace().real();
}

double QubitState::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix2cd> solver(as_density());
  return solver.eigenvalues().minCoeff();
}

double DriveProgram::envelope_value(double t) const {
  if (std::holds_alternative<ConstantEnvelope>(envelope)) return 1.0;
  const auto& pulse = std::get<GaussianPulse>(envelope);
  const double u = (t - pulse.t0) / pulse.sigma;
  return std::exp(-0.5 * u * u);
}

DriveProgram DriveProgram::off() { return DriveProgram{}; }

DriveProgram DriveProgram::resonant_constant(double amplitude, double carrier,
                                             bool rotating_frame) {
  DriveProgram d;
  d.amplitude = amplitude;
  d.carrier = carrier;
  d.rotating_frame = rotating_frame;
  return d;
}

DriveProgram DriveProgram::gaussian_pulse(double area, double t0, double sigma,
                                          double carrier, bool rotating_frame) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("DriveProgram: pulse sigma must be positive");
  }
  DriveProgram d;
  d.amplitude = area / (sigma * std::sqrt(2.0 * kPi));
  d.carrier = carrier;
  d.envelope = GaussianPulse{t0, sigma};
  d.rotating_frame = rotating_frame;
  return d;
}

}  // namespace chiralq
