// Independent oracles used by the tests. Everything here evaluates closed
// forms or textbook limits and must stay decoupled from the library
// implementation paths it checks.
#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace oracles {

inline constexpr double kPi = 3.14159265358979323846;

// sum_{k>=0} (k+a) e^{-eps(k+a)} = -d/deps [e^{-eps a}/(1-e^{-eps})]
//                                = e^{-eps a} [a(1-e^{-eps}) + e^{-eps}] / (1-e^{-eps})^2
inline double tower_sum(double a, double eps) {
  const double em = std::exp(-eps);
  const double denom = 1.0 - em;
  return std::exp(-eps * a) * (a * denom + em) / (denom * denom);
}

// Regulated sea energy in closed form: both branches, |E| ladders at
// offsets phi and 1-phi.
inline double sea_sum(double phi, double eps) {
  return -(tower_sum(phi, eps) + tower_sum(1.0 - phi, eps));
}

// Small-eps series: S(eps) = -2/eps^2 + b + O(eps^2), so evaluating the
// closed form at a tiny regulator and removing the divergence pins the
// finite part without any fitting.
inline double finite_part(double phi) {
  const double eps = 2e-3;
  return sea_sum(phi, eps) + 2.0 / (eps * eps);
}

// Rate equation for the chirality populations under flip noise:
// p(t) = 1/2 + (p0 - 1/2) e^{-2 gamma t}
inline double flip_relaxation(double p0, double gamma, double t) {
  return 0.5 + (p0 - 0.5) * std::exp(-2.0 * gamma * t);
}

// Resonant RWA Rabi transfer with generalized frequency sqrt(W^2 + d^2).
inline double rabi_excited_population(double omega, double detuning, double t) {
  const double gen = std::hypot(omega, detuning);
  const double s = std::sin(0.5 * gen * t);
  return (omega * omega) / (gen * gen) * s * s;
}

inline double landau_zener_probability(double delta, double v) {
  return std::exp(-2.0 * kPi * delta * delta / v);
}

// exp(-i H t) for a traceless Hermitian 2x2 H with eigenvalues +-E.
inline Eigen::Matrix2cd propagator(const Eigen::Matrix2cd& h, double t) {
  const double e = std::sqrt(std::abs((h * h).trace().real()) / 2.0);
  const std::complex<double> i(0.0, 1.0);
  if (e < 1e-300) return Eigen::Matrix2cd::Identity();
  return std::cos(e * t) * Eigen::Matrix2cd::Identity() -
         i * std::sin(e * t) / e * h;
}

}  // namespace oracles
