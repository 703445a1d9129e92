#pragma once

#include <numbers>

namespace chiralq {

inline constexpr double kPi = std::numbers::pi;

// CODATA 2018 values. e and h are exact by SI definition; hbar and the
// flux quantum are derived so that h = 2*pi*hbar and Phi0 = h/e hold to
// the last bit. Phi0 is the single-charge quantum h/e, not the
// superconducting h/(2e).
struct PhysicalConstants {
  double elementary_charge = 1.602176634e-19;  // C
  double planck = 6.62607015e-34;              // J s

  double reduced_planck() const { return planck / (2.0 * kPi); }
  double flux_quantum() const { return planck / elementary_charge; }
};

// Ring geometry and the derived angular frequency omega = v_F / R that
// sets the level spacing hbar*omega.
struct RingParams {
  double radius;          // m
  double fermi_velocity;  // m/s
  double omega;           // rad/s

  RingParams(double radius_m, double fermi_velocity_m_per_s);
};

// v_F / R; throws std::domain_error on non-positive input.
double omega_from_geometry(double radius, double fermi_velocity);

// phi = Phi / Phi0
double flux_ratio(double flux_wb, const PhysicalConstants& constants);

// Conversions between the internal natural units (hbar = 1, energies in
// hbar*omega, flux in Phi0, time in 1/omega, currents in e*omega) and SI.
// SI appears only at I/O boundaries.
class UnitSystem {
 public:
  UnitSystem(const PhysicalConstants& constants, const RingParams& ring)
      : constants_(constants), ring_(ring) {}

  const PhysicalConstants& constants() const { return constants_; }
  const RingParams& ring() const { return ring_; }

  double energy_si(double e_natural) const {
    return e_natural * constants_.reduced_planck() * ring_.omega;
  }
  double energy_natural(double e_si) const {
    return e_si / (constants_.reduced_planck() * ring_.omega);
  }
  double time_si(double t_natural) const { return t_natural / ring_.omega; }
  double time_natural(double t_si) const { return t_si * ring_.omega; }
  double rate_natural(double rate_hz) const { return rate_hz / ring_.omega; }
  double angular_frequency_natural(double f_hz) const {
    return 2.0 * kPi * f_hz / ring_.omega;
  }
  double flux_si(double phi) const { return phi * constants_.flux_quantum(); }
  double flux_natural(double flux_wb) const {
    return flux_wb / constants_.flux_quantum();
  }
  double current_si(double j_natural) const {
    return j_natural * constants_.elementary_charge * ring_.omega;
  }

 private:
  PhysicalConstants constants_;
  RingParams ring_;
};

}  // namespace chiralq
