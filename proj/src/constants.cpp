#include "chiralq/constants.hpp"

#include <stdexcept>

namespace chiralq {

double omega_from_geometry(double radius, double fermi_velocity) {
  if (!(radius > 0.0)) {
    throw std::domain_error("omega_from_geometry: radius must be positive");
  }
  if (!(fermi_velocity > 0.0)) {
    throw std::domain_error("omega_from_geometry: fermi_velocity must be positive");
  }
  return fermi_velocity / radius;
}

RingParams::RingParams(double radius_m, double fermi_velocity_m_per_s)
    : radius(radius_m),
      fermi_velocity(fermi_velocity_m_per_s),
      omega(omega_from_geometry(radius_m, fermi_velocity_m_per_s)) {}

double flux_ratio(double flux_wb, const PhysicalConstants& constants) {
  return flux_wb / constants.flux_quantum();
}

}  // namespace chiralq
