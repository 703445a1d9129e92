#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace chiralq {

// Chirality branch of a ring mode: the sigma_z eigenvalue is +1 for
// clockwise (right-handed) and -1 for counter-clockwise (left-handed)
// movers.
enum class Branch { RightHanded, LeftHanded };

constexpr int chirality(Branch b) {
  return b == Branch::RightHanded ? +1 : -1;
}

constexpr std::string_view branch_label(Branch b) {
  return b == Branch::RightHanded ? "R" : "L";
}

// Single fermion mode of the flux-threaded ring.
struct Level {
  std::int64_t n = 0;
  Branch branch = Branch::RightHanded;
  double energy = 0.0;   // hbar*omega
  double current = 0.0;  // e*omega
};

// E = chi * (n + phi) in units of hbar*omega.
double level_energy(std::int64_t n, Branch branch, double phi);

// Persistent current -dE/dPhi of one occupied mode: -chi/(2*pi) in units
// of e*omega, the same for every n.
double level_current(Branch branch);

struct SpectrumWindow {
  double flux_ratio = 0.0;
  double e_min = 0.0;
  double e_max = 0.0;
  std::vector<Level> levels;  // ascending energy; R before L on exact ties
};

// Every level of both branches with energy in [e_min, e_max]. Edge
// membership uses a 1e-12 absolute tolerance so half-integer flux does not
// drop levels sitting exactly on an edge. Mode indices are capped at
// 2^31 - 1; wider windows raise std::domain_error.
SpectrumWindow enumerate_window(double phi, double e_min, double e_max);

struct KramersReport {
  bool degenerate = false;
  std::size_t right_count = 0;
  std::size_t left_count = 0;
  double max_mismatch = 0.0;  // largest |E_R - E_L| over sorted pairs
};

// True iff the R and L energy multisets inside the window coincide to
// 1e-12, as they must whenever 2*phi is an integer.
KramersReport kramers_check(double phi, double e_min, double e_max);

}  // namespace chiralq
