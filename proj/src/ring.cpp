#include "chiralq/ring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "chiralq/constants.hpp"

namespace chiralq {

namespace {

constexpr double kEdgeTol = 1e-12;
constexpr std::int64_t kIndexCap = 2147483647;  // 2^31 - 1

// Integer range [lo, hi] of n with chi*(n + phi) in [e_min, e_max],
// inclusive with the edge tolerance.
std::pair<std::int64_t, std::int64_t> mode_range(Branch branch, double phi, double e_min,
                                                 double e_max) {
  // chi*(n + phi) in [e_min, e_max]  <=>  n in [lo_val, hi_val]
  double lo_val, hi_val;
  if (branch == Branch::RightHanded) {
    lo_val = e_min - phi;
    hi_val = e_max - phi;
  } else {
    lo_val = -e_max - phi;
    hi_val = -e_min - phi;
  }
  double lo = std::ceil(lo_val - kEdgeTol);
  double hi = std::floor(hi_val + kEdgeTol);
  if (std::abs(lo) > static_cast<double>(kIndexCap) ||
      std::abs(hi) > static_cast<double>(kIndexCap)) {
    throw std::domain_error("enumerate_window: mode index exceeds 2^31 - 1");
  }
  return {static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)};
}

}  // namespace

double level_energy(std::int64_t n, Branch branch, double phi) {
  return chirality(branch) * (static_cast<double>(n) + phi);
}

double level_current(Branch branch) {
  return -chirality(branch) / (2.0 * kPi);
}

SpectrumWindow enumerate_window(double phi, double e_min, double e_max) {
  if (!(e_min < e_max)) {
    throw std::invalid_argument("enumerate_window: requires e_min < e_max");
  }
  SpectrumWindow window;
  window.flux_ratio = phi;
  window.e_min = e_min;
  window.e_max = e_max;

  for (Branch branch : {Branch::RightHanded, Branch::LeftHanded}) {
    auto [lo, hi] = mode_range(branch, phi, e_min, e_max);
    for (std::int64_t n = lo; n <= hi; ++n) {
      window.levels.push_back(
          {n, branch, level_energy(n, branch, phi), level_current(branch)});
    }
  }
  std::sort(window.levels.begin(), window.levels.end(),
            [](const Level& a, const Level& b) {
              if (a.energy != b.energy) return a.energy < b.energy;
              return chirality(a.branch) > chirality(b.branch);  // R first
            });
  return window;
}

KramersReport kramers_check(double phi, double e_min, double e_max) {
  SpectrumWindow window = enumerate_window(phi, e_min, e_max);
  std::vector<double> right, left;
  for (const Level& level : window.levels) {
    (level.branch == Branch::RightHanded ? right : left).push_back(level.energy);
  }
  std::sort(right.begin(), right.end());
  std::sort(left.begin(), left.end());

  KramersReport report;
  report.right_count = right.size();
  report.left_count = left.size();
  if (right.size() != left.size()) {
    report.degenerate = false;
    report.max_mismatch = std::numeric_limits<double>::infinity();
    return report;
  }
  double mismatch = 0.0;
  for (std::size_t i = 0; i < right.size(); ++i) {
    mismatch = std::max(mismatch, std::abs(right[i] - left[i]));
  }
  report.max_mismatch = mismatch;
  report.degenerate = mismatch <= kEdgeTol;
  return report;
}

}  // namespace chiralq
