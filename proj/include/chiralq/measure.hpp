#pragma once

#include <vector>

namespace chiralq {

// Peak of the Hann-windowed discrete spectrum of a uniformly sampled,
// mean-removed trace, refined by golden-section search on |X(f)|^2.
// Returns the cyclic frequency in [f_min, f_max].
double dominant_frequency(const std::vector<double>& values, double dt, double f_min,
                          double f_max);

struct OscillationCount {
  double oscillations = 0.0;      // peaks counted before the 1/e time
  double t_decay = 0.0;           // envelope 1/e time
  double initial_amplitude = 0.0;
};

// Counts oscillation peaks of (values - baseline) until the peak envelope
// first drops below 1/e of its initial amplitude. The trace must be
// sampled densely enough to resolve individual periods.
OscillationCount count_oscillations_until_decay(const std::vector<double>& times,
                                                const std::vector<double>& values,
                                                double baseline);

}  // namespace chiralq
