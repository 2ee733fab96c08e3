// Copyright 2026 The QuietSD Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QUIETSD_TESTS_SUPPORT_FIXTURES_HPP_
#define QUIETSD_TESTS_SUPPORT_FIXTURES_HPP_

#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include "quietsd/dynamics.hpp"

namespace quietsd::testing {

// Hamming-windowed sinc low-pass, cutoff in cycles per sample.
inline std::vector<double> windowed_sinc_lowpass(std::size_t taps,
                                                 double cutoff) {
  constexpr double pi = std::numbers::pi;
  std::vector<double> c(taps);
  const double mid = 0.5 * static_cast<double>(taps - 1);
  for (std::size_t j = 0; j < taps; ++j) {
    const double x = static_cast<double>(j) - mid;
    const double ideal =
        x == 0.0 ? 2.0 * cutoff : std::sin(2.0 * pi * cutoff * x) / (pi * x);
    const double w =
        0.54 - 0.46 * std::cos(2.0 * pi * static_cast<double>(j) /
                               static_cast<double>(taps - 1));
    c[j] = ideal * w;
  }
  return c;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Uniform draw from S+ or S- (chosen with equal probability) by sampling u
// and s = gamma u + v over the defining ranges.
inline PlanePoint random_point_in_S(std::mt19937_64& rng, double gamma) {
  if (uniform(rng, 0.0, 1.0) < 0.5) {
    const double u = uniform(rng, 0.0, 1.0);
    const double s = uniform(rng, -0.5, 0.5 + gamma);
    return {u, s - gamma * u};
  }
  const double u = uniform(rng, -1.0, 0.0);
  const double s = uniform(rng, -(0.5 + gamma), 0.5);
  return {u, s - gamma * u};
}

}  // namespace quietsd::testing

#endif  // QUIETSD_TESTS_SUPPORT_FIXTURES_HPP_
