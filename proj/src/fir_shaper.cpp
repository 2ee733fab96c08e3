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

#include "quietsd/fir_shaper.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "quietsd/dynamics.hpp"

namespace quietsd {

CoefficientSet CoefficientSet::normalized(std::vector<double> coefficients,
                                          double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
  double peak = 0.0;
  for (double c : coefficients) {
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite coefficient");
    peak = std::max(peak, std::abs(c));
  }
  CoefficientSet set;
  set.coefficients = std::move(coefficients);
  set.scale = peak > 0.0 ? peak / alpha : 1.0;
  return set;
}

std::vector<double> QuantizedCoefficients::values() const {
  std::vector<double> out(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) out[j] = q[j] * scale;
  return out;
}

QuantizedCoefficients quantize_coefficients(const CoefficientSet& c,
                                            const SchemeConfig& cfg,
                                            const FirOptions& options) {
  if (cfg.variant != Variant::quiet || cfg.order != 2) {
    throw std::invalid_argument("coefficient shaping requires the quiet scheme");
  }
  cfg.validate();
  if (!(c.scale > 0.0)) throw std::invalid_argument("scale must be positive");

  QuantizedCoefficients out;
  out.scale = c.scale;
  out.rho = cfg.damping();
  out.gamma = cfg.gamma;
  out.input_length = c.coefficients.size();
  out.q.reserve(c.coefficients.size() + 1024);

  SchemeState s;
  for (double coeff : c.coefficients) {
    const auto step = step_second_order(s, coeff / c.scale, cfg);
    s = step.state;
    out.q.push_back(step.q);
  }
  auto settled = [&] {
    const PlanePoint x{s.u, s.v};
    return max_norm(x) < options.tail_tol ||
           quiet_certificate(x, cfg.gamma, out.rho);
  };
  std::size_t extra = 0;
  while (!settled()) {
    if (extra == options.tail_cap) {
      throw TailCapExceeded("zero-input tail did not settle within " +
                            std::to_string(options.tail_cap) + " steps");
    }
    const auto step = step_second_order(s, 0.0, cfg);
    s = step.state;
    out.q.push_back(step.q);
    ++extra;
  }
  // Trailing zeros carry no information; the tail ends at the last nonzero.
  std::size_t len = out.q.size();
  while (len > out.input_length && out.q[len - 1] == 0) --len;
  out.q.resize(len);
  out.tail_length = len - out.input_length;
  return out;
}

std::vector<ResponseError> frequency_response_error(
    std::span<const double> c, std::span<const double> q,
    std::span<const double> freq_grid) {
  const std::size_t n = std::max(c.size(), q.size());
  std::vector<ResponseError> out;
  out.reserve(freq_grid.size());
  for (double w : freq_grid) {
    if (!(w >= 0.0 && w <= 0.5)) {
      throw std::invalid_argument("frequency outside [0, 1/2]");
    }
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      const double cj = j < c.size() ? c[j] : 0.0;
      const double qj = j < q.size() ? q[j] : 0.0;
      const double d = cj - qj;
      if (d == 0.0) continue;
      const double angle = -2.0 * std::numbers::pi * w * static_cast<double>(j);
      acc += d * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out.push_back({w, std::abs(acc)});
  }
  return out;
}

}  // namespace quietsd
