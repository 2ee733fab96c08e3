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

#ifndef QUIETSD_FIR_SHAPER_HPP_
#define QUIETSD_FIR_SHAPER_HPP_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "quietsd/schemes.hpp"

namespace quietsd {

// Coefficients with a normalization factor so |c_j / scale| <= alpha < 1.
struct CoefficientSet {
  std::vector<double> coefficients;
  double scale = 1.0;

  // scale = max |c_j| / alpha (1 for an all-zero set). Throws
  // std::invalid_argument unless 0 < alpha < 1.
  static CoefficientSet normalized(std::vector<double> coefficients,
                                   double alpha = 0.8);
};

struct FirOptions {
  double tail_tol = 1e-9;
  std::size_t tail_cap = 100000;
};

struct QuantizedCoefficients {
  // Tri-level outputs, input part followed by the decay tail.
  std::vector<int> q;
  double scale = 1.0;
  double rho = 0.0;
  double gamma = 0.0;
  std::size_t input_length = 0;
  std::size_t tail_length = 0;

  // q_j * scale.
  std::vector<double> values() const;
};

class TailCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Runs the quiet second-order scheme over c / scale, then keeps feeding zeros
// until the state drops below tail_tol or the zero-input orbit is certified
// silent from then on. The tail therefore ends once no further nonzero output
// can occur. Throws std::invalid_argument for a non-quiet config and
// TailCapExceeded when tail_cap zero-input steps do not suffice.
QuantizedCoefficients quantize_coefficients(const CoefficientSet& c,
                                            const SchemeConfig& cfg,
                                            const FirOptions& options = {});

struct ResponseError {
  double omega;
  double error;
};

// |c^(w) - q^(w)| with x^(w) = sum_j x_j exp(-2 pi i w j), j from 0; the
// shorter sequence is zero-extended. Frequencies must lie in [0, 1/2].
std::vector<ResponseError> frequency_response_error(
    std::span<const double> c, std::span<const double> q,
    std::span<const double> freq_grid);

}  // namespace quietsd

#endif  // QUIETSD_FIR_SHAPER_HPP_
