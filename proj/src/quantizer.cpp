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

#include "quietsd/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace quietsd {

int quantize_tri(double u) {
  if (u >= 0.5) return 1;
  if (u <= -0.5) return -1;
  return 0;
}

int quantize_sign(double u) { return u < 0.0 ? -1 : 1; }

Alphabet::Alphabet(std::size_t size) {
  if (size < 2) throw std::invalid_argument("alphabet needs at least 2 levels");
  spacing_ = 2.0 / static_cast<double>(size - 1);
  levels_.resize(size);
  for (std::size_t i = 0; i < size; ++i) {
    levels_[i] = -1.0 + spacing_ * static_cast<double>(i);
  }
  // Pin the endpoints and the symmetric pairs exactly.
  for (std::size_t i = 0; i < size / 2; ++i) {
    levels_[size - 1 - i] = -levels_[i];
  }
  if (size % 2 == 1) levels_[size / 2] = 0.0;
  levels_.front() = -1.0;
  levels_.back() = 1.0;
}

bool Alphabet::contains(double value) const {
  return std::find(levels_.begin(), levels_.end(), value) != levels_.end();
}

double quantize_uniform(double u, const Alphabet& alphabet) {
  const double k = static_cast<double>(alphabet.size() - 1);
  const double pos = std::floor((u + 1.0) / alphabet.spacing() + 0.5);
  const auto idx = static_cast<std::size_t>(std::clamp(pos, 0.0, k));
  return alphabet.levels()[idx];
}

}  // namespace quietsd
