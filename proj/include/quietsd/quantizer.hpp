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

#ifndef QUIETSD_QUANTIZER_HPP_
#define QUIETSD_QUANTIZER_HPP_

#include <cstddef>
#include <vector>

namespace quietsd {

// Tri-level quantizer with closed outer regions: 1 for u >= 1/2, -1 for
// u <= -1/2, 0 otherwise. This is the convention of the zero-input maps.
int quantize_tri(double u);

// sign(u), with sign(0) = 1.
int quantize_sign(double u);

// K equispaced levels from -1 to 1.
class Alphabet {
 public:
  // Throws std::invalid_argument for size < 2.
  explicit Alphabet(std::size_t size);

  std::size_t size() const { return levels_.size(); }
  double spacing() const { return spacing_; }
  const std::vector<double>& levels() const { return levels_; }
  bool contains(double value) const;

 private:
  std::vector<double> levels_;
  double spacing_;
};

// Nearest level of the alphabet; ties go toward +1.
double quantize_uniform(double u, const Alphabet& alphabet);

}  // namespace quietsd

#endif  // QUIETSD_QUANTIZER_HPP_
