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

#ifndef QUIETSD_SIGNAL_MODEL_HPP_
#define QUIETSD_SIGNAL_MODEL_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace quietsd {

// One cosine term a * cos(2 pi w t + phi). Frequency in cycles per unit time.
struct ToneTerm {
  double amplitude = 0.0;
  double frequency = 0.0;
  double phase = 0.0;
};

// Finite trigonometric sum with every |frequency| < 1/2 (band [-1/2, 1/2])
// and sum |amplitude| <= amplitude_bound < 1, so that sup |f| <= alpha.
class BandlimitedSignal {
 public:
  BandlimitedSignal() = default;
  // Throws std::invalid_argument if a term is out of band or the amplitude
  // bound is violated.
  BandlimitedSignal(std::vector<ToneTerm> terms, double amplitude_bound);

  // Uses sum |a_i| as the amplitude bound.
  static BandlimitedSignal from_terms(std::vector<ToneTerm> terms);

  double operator()(double t) const;

  const std::vector<ToneTerm>& terms() const { return terms_; }
  double amplitude_bound() const { return amplitude_bound_; }

 private:
  std::vector<ToneTerm> terms_;
  double amplitude_bound_ = 0.0;
};

// a = 0.5, w = 0.2, phi = 0.
BandlimitedSignal default_tone();

// Low-pass averaging kernel g with a raised-cosine spectrum:
//   g^(w) = 1                                   |w| <= 1/2
//         = cos^2(pi (|w| - 1/2) / (lambda0 - 1))  1/2 < |w| < lambda0/2
//         = 0                                   |w| >= lambda0/2
// In time, g(t) = (1/T) sinc(t/T) cos(pi beta t/T) / (1 - (2 beta t/T)^2)
// with T = 2/(1 + lambda0) and beta = (lambda0 - 1)/(lambda0 + 1).
// |g| decays like |t|^-3; the kernel is truncated at truncation_halfwidth()
// where the two-sided L1 tail bound drops below tail_tolerance().
class ReconstructionKernel {
 public:
  ReconstructionKernel(double lambda0, double tail_tolerance);

  double operator()(double t) const;
  double spectrum(double frequency) const;

  double lambda0() const { return lambda0_; }
  double rolloff() const { return beta_; }
  double symbol_period() const { return period_; }
  double truncation_halfwidth() const { return halfwidth_; }
  double tail_tolerance() const { return tail_tolerance_; }

  // g(0) = 1/T, the maximum of |g|.
  double peak() const { return 1.0 / period_; }

  // Untruncated closed form.
  double untruncated(double t) const;

 private:
  double lambda0_;
  double tail_tolerance_;
  double period_;
  double beta_;
  double halfwidth_;
};

// Throws std::invalid_argument unless lambda0 > 1 and tail_tolerance > 0.
ReconstructionKernel make_kernel(double lambda0 = 2.0,
                                 double tail_tolerance = 1e-6);

inline double eval_kernel(const ReconstructionKernel& k, double t) {
  return k(t);
}

// Samples f(n / rate) for n = start_index, start_index + 1, ...
struct SampleSequence {
  std::vector<double> values;
  double rate = 1.0;
  std::int64_t start_index = 1;
};

// values[i] = f((i + 1) / lambda), i = 0 .. n_samples - 1.
SampleSequence sample(const BandlimitedSignal& f, double lambda,
                      std::size_t n_samples);

// Equispaced evaluation points in [t_start, t_end]. burn_in_margin is the
// leading interval [0, burn_in_margin) excluded from evaluation; it must be at
// least the kernel truncation halfwidth and t_start must not precede it.
struct TimeGrid {
  double t_start = 0.0;
  double t_end = 0.0;
  std::size_t n_points = 0;
  double burn_in_margin = 0.0;

  std::vector<double> points() const;
};

// Grid of n_points over [t0, t0 + duration] with t0 = halfwidth + 1/lambda,
// so that every kernel window only touches indices n >= 1.
TimeGrid interior_grid(const ReconstructionKernel& k, double lambda,
                       double duration, std::size_t n_points);

// Number of samples (starting at n = 1) needed to cover every kernel window
// of the grid.
std::size_t samples_required(const ReconstructionKernel& k, double lambda,
                             const TimeGrid& grid);

// f~(t) = (1/lambda) sum_n q_n g(t - n/lambda) at each grid point, with q[i]
// holding index n = start_index + i. Throws std::invalid_argument when the
// grid violates the burn-in contract and std::out_of_range when the sample
// range does not cover a kernel window. jobs > 1 splits the grid across
// threads; the result does not depend on jobs.
std::vector<double> reconstruct(std::span<const double> q, double lambda,
                                const ReconstructionKernel& k,
                                const TimeGrid& grid,
                                std::int64_t start_index = 1,
                                unsigned jobs = 1);

std::vector<double> reconstruct(std::span<const int> q, double lambda,
                                const ReconstructionKernel& k,
                                const TimeGrid& grid,
                                std::int64_t start_index = 1,
                                unsigned jobs = 1);

}  // namespace quietsd

#endif  // QUIETSD_SIGNAL_MODEL_HPP_
