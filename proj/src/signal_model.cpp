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

#include "quietsd/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

namespace quietsd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSingularEps = 1e-8;

double sinc(double x) {
  if (std::abs(x) < kSingularEps) return 1.0 - (kPi * x) * (kPi * x) / 6.0;
  return std::sin(kPi * x) / (kPi * x);
}

}  // namespace

BandlimitedSignal::BandlimitedSignal(std::vector<ToneTerm> terms,
                                     double amplitude_bound)
    : terms_(std::move(terms)), amplitude_bound_(amplitude_bound) {
  if (!(amplitude_bound_ >= 0.0 && amplitude_bound_ < 1.0)) {
    throw std::invalid_argument("amplitude bound must lie in [0, 1)");
  }
  double total = 0.0;
  for (const auto& term : terms_) {
    if (!std::isfinite(term.amplitude) || !std::isfinite(term.phase) ||
        !(std::abs(term.frequency) < 0.5)) {
      throw std::invalid_argument("tone term outside the band |w| < 1/2");
    }
    total += std::abs(term.amplitude);
  }
  if (total > amplitude_bound_ * (1.0 + 1e-15)) {
    throw std::invalid_argument("sum of |amplitude| exceeds amplitude bound " +
                                std::to_string(amplitude_bound_));
  }
}

BandlimitedSignal BandlimitedSignal::from_terms(std::vector<ToneTerm> terms) {
  double total = 0.0;
  for (const auto& term : terms) total += std::abs(term.amplitude);
  return BandlimitedSignal(std::move(terms), total);
}

double BandlimitedSignal::operator()(double t) const {
  double value = 0.0;
  for (const auto& term : terms_) {
    value += term.amplitude *
             std::cos(2.0 * kPi * term.frequency * t + term.phase);
  }
  return value;
}

BandlimitedSignal default_tone() {
  return BandlimitedSignal({{0.5, 0.2, 0.0}}, 0.5);
}

ReconstructionKernel::ReconstructionKernel(double lambda0,
                                           double tail_tolerance)
    : lambda0_(lambda0), tail_tolerance_(tail_tolerance) {
  if (!(lambda0 > 1.0) || !std::isfinite(lambda0)) {
    throw std::invalid_argument("kernel requires lambda0 > 1");
  }
  if (!(tail_tolerance > 0.0)) {
    throw std::invalid_argument("kernel requires tail_tolerance > 0");
  }
  period_ = 2.0 / (1.0 + lambda0);
  beta_ = (lambda0 - 1.0) / (lambda0 + 1.0);
  // For a|t| > 1, |g(t)| <= 1 / (pi |t| (a^2 t^2 - 1)) with a = 2 beta / T.
  // Integrating both tails from H gives -(1/pi) log(1 - 1/(a H)^2).
  const double a = 2.0 * beta_ / period_;
  halfwidth_ = 1.0 / (a * std::sqrt(-std::expm1(-kPi * tail_tolerance)));
}

double ReconstructionKernel::untruncated(double t) const {
  const double x = std::abs(t) / period_;
  const double y = 2.0 * beta_ * x;
  const double denom = 1.0 - y * y;
  double shaped;
  if (std::abs(denom) < kSingularEps) {
    // cos(pi y / 2) / (1 - y^2) -> pi/4 as y -> 1.
    shaped = kPi / 4.0;
  } else {
    shaped = std::cos(kPi * beta_ * x) / denom;
  }
  return sinc(x) * shaped / period_;
}

double ReconstructionKernel::operator()(double t) const {
  if (std::abs(t) > halfwidth_) return 0.0;
  return untruncated(t);
}

double ReconstructionKernel::spectrum(double frequency) const {
  const double w = std::abs(frequency);
  if (w <= 0.5) return 1.0;
  if (w >= lambda0_ / 2.0) return 0.0;
  const double c = std::cos(kPi * (w - 0.5) / (lambda0_ - 1.0));
  return c * c;
}

ReconstructionKernel make_kernel(double lambda0, double tail_tolerance) {
  return ReconstructionKernel(lambda0, tail_tolerance);
}

SampleSequence sample(const BandlimitedSignal& f, double lambda,
                      std::size_t n_samples) {
  if (!(lambda >= 1.0)) {
    throw std::invalid_argument("sampling rate must satisfy lambda >= 1");
  }
  SampleSequence out;
  out.rate = lambda;
  out.start_index = 1;
  out.values.resize(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    out.values[i] = f(static_cast<double>(i + 1) / lambda);
  }
  return out;
}

std::vector<double> TimeGrid::points() const {
  std::vector<double> pts(n_points);
  if (n_points == 1) {
    pts[0] = t_start;
    return pts;
  }
  const double step =
      (t_end - t_start) / static_cast<double>(n_points > 0 ? n_points - 1 : 1);
  for (std::size_t i = 0; i < n_points; ++i) {
    pts[i] = t_start + step * static_cast<double>(i);
  }
  if (n_points > 1) pts.back() = t_end;
  return pts;
}

TimeGrid interior_grid(const ReconstructionKernel& k, double lambda,
                       double duration, std::size_t n_points) {
  TimeGrid grid;
  grid.burn_in_margin = k.truncation_halfwidth();
  grid.t_start = grid.burn_in_margin + 1.0 / lambda;
  grid.t_end = grid.t_start + duration;
  grid.n_points = n_points;
  return grid;
}

std::size_t samples_required(const ReconstructionKernel& k, double lambda,
                             const TimeGrid& grid) {
  const double last = std::floor(lambda * (grid.t_end + k.truncation_halfwidth()));
  return last < 1.0 ? 0 : static_cast<std::size_t>(last);
}

namespace {

// Kernel rows g(t - n/lambda) for consecutive n share a fixed angle step, so
// the trigonometric factors are rebuilt from per-rate tables by the addition
// formulas instead of calling sin/cos per term.
class LatticeTables {
 public:
  LatticeTables(const ReconstructionKernel& k, double lambda,
                std::size_t max_terms)
      : kernel_(k), lambda_(lambda) {
    const double step = kPi / (lambda * k.symbol_period());
    const double beta_step = k.rolloff() * step;
    cos_step_.resize(max_terms);
    sin_step_.resize(max_terms);
    cos_beta_.resize(max_terms);
    sin_beta_.resize(max_terms);
    for (std::size_t i = 0; i < max_terms; ++i) {
      const double di = static_cast<double>(i);
      cos_step_[i] = std::cos(di * step);
      sin_step_[i] = std::sin(di * step);
      cos_beta_[i] = std::cos(di * beta_step);
      sin_beta_[i] = std::sin(di * beta_step);
    }
  }

  // (1/lambda) sum_{n=lo}^{hi} q[n - start] g(t - n/lambda)
  double weighted_sum(double t, std::int64_t lo, std::int64_t hi,
                      std::span<const double> q, std::int64_t start) const {
    const double period = kernel_.symbol_period();
    const double beta = kernel_.rolloff();
    const double halfwidth = kernel_.truncation_halfwidth();
    const double s0 = t - static_cast<double>(lo) / lambda_;
    const double theta0 = kPi * s0 / period;
    const double sin_t0 = std::sin(theta0);
    const double cos_t0 = std::cos(theta0);
    const double sin_p0 = std::sin(beta * theta0);
    const double cos_p0 = std::cos(beta * theta0);
    double acc = 0.0;
    for (std::int64_t n = lo; n <= hi; ++n) {
      const std::size_t i = static_cast<std::size_t>(n - lo);
      const double s = t - static_cast<double>(n) / lambda_;
      if (std::abs(s) > halfwidth) continue;
      const double qn = q[static_cast<std::size_t>(n - start)];
      if (qn == 0.0) continue;
      const double theta = kPi * s / period;
      const double y = 2.0 * beta * s / period;
      const double denom = 1.0 - y * y;
      double g;
      if (std::abs(theta) < kSingularEps || std::abs(denom) < kSingularEps) {
        g = kernel_.untruncated(s);
      } else {
        const double sin_theta = sin_t0 * cos_step_[i] - cos_t0 * sin_step_[i];
        const double cos_phi = cos_p0 * cos_beta_[i] + sin_p0 * sin_beta_[i];
        g = (sin_theta / theta) * cos_phi / denom / period;
      }
      acc += qn * g;
    }
    return acc / lambda_;
  }

 private:
  const ReconstructionKernel& kernel_;
  double lambda_;
  std::vector<double> cos_step_, sin_step_, cos_beta_, sin_beta_;
};

}  // namespace

std::vector<double> reconstruct(std::span<const double> q, double lambda,
                                const ReconstructionKernel& k,
                                const TimeGrid& grid, std::int64_t start_index,
                                unsigned jobs) {
  if (!(lambda >= k.lambda0())) {
    throw std::invalid_argument("reconstruction requires lambda >= lambda0");
  }
  const double halfwidth = k.truncation_halfwidth();
  if (grid.burn_in_margin < halfwidth) {
    throw std::invalid_argument(
        "burn-in margin shorter than kernel truncation halfwidth");
  }
  if (grid.n_points > 0 && grid.t_start < grid.burn_in_margin) {
    throw std::invalid_argument("grid starts inside the burn-in interval");
  }
  const auto pts = grid.points();
  const std::int64_t first = start_index;
  const std::int64_t last = start_index + static_cast<std::int64_t>(q.size()) - 1;

  std::vector<std::int64_t> lo(pts.size()), hi(pts.size());
  std::size_t max_terms = 1;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    lo[j] = static_cast<std::int64_t>(std::ceil(lambda * (pts[j] - halfwidth)));
    hi[j] = static_cast<std::int64_t>(std::floor(lambda * (pts[j] + halfwidth)));
    if (lo[j] < first || hi[j] > last) {
      throw std::out_of_range(
          "sample indices do not cover the kernel window at t = " +
          std::to_string(pts[j]));
    }
    max_terms = std::max<std::size_t>(max_terms, hi[j] - lo[j] + 1);
  }

  const LatticeTables tables(k, lambda, max_terms);
  std::vector<double> out(pts.size(), 0.0);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      out[j] = tables.weighted_sum(pts[j], lo[j], hi[j], q, first);
    }
  };
  const std::size_t workers =
      std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(pts.size(), 1));
  if (workers == 1) {
    work(0, pts.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (pts.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t b = w * chunk;
      const std::size_t e = std::min(pts.size(), b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
  }
  return out;
}

std::vector<double> reconstruct(std::span<const int> q, double lambda,
                                const ReconstructionKernel& k,
                                const TimeGrid& grid, std::int64_t start_index,
                                unsigned jobs) {
  const std::vector<double> as_real(q.begin(), q.end());
  return reconstruct(std::span<const double>(as_real), lambda, k, grid,
                     start_index, jobs);
}

}  // namespace quietsd
