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

#ifndef QUIETSD_ANALYSIS_HPP_
#define QUIETSD_ANALYSIS_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "quietsd/dynamics.hpp"
#include "quietsd/schemes.hpp"
#include "quietsd/signal_model.hpp"

namespace quietsd {

// n equispaced values from lo to hi inclusive (n = 1 gives {lo}).
std::vector<double> linspace(double lo, double hi, std::size_t n);

// max_j |f(t_j) - recon_j| over the grid points. Throws std::invalid_argument
// for an empty grid or a size mismatch.
double sup_error(const BandlimitedSignal& f, std::span<const double> recon,
                 const TimeGrid& grid);

struct SlopeFit {
  double slope;
  double intercept;
  // Root-mean-square residual of the fit in log space.
  double residual;
};

// Least-squares line through (log x_i, log y_i). Needs >= 3 points with all
// x_i, y_i > 0; throws std::invalid_argument otherwise.
SlopeFit loglog_fit(std::span<const double> x, std::span<const double> y);

inline SlopeFit fit_order_slope(std::span<const double> lambdas,
                                std::span<const double> errors) {
  return loglog_fit(lambdas, errors);
}

struct ErrorCurve {
  std::vector<double> lambdas;
  std::vector<double> sup_errors;
  double fitted_slope = 0.0;
  double fit_residual = 0.0;
};

struct ErrorSweepOptions {
  double lambda0 = 2.0;
  double tail_tolerance = 1e-6;
  // Length and resolution of the evaluated interior window.
  double duration = 20.0;
  std::size_t n_points = 512;
  unsigned jobs = 1;
};

// Quantizes samples of f at every rate with cfg (rho re-derived per rate under
// RhoPolicy::from_lambda), reconstructs on an interior grid, and fits the
// log-log slope of the sup error. lambdas must be strictly increasing.
ErrorCurve error_sweep(const BandlimitedSignal& f, const SchemeConfig& cfg,
                       std::span<const double> lambdas,
                       const ErrorSweepOptions& options = {});

enum class Window { rectangular, hann };

struct SpectrumBin {
  double frequency;
  double magnitude;
};

// |DFT| / N of the (optionally windowed) sequence, listed in increasing
// frequency from -1/(2 dt) up, frequencies in cycles per unit time. Needs at
// least 2 samples.
std::vector<SpectrumBin> spectrum(std::span<const double> samples,
                                  double sample_spacing,
                                  Window window = Window::rectangular);

enum class CellClass { converged, periodic, undecided };

std::string to_string(CellClass c);

struct TornadoCell {
  CellClass cls = CellClass::undecided;
  std::size_t period = 0;
};

struct TornadoGrid {
  std::vector<double> rho_values;
  std::vector<double> u0_values;
  // Row-major: cells[i * u0_values.size() + j] is (rho_i, u0_j).
  std::vector<TornadoCell> cells;

  const TornadoCell& at(std::size_t i, std::size_t j) const {
    return cells[i * u0_values.size() + j];
  }
  std::size_t count(CellClass c) const;
};

struct TornadoOptions {
  std::size_t settle = 100000;
  std::size_t persist = 100000;
  std::size_t max_period = 100;
  double conv_tol = 1e-9;
  unsigned jobs = 1;
};

// One orbit per (rho, u0) cell from (u0, v0) under map_template with its rho
// replaced. A cell converges if ||x||_inf < conv_tol within settle + persist
// iterations; otherwise the last persist outputs are classified by
// detect_period, and only a nontrivial cycle counts as periodic.
TornadoGrid tornado_sweep(const MapSpec& map_template,
                          std::span<const double> rho_grid,
                          std::span<const double> u0_grid, double v0,
                          const TornadoOptions& options = {});

TornadoCell classify_orbit(const MapSpec& map, const PlanePoint& x0,
                           const TornadoOptions& options);

struct StateBounds {
  double max_abs_u;
  double max_abs_v;
};

// Throws std::invalid_argument for an empty trace.
StateBounds boundedness_stats(const RunTrace& trace);

// Number of worker threads from QUIETSD_JOBS, or 1.
unsigned default_jobs();

}  // namespace quietsd

#endif  // QUIETSD_ANALYSIS_HPP_
