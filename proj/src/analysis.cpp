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

#include "quietsd/analysis.hpp"

#include <fftw3.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace quietsd {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  if (n > 1) out.back() = hi;
  return out;
}

double sup_error(const BandlimitedSignal& f, std::span<const double> recon,
                 const TimeGrid& grid) {
  if (grid.n_points == 0) throw std::invalid_argument("empty interior grid");
  if (recon.size() != grid.n_points) {
    throw std::invalid_argument("reconstruction does not match grid size");
  }
  const auto pts = grid.points();
  double worst = 0.0;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    worst = std::max(worst, std::abs(f(pts[j]) - recon[j]));
  }
  return worst;
}

SlopeFit loglog_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("size mismatch");
  if (x.size() < 3) throw std::invalid_argument("slope fit needs >= 3 points");
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw std::invalid_argument("slope fit needs positive values");
    }
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope fit needs distinct x");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(n));
  return fit;
}

ErrorCurve error_sweep(const BandlimitedSignal& f, const SchemeConfig& cfg,
                       std::span<const double> lambdas,
                       const ErrorSweepOptions& options) {
  for (std::size_t i = 1; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > lambdas[i - 1])) {
      throw std::invalid_argument("lambdas must be strictly increasing");
    }
  }
  const auto kernel = make_kernel(options.lambda0, options.tail_tolerance);
  ErrorCurve curve;
  curve.lambdas.assign(lambdas.begin(), lambdas.end());
  for (double lambda : lambdas) {
    SchemeConfig c = cfg;
    c.lambda = lambda;
    const auto grid =
        interior_grid(kernel, lambda, options.duration, options.n_points);
    const auto samples = sample(f, lambda, samples_required(kernel, lambda, grid));
    const auto trace = run(samples, c);
    const auto recon =
        reconstruct(std::span<const int>(trace.q), lambda, kernel, grid,
                    samples.start_index, options.jobs);
    curve.sup_errors.push_back(sup_error(f, recon, grid));
  }
  if (curve.lambdas.size() >= 3) {
    const auto fit = loglog_fit(curve.lambdas, curve.sup_errors);
    curve.fitted_slope = fit.slope;
    curve.fit_residual = fit.residual;
  }
  return curve;
}

std::vector<SpectrumBin> spectrum(std::span<const double> samples,
                                  double sample_spacing, Window window) {
  const std::size_t n = samples.size();
  if (n < 2) throw std::invalid_argument("spectrum needs at least 2 samples");
  if (!(sample_spacing > 0.0)) {
    throw std::invalid_argument("sample spacing must be positive");
  }
  auto* in = fftw_alloc_complex(n);
  auto* out = fftw_alloc_complex(n);
  for (std::size_t i = 0; i < n; ++i) {
    double w = 1.0;
    if (window == Window::hann) {
      w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                static_cast<double>(n - 1)));
    }
    in[i][0] = samples[i] * w;
    in[i][1] = 0.0;
  }
  // Planner calls are not thread-safe.
  static std::mutex planner_mutex;
  fftw_plan plan;
  {
    const std::lock_guard lock(planner_mutex);
    plan = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_FORWARD,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);

  std::vector<SpectrumBin> bins(n);
  const double span = static_cast<double>(n) * sample_spacing;
  const std::size_t positive = (n + 1) / 2;  // bins 0 .. positive-1 are >= 0
  for (std::size_t k = 0; k < n; ++k) {
    const double mag = std::hypot(out[k][0], out[k][1]) / static_cast<double>(n);
    const double freq = k < positive
                            ? static_cast<double>(k) / span
                            : -static_cast<double>(n - k) / span;
    // Negative frequencies first, then 0 and up.
    const std::size_t slot = k < positive ? k + (n - positive) : k - positive;
    bins[slot] = {freq, mag};
  }
  {
    const std::lock_guard lock(planner_mutex);
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
  return bins;
}

std::string to_string(CellClass c) {
  switch (c) {
    case CellClass::converged:
      return "converged";
    case CellClass::periodic:
      return "periodic";
    case CellClass::undecided:
      return "undecided";
  }
  return "unknown";
}

std::size_t TornadoGrid::count(CellClass c) const {
  return static_cast<std::size_t>(std::count_if(
      cells.begin(), cells.end(),
      [c](const TornadoCell& cell) { return cell.cls == c; }));
}

TornadoCell classify_orbit(const MapSpec& map, const PlanePoint& x0,
                           const TornadoOptions& options) {
  std::vector<int> tail(options.persist);
  PlanePoint x = x0;
  const std::size_t total = options.settle + options.persist;
  for (std::size_t n = 0; n < total; ++n) {
    if (max_norm(x) < options.conv_tol) return {CellClass::converged, 0};
    const MapStep step = map.apply(x);
    x = step.x;
    if (!std::isfinite(x.u) || !std::isfinite(x.v)) {
      return {CellClass::undecided, 0};
    }
    if (n >= options.settle) tail[n - options.settle] = step.q;
  }
  if (max_norm(x) < options.conv_tol) return {CellClass::converged, 0};
  const auto period = detect_period(tail, options.max_period, 0, options.persist);
  if (period && period->nontrivial) {
    return {CellClass::periodic, period->length};
  }
  return {CellClass::undecided, 0};
}

TornadoGrid tornado_sweep(const MapSpec& map_template,
                          std::span<const double> rho_grid,
                          std::span<const double> u0_grid, double v0,
                          const TornadoOptions& options) {
  if (rho_grid.empty() || u0_grid.empty()) {
    throw std::invalid_argument("tornado grids must be nonempty");
  }
  TornadoGrid grid;
  grid.rho_values.assign(rho_grid.begin(), rho_grid.end());
  grid.u0_values.assign(u0_grid.begin(), u0_grid.end());
  const std::size_t total = rho_grid.size() * u0_grid.size();
  grid.cells.resize(total);
  for (double rho : rho_grid) {
    MapSpec m = map_template;
    m.rho = rho;
    m.validate();
  }
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      MapSpec m = map_template;
      m.rho = rho_grid[idx / u0_grid.size()];
      const PlanePoint x0{u0_grid[idx % u0_grid.size()], v0};
      grid.cells[idx] = classify_orbit(m, x0, options);
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(options.jobs, 1, total);
  if (workers == 1) {
    work(0, total);
  } else {
    // Interleaved chunks balance cheap converging cells against long ones.
    std::vector<std::jthread> pool;
    const std::size_t chunk = 16;
    std::atomic<std::size_t> next{0};
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t b = next.fetch_add(chunk);
          if (b >= total) return;
          work(b, std::min(total, b + chunk));
        }
      });
    }
  }
  return grid;
}

StateBounds boundedness_stats(const RunTrace& trace) {
  if (trace.size() == 0) throw std::invalid_argument("empty trace");
  StateBounds b{0.0, 0.0};
  for (std::size_t i = 0; i < trace.size(); ++i) {
    b.max_abs_u = std::max(b.max_abs_u, std::abs(trace.u[i]));
    b.max_abs_v = std::max(b.max_abs_v, std::abs(trace.v[i]));
  }
  return b;
}

unsigned default_jobs() {
  if (const char* env = std::getenv("QUIETSD_JOBS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && n > 0) return static_cast<unsigned>(n);
  }
  return 1;
}

}  // namespace quietsd
