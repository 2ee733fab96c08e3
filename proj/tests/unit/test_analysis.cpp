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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "quietsd/analysis.hpp"
#include "support/fixtures.hpp"

using namespace quietsd;
using Catch::Approx;
using quietsd::testing::uniform;

namespace {

const SpectrumBin& peak(const std::vector<SpectrumBin>& bins) {
  return *std::max_element(bins.begin(), bins.end(), [](const auto& a, const auto& b) {
    return a.magnitude < b.magnitude;
  });
}

std::vector<double> tail_of(const std::vector<int>& q, std::size_t n) {
  return std::vector<double>(q.end() - static_cast<std::ptrdiff_t>(n), q.end());
}

}  // namespace

TEST_CASE("linspace", "[analysis]") {
  CHECK(linspace(0.0, 1.0, 5) == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(linspace(3.0, 7.0, 1) == std::vector<double>{3.0});
  const auto r = linspace(0.96, 0.999, 50);
  CHECK(r.front() == 0.96);
  CHECK(r.back() == 0.999);
}

TEST_CASE("sup error examples", "[analysis]") {
  const auto k = make_kernel();
  const double lambda = 8.0;
  const auto grid = interior_grid(k, lambda, 5.0, 64);
  const auto f = default_tone();
  const auto s = sample(f, lambda, samples_required(k, lambda, grid));
  CHECK(sup_error(f, reconstruct(s.values, lambda, k, grid), grid) <=
        10.0 * k.tail_tolerance());

  const BandlimitedSignal zero({}, 0.0);
  const std::vector<double> qz(samples_required(k, lambda, grid), 0.0);
  CHECK(sup_error(zero, reconstruct(qz, lambda, k, grid), grid) == 0.0);

  TimeGrid empty;
  CHECK_THROWS_AS(sup_error(f, {}, empty), std::invalid_argument);
  const std::vector<double> wrong(3, 0.0);
  CHECK_THROWS_AS(sup_error(f, wrong, grid), std::invalid_argument);
}

TEST_CASE("slope fit examples", "[analysis]") {
  const std::vector<double> l{32, 64, 128, 256};
  std::vector<double> e2, e1;
  for (double x : l) {
    e2.push_back(std::pow(x, -2.0));
    e1.push_back(1.0 / x);
  }
  auto fit = fit_order_slope(l, e2);
  CHECK(fit.slope == Approx(-2.0).epsilon(1e-12));
  CHECK(fit.residual <= 1e-12);
  CHECK(fit_order_slope(l, e1).slope == Approx(-1.0).epsilon(1e-12));

  const std::vector<double> bad{1e-3, 0.0, 1e-4, 1e-5};
  CHECK_THROWS_AS(fit_order_slope(l, bad), std::invalid_argument);
  const std::vector<double> neg{1e-3, -1e-3, 1e-4, 1e-5};
  CHECK_THROWS_AS(fit_order_slope(l, neg), std::invalid_argument);
  const std::vector<double> two_l{1, 2}, two_e{1, 2};
  CHECK_THROWS_AS(fit_order_slope(two_l, two_e), std::invalid_argument);
}

TEST_CASE("property: slope is invariant under error scaling", "[analysis][property]") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> l, e, scaled;
    double x = uniform(rng, 1.0, 10.0);
    const double c = std::exp(uniform(rng, -10.0, 10.0));
    for (int i = 0; i < 6; ++i) {
      x *= uniform(rng, 1.2, 3.0);
      l.push_back(x);
      e.push_back(std::exp(uniform(rng, -8.0, 0.0)));
      scaled.push_back(c * e.back());
    }
    const auto a = loglog_fit(l, e);
    const auto b = loglog_fit(l, scaled);
    CHECK(a.slope == Approx(b.slope).margin(1e-9));
    CHECK(a.residual == Approx(b.residual).margin(1e-9));
    CHECK(b.intercept - a.intercept == Approx(std::log(c)).margin(1e-9));
  }
}

TEST_CASE("second-order standard sweep is second order", "[analysis]") {
  SchemeConfig cfg;
  cfg.gamma = 2.0;
  const std::vector<double> l{32, 64, 128, 256};
  const auto curve = error_sweep(default_tone(), cfg, l);
  REQUIRE(curve.sup_errors.size() == 4);
  CHECK(curve.fitted_slope >= -2.3);
  CHECK(curve.fitted_slope <= -1.7);
  for (std::size_t i = 1; i < 4; ++i) CHECK(curve.sup_errors[i] < curve.sup_errors[i - 1]);
}

TEST_CASE("leaky second order with rho = 1 - 1/lambda keeps second order", "[analysis]") {
  SchemeConfig cfg;
  cfg.variant = Variant::leaky;
  cfg.gamma = 2.0;
  cfg.rho_policy = RhoPolicy::from_lambda;
  cfg.lambda = 32.0;
  const std::vector<double> l{32, 64, 128, 256};
  const auto curve = error_sweep(default_tone(), cfg, l);
  CHECK(curve.fitted_slope >= -2.3);
  CHECK(curve.fitted_slope <= -1.7);
}

TEST_CASE("error sweep argument checks", "[analysis]") {
  SchemeConfig cfg;
  const std::vector<double> unordered{64, 32, 128};
  CHECK_THROWS_AS(error_sweep(default_tone(), cfg, unordered), std::invalid_argument);
  const std::vector<double> below{1.5, 32, 64};
  CHECK_THROWS(error_sweep(default_tone(), cfg, below));
}

TEST_CASE("spectrum examples", "[analysis]") {
  const std::vector<double> c(64, 0.7);
  const auto bins = spectrum(c, 0.5);
  REQUIRE(bins.size() == 64);
  CHECK(bins.front().frequency == Approx(-1.0));
  for (const auto& b : bins) {
    if (b.frequency == 0.0) {
      CHECK(b.magnitude == Approx(0.7));
    } else {
      CHECK(b.magnitude <= 1e-12);
    }
  }

  const double dt = 0.01;
  std::vector<double> tone(1000);
  for (std::size_t n = 0; n < tone.size(); ++n) {
    tone[n] = std::cos(2.0 * std::numbers::pi * 12.0 * dt * static_cast<double>(n));
  }
  CHECK(std::abs(peak(spectrum(tone, dt)).frequency) == Approx(12.0));
  CHECK(std::abs(peak(spectrum(tone, dt, Window::hann)).frequency) == Approx(12.0));

  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(spectrum(one, 1.0), std::invalid_argument);
}

TEST_CASE("property: real spectra are symmetric", "[analysis][property]") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> x(64 + t);
    for (auto& s : x) s = uniform(rng, -1.0, 1.0);
    const auto bins = spectrum(x, 1.0, t % 2 ? Window::hann : Window::rectangular);
    for (const auto& b : bins) {
      if (b.frequency == 0.0) continue;
      const auto mirror = std::find_if(bins.begin(), bins.end(), [&](const auto& o) {
        return std::abs(o.frequency + b.frequency) < 1e-12;
      });
      if (mirror == bins.end()) continue;  // the lone Nyquist bin of even N
      CHECK(mirror->magnitude == Approx(b.magnitude).margin(1e-12));
    }
  }
}

TEST_CASE("idle tone spikes vs quiet decay", "[analysis]") {
  const double lambda = 64.0;
  const std::vector<double> zeros(20000, 0.0);
  SchemeConfig standard;
  standard.gamma = 2.0;
  const auto ts = run(zeros, standard, {0.5, 0.3});
  const auto s_std = spectrum(tail_of(ts.q, 4096), 1.0 / lambda);
  const auto& p = peak(s_std);
  CHECK(p.magnitude >= 0.5);
  CHECK(std::abs(p.frequency) == Approx(lambda / 2.0));

  SchemeConfig quiet = standard;
  quiet.variant = Variant::quiet;
  quiet.rho = 0.99;
  const auto tq = run(zeros, quiet, {0.5, 0.3});
  const auto s_q = spectrum(tail_of(tq.q, 4096), 1.0 / lambda);
  for (const auto& b : s_q) CHECK(b.magnitude == 0.0);
}

TEST_CASE("tornado sweeps", "[analysis]") {
  TornadoOptions opts;
  opts.settle = 10000;
  opts.persist = 10000;
  const auto rhos = linspace(0.96, 0.999, 6);
  const auto u0s = linspace(-2.0, 0.0, 6);

  MapSpec m;
  m.kind = MapKind::M;
  const auto gm = tornado_sweep(m, rhos, u0s, 0.0, opts);
  CHECK(gm.cells.size() == 36);
  CHECK(gm.count(CellClass::periodic) == 0);

  MapSpec leaky = m;
  leaky.kind = MapKind::leaky;
  const auto gl = tornado_sweep(leaky, rhos, u0s, 0.0, opts);
  CHECK(gl.count(CellClass::periodic) >= 1);
  CHECK(gl.count(CellClass::periodic) + gl.count(CellClass::converged) +
            gl.count(CellClass::undecided) ==
        36);
  for (const auto& c : gl.cells) {
    if (c.cls == CellClass::periodic) CHECK(c.period >= 1);
  }

  const std::vector<double> zero_rho{0.0};
  const auto g0 = tornado_sweep(leaky, zero_rho, u0s, 0.0, opts);
  CHECK(g0.count(CellClass::converged) == u0s.size());

  const std::vector<double> none;
  CHECK_THROWS_AS(tornado_sweep(m, none, u0s, 0.0, opts), std::invalid_argument);
  const std::vector<double> bad_rho{1.0};
  CHECK_THROWS_AS(tornado_sweep(m, bad_rho, u0s, 0.0, opts), std::invalid_argument);
}

TEST_CASE("property: tornado result does not depend on jobs", "[analysis][property]") {
  TornadoOptions opts;
  opts.settle = 4000;
  opts.persist = 4000;
  MapSpec leaky;
  leaky.kind = MapKind::leaky;
  const auto rhos = linspace(0.96, 0.999, 7);
  const auto u0s = linspace(-2.0, 0.0, 5);
  const auto a = tornado_sweep(leaky, rhos, u0s, 0.0, opts);
  opts.jobs = 3;
  const auto b = tornado_sweep(leaky, rhos, u0s, 0.0, opts);
  REQUIRE(a.cells.size() == b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].cls == b.cells[i].cls);
    CHECK(a.cells[i].period == b.cells[i].period);
  }
  CHECK(a.at(2, 3).cls == a.cells[2 * 5 + 3].cls);
}

TEST_CASE("boundedness stats", "[analysis]") {
  SchemeConfig first;
  first.order = 1;
  const std::vector<double> zeros(100, 0.0);
  const auto b0 = boundedness_stats(run(zeros, first));
  CHECK(b0.max_abs_u == 0.0);
  CHECK(b0.max_abs_v == 0.0);

  std::mt19937_64 rng(23);
  std::vector<double> f(10000);
  for (auto& x : f) x = uniform(rng, -1.0, 1.0);
  CHECK(boundedness_stats(run(f, first)).max_abs_v <= 1.5);

  CHECK_THROWS_AS(boundedness_stats(RunTrace{}), std::invalid_argument);
}

TEST_CASE("jobs default from the environment", "[analysis]") {
  ::setenv("QUIETSD_JOBS", "3", 1);
  CHECK(default_jobs() == 3);
  ::setenv("QUIETSD_JOBS", "zero", 1);
  CHECK(default_jobs() == 1);
  ::unsetenv("QUIETSD_JOBS");
  CHECK(default_jobs() == 1);
}
