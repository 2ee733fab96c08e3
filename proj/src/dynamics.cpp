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

#include "quietsd/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "quietsd/quantizer.hpp"

namespace quietsd {

namespace {

// T applied to an already damped point (du, dv).
MapStep undamped_T(double du, double dv, double gamma) {
  const int q = quantize_tri(gamma * du + dv);
  return {{du - q, du + dv - q}, q};
}

}  // namespace

MapStep apply_T(const PlanePoint& x, double gamma) {
  return undamped_T(x.u, x.v, gamma);
}

MapStep apply_leaky(const PlanePoint& x, double gamma, double rho) {
  return undamped_T(rho * x.u, rho * x.v, gamma);
}

MapStep apply_M(const PlanePoint& x, double gamma, double rho) {
  if (x.u >= 0.0) return undamped_T(rho * x.u, rho * x.v, gamma);
  return undamped_T(x.u, x.v, gamma);
}

MapStep apply_three_region(const PlanePoint& x, double gamma, double rho,
                           double tau) {
  const double s = gamma * x.u + x.v;
  if (s <= -tau) return {{x.u + 1.0, x.u + x.v + 1.0}, -1};
  const double du = rho * x.u;
  const double dv = rho * x.v;
  if (s < tau) return {{du, du + dv}, 0};
  return {{du - 1.0, du + dv - 1.0}, 1};
}

MapStep apply_four_level(const PlanePoint& x, double gamma, double rho1,
                         double rho2, double delta1, double delta2) {
  const double yu = rho1 * x.u;
  const double yv = delta1 * x.v;
  if (gamma * yu + yv < 0.0) return undamped_T(yu, yv, gamma);
  return undamped_T(rho2 * yu, delta2 * yv, gamma);
}

std::string to_string(MapKind kind) {
  switch (kind) {
    case MapKind::T:
      return "T";
    case MapKind::M:
      return "M";
    case MapKind::leaky:
      return "leaky";
    case MapKind::three_region:
      return "three_region";
    case MapKind::four_level:
      return "four_level";
  }
  return "unknown";
}

MapKind parse_map_kind(const std::string& name) {
  if (name == "T") return MapKind::T;
  if (name == "M") return MapKind::M;
  if (name == "leaky") return MapKind::leaky;
  if (name == "three_region") return MapKind::three_region;
  if (name == "four_level") return MapKind::four_level;
  throw std::invalid_argument("unknown map kind '" + name + "'");
}

void MapSpec::validate() const {
  if (!(gamma >= 1.0 && std::isfinite(gamma))) {
    throw std::invalid_argument("map requires gamma >= 1");
  }
  auto unit_open = [](double r) { return r >= 0.0 && r < 1.0; };
  auto unit_half_open = [](double r) { return r > 0.0 && r <= 1.0; };
  switch (kind) {
    case MapKind::T:
      break;
    case MapKind::M:
    case MapKind::leaky:
      if (!unit_open(rho)) throw std::invalid_argument("rho must lie in [0, 1)");
      break;
    case MapKind::three_region:
      if (!unit_open(rho)) throw std::invalid_argument("rho must lie in [0, 1)");
      if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
      break;
    case MapKind::four_level:
      if (!unit_half_open(rho1) || !unit_half_open(rho2) ||
          !unit_half_open(delta1) || !unit_half_open(delta2)) {
        throw std::invalid_argument("four-level factors must lie in (0, 1]");
      }
      if (!(delta2 < 1.0)) throw std::invalid_argument("delta2 must be < 1");
      break;
  }
}

MapStep MapSpec::apply(const PlanePoint& x) const {
  switch (kind) {
    case MapKind::T:
      return apply_T(x, gamma);
    case MapKind::M:
      return apply_M(x, gamma, rho);
    case MapKind::leaky:
      return apply_leaky(x, gamma, rho);
    case MapKind::three_region:
      return apply_three_region(x, gamma, rho, tau);
    case MapKind::four_level:
      return apply_four_level(x, gamma, rho1, rho2, delta1, delta2);
  }
  return {x, 0};
}

std::string to_string(RegionLabel label) {
  switch (label) {
    case RegionLabel::lambda_1:
      return "Lambda_1";
    case RegionLabel::lambda_0_plus:
      return "Lambda_0+";
    case RegionLabel::lambda_0_minus:
      return "Lambda_0-";
    case RegionLabel::lambda_minus_1:
      return "Lambda_-1";
  }
  return "unknown";
}

RegionLabel classify_lambda_region(const PlanePoint& x, double gamma,
                                   double rho) {
  const double s = rho * (gamma * x.u + x.v);
  if (s >= 0.5) return RegionLabel::lambda_1;
  if (s <= -0.5) return RegionLabel::lambda_minus_1;
  if (s >= 0.0) return RegionLabel::lambda_0_plus;
  return RegionLabel::lambda_0_minus;
}

SetHalf trapping_set_half(const PlanePoint& x, double gamma) {
  const double s = gamma * x.u + x.v;
  if (x.u >= 0.0 && x.u < 1.0 && s >= -0.5 && s <= 0.5 + gamma) {
    return SetHalf::plus;
  }
  if (x.u >= -1.0 && x.u < 0.0 && s >= -(0.5 + gamma) && s <= 0.5) {
    return SetHalf::minus;
  }
  return SetHalf::none;
}

bool in_region_R(const PlanePoint& x, double gamma) {
  const double s = gamma * x.u + x.v;
  const double w = 2.0 * x.v + x.u;
  if (s >= 0.0) return w <= 1.0 && x.u <= 0.5;
  return w >= -1.0 && x.u >= -0.5;
}

double lyapunov_V(const PlanePoint& x) {
  return x.u * x.u + std::abs(2.0 * x.v - x.u);
}

double lyapunov_V_plus(const PlanePoint& x) {
  return x.u * x.u + 2.0 * x.v - x.u;
}

double lyapunov_V_minus(const PlanePoint& x) {
  return x.u * x.u - 2.0 * x.v + x.u;
}

bool quiet_certificate(const PlanePoint& x, double gamma, double rho,
                       double margin) {
  if (!(x.u >= 0.0) || !(rho >= 0.0 && rho < 1.0)) return false;
  const double limit = 0.5 - margin;
  const double a = gamma * x.u + x.v;
  // h(k) = rho^{k+1} (a + k u) over integers k >= 0.
  auto h = [&](double k) {
    return std::pow(rho, k + 1.0) * (a + k * x.u);
  };
  if (rho == 0.0) return true;
  if (std::abs(h(0.0)) >= limit) return false;
  if (x.u == 0.0) return true;
  // h is unimodal with its maximum at k* = 1/log(1/rho) - a/u; for a < 0 the
  // negative excursion is bounded by |h(0)|.
  const double k_star = 1.0 / -std::log(rho) - a / x.u;
  if (k_star <= 0.0) return true;
  const double lo = std::floor(k_star);
  return h(lo) < limit && h(lo + 1.0) < limit;
}

std::optional<Period> detect_period(std::span<const int> q,
                                    std::size_t max_period,
                                    std::size_t settle_horizon,
                                    std::size_t persist_horizon) {
  if (settle_horizon + persist_horizon > q.size()) {
    throw std::invalid_argument("period horizons exceed sequence length");
  }
  const std::size_t begin = settle_horizon;
  const std::size_t end = settle_horizon + persist_horizon;
  for (std::size_t p = 1; p <= max_period && 2 * p <= persist_horizon; ++p) {
    bool periodic = true;
    for (std::size_t n = begin; n + p < end; ++n) {
      if (q[n + p] != q[n]) {
        periodic = false;
        break;
      }
    }
    if (periodic) {
      const bool nontrivial =
          std::any_of(q.begin() + static_cast<std::ptrdiff_t>(begin),
                      q.begin() + static_cast<std::ptrdiff_t>(begin + p),
                      [](int s) { return s != 0; });
      return Period{p, nontrivial};
    }
  }
  return std::nullopt;
}

OrbitRecord iterate_orbit(const PlanePoint& x0, const MapSpec& map,
                          const OrbitOptions& options) {
  map.validate();
  if (options.max_iters < 1) {
    throw std::invalid_argument("max_iters must be at least 1");
  }
  OrbitRecord rec;
  rec.points.reserve(std::min<std::size_t>(options.max_iters + 1, 1 << 20));
  rec.points.push_back(x0);
  auto observe = [&](const PlanePoint& x, std::size_t n) {
    if (!std::isfinite(x.u) || !std::isfinite(x.v) ||
        max_norm(x) > options.overflow_bound) {
      throw DivergenceError("orbit diverged at iteration " + std::to_string(n));
    }
    if (!rec.entered_S_at && in_trapping_set_S(x, map.gamma)) {
      rec.entered_S_at = n;
    }
    if (!rec.converged_at && max_norm(x) < options.conv_tol) {
      rec.converged_at = n;
    }
  };
  observe(x0, 0);
  PlanePoint x = x0;
  for (std::size_t n = 1; n <= options.max_iters; ++n) {
    if (rec.converged_at && options.stop_at_convergence) break;
    const MapStep step = map.apply(x);
    x = step.x;
    rec.q.push_back(step.q);
    rec.points.push_back(x);
    observe(x, n);
  }
  if (options.period_horizon > 0 && rec.q.size() >= options.period_horizon) {
    rec.period = detect_period(rec.q, options.max_period,
                               rec.q.size() - options.period_horizon,
                               options.period_horizon);
  }
  return rec;
}

std::size_t default_iteration_cap(double rho) {
  return static_cast<std::size_t>(std::ceil(200.0 / (1.0 - rho)));
}

}  // namespace quietsd
