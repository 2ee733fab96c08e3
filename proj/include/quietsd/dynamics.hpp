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

#ifndef QUIETSD_DYNAMICS_HPP_
#define QUIETSD_DYNAMICS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace quietsd {

struct PlanePoint {
  double u = 0.0;
  double v = 0.0;

  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
  PlanePoint operator-() const { return {-u, -v}; }
};

inline double max_norm(const PlanePoint& x) {
  const double a = x.u < 0 ? -x.u : x.u;
  const double b = x.v < 0 ? -x.v : x.v;
  return a > b ? a : b;
}

struct MapStep {
  PlanePoint x;
  int q;
};

// Zero-input second-order map with A(u, v) = (u, u + v), c = (gamma, 1):
//   Ax + 1 if <c,x> <= -1/2;  Ax if |<c,x>| < 1/2;  Ax - 1 if <c,x> >= 1/2.
MapStep apply_T(const PlanePoint& x, double gamma);

// T(rho x) for every x: the uniformly damped (leaky) zero-input map.
MapStep apply_leaky(const PlanePoint& x, double gamma, double rho);

// Asymmetric map: T(rho x) when u >= 0, T(x) when u < 0.
MapStep apply_M(const PlanePoint& x, double gamma, double rho);

// Three affine regions with threshold tau:
//   Ax + 1 if <c,x> <= -tau;  A(rho x) if |<c,x>| < tau;
//   A(rho x) - 1 if <c,x> >= tau.
MapStep apply_three_region(const PlanePoint& x, double gamma, double rho,
                           double tau);

// y = (rho1 u, delta1 v); T(y) if <c,y> < 0, else T(rho1 rho2 u, delta1
// delta2 v).
MapStep apply_four_level(const PlanePoint& x, double gamma, double rho1,
                         double rho2, double delta1, double delta2);

enum class MapKind { T, M, leaky, three_region, four_level };

std::string to_string(MapKind kind);
// Throws std::invalid_argument on an unknown name.
MapKind parse_map_kind(const std::string& name);

struct MapSpec {
  MapKind kind = MapKind::M;
  double gamma = 2.0;
  double rho = 0.99;
  double tau = 0.5;
  double rho1 = 1.0;
  double rho2 = 1.0;
  double delta1 = 1.0;
  double delta2 = 0.99;

  // Throws std::invalid_argument for parameters outside the ranges of the
  // selected map.
  void validate() const;
  MapStep apply(const PlanePoint& x) const;
};

enum class RegionLabel { lambda_1, lambda_0_plus, lambda_0_minus, lambda_minus_1 };

std::string to_string(RegionLabel label);

// Partition by s = rho (gamma u + v): s >= 1/2, 0 <= s < 1/2, -1/2 < s < 0,
// s <= -1/2. rho = 1 gives the undamped partition.
RegionLabel classify_lambda_region(const PlanePoint& x, double gamma,
                                   double rho = 1.0);

enum class SetHalf { none, plus, minus };

// S+ = {-1/2 <= gamma u + v <= 1/2 + gamma, 0 <= u < 1}
// S- = {-(1/2 + gamma) <= gamma u + v <= 1/2, -1 <= u < 0}
SetHalf trapping_set_half(const PlanePoint& x, double gamma);
inline bool in_trapping_set_S(const PlanePoint& x, double gamma) {
  return trapping_set_half(x, gamma) != SetHalf::none;
}

// R1 = {gamma u + v >= 0, 2v + u <= 1, u <= 1/2}
// R2 = {gamma u + v < 0, 2v + u >= -1, u >= -1/2}
bool in_region_R(const PlanePoint& x, double gamma);

// V = u^2 + |2v - u| = max(V+, V-).
double lyapunov_V(const PlanePoint& x);
double lyapunov_V_plus(const PlanePoint& x);
double lyapunov_V_minus(const PlanePoint& x);

// True when the zero-input M-orbit from x provably never quantizes to a
// nonzero value again: u >= 0 and every |rho^{k+1} (gamma u + v + k u)| stays
// below 1/2 - margin.
bool quiet_certificate(const PlanePoint& x, double gamma, double rho,
                       double margin = 1e-9);

struct Period {
  std::size_t length;
  bool nontrivial;
};

// Looks at q[settle, settle + persist) and returns the least p <= max_period
// with q[n + p] == q[n] across that window. The window must hold at least two
// full cycles. nontrivial is set when the cycle holds a nonzero symbol.
// Throws std::invalid_argument if settle + persist exceeds q.size().
std::optional<Period> detect_period(std::span<const int> q,
                                    std::size_t max_period,
                                    std::size_t settle_horizon,
                                    std::size_t persist_horizon);

struct OrbitOptions {
  std::size_t max_iters = 100000;
  double conv_tol = 1e-9;
  // Number of trailing outputs fed to detect_period; 0 disables detection.
  std::size_t period_horizon = 0;
  std::size_t max_period = 100;
  bool stop_at_convergence = true;
  double overflow_bound = 1e12;
};

struct OrbitRecord {
  std::vector<PlanePoint> points;
  std::vector<int> q;
  std::optional<std::size_t> entered_S_at;
  std::optional<std::size_t> converged_at;
  std::optional<Period> period;
};

class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iterates the map from x0. Throws DivergenceError if the orbit leaves
// ||x||_inf <= overflow_bound or stops being finite.
OrbitRecord iterate_orbit(const PlanePoint& x0, const MapSpec& map,
                          const OrbitOptions& options = {});

// max_iters heuristic for convergence runs: ceil(200 / (1 - rho)).
std::size_t default_iteration_cap(double rho);

}  // namespace quietsd

#endif  // QUIETSD_DYNAMICS_HPP_
