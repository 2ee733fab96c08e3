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

#include "quietsd/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "quietsd/quantizer.hpp"

namespace quietsd {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::standard:
      return "standard";
    case Variant::leaky:
      return "leaky";
    case Variant::quiet:
      return "quiet";
  }
  return "unknown";
}

Variant parse_variant(const std::string& name) {
  if (name == "standard") return Variant::standard;
  if (name == "leaky") return Variant::leaky;
  if (name == "quiet") return Variant::quiet;
  throw std::invalid_argument("unknown variant '" + name + "'");
}

void SchemeConfig::validate() const {
  if (order >= 3) {
    throw std::invalid_argument("order >= 3 unsupported");
  }
  if (order != 1 && order != 2) {
    throw std::invalid_argument("order must be 1 or 2");
  }
  if (variant == Variant::quiet && order != 2) {
    throw std::invalid_argument("quiet variant requires order 2");
  }
  if (order == 2 && !(gamma >= 1.0 && std::isfinite(gamma))) {
    throw std::invalid_argument("gamma must satisfy gamma >= 1");
  }
  if (variant != Variant::standard) {
    if (rho_policy == RhoPolicy::from_lambda) {
      if (!(lambda >= 1.0)) {
        throw std::invalid_argument("rho from lambda requires lambda >= 1");
      }
    } else if (!(rho >= 0.0 && rho < 1.0)) {
      throw std::invalid_argument("rho must lie in [0, 1)");
    }
  }
}

double SchemeConfig::damping() const {
  if (variant == Variant::standard) return 1.0;
  if (rho_policy == RhoPolicy::from_lambda) return 1.0 - 1.0 / lambda;
  return rho;
}

FirstOrderStep step_first_order(double v, double f, double rho) {
  const double w = rho * v + f;
  const int q = quantize_tri(w);
  return {w - q, q};
}

SecondOrderStep step_second_order(const SchemeState& s, double f,
                                  const SchemeConfig& cfg) {
  double r = 1.0;
  switch (cfg.variant) {
    case Variant::standard:
      break;
    case Variant::leaky:
      r = cfg.damping();
      break;
    case Variant::quiet:
      r = s.u >= 0.0 ? cfg.damping() : 1.0;
      break;
  }
  const double du = r * s.u;
  const double dv = r * s.v;
  const int q = quantize_tri(cfg.gamma * du + dv);
  SecondOrderStep out;
  out.q = q;
  out.rho_applied = r;
  out.state.u = du + f - q;
  out.state.v = du + dv + f - q;
  return out;
}

RunTrace run(std::span<const double> samples, const SchemeConfig& cfg,
             const SchemeState& s0) {
  cfg.validate();
  RunTrace trace;
  trace.order = cfg.order;
  trace.initial = s0;
  const std::size_t n = samples.size();
  trace.f.assign(samples.begin(), samples.end());
  trace.q.resize(n);
  trace.u.resize(n);
  trace.v.resize(n);
  trace.rho_applied.resize(n);

  SchemeState s = s0;
  if (cfg.order == 1) {
    const double r = cfg.damping();
    for (std::size_t i = 0; i < n; ++i) {
      const auto step = step_first_order(s.v, samples[i], r);
      s.v = step.v;
      trace.q[i] = step.q;
      trace.u[i] = s.u;
      trace.v[i] = s.v;
      trace.rho_applied[i] = r;
    }
    return trace;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto step = step_second_order(s, samples[i], cfg);
    s = step.state;
    trace.q[i] = step.q;
    trace.u[i] = s.u;
    trace.v[i] = s.v;
    trace.rho_applied[i] = step.rho_applied;
  }
  return trace;
}

RunTrace run(const SampleSequence& samples, const SchemeConfig& cfg,
             const SchemeState& s0) {
  return run(std::span<const double>(samples.values), cfg, s0);
}

double verify_difference_relation(const RunTrace& trace, int order) {
  const std::size_t n = trace.f.size();
  if (trace.q.size() != n || trace.u.size() != n || trace.v.size() != n ||
      trace.rho_applied.size() != n) {
    throw std::invalid_argument("trace sequences have mismatched lengths");
  }
  if (order != trace.order) {
    throw std::invalid_argument("trace order does not match requested order");
  }
  if (order != 1 && order != 2) {
    throw std::invalid_argument("difference relation defined for orders 1, 2");
  }
  auto u_at = [&](std::size_t i) {  // u_{i}, i = 0 is the initial state
    return i == 0 ? trace.initial.u : trace.u[i - 1];
  };
  auto v_at = [&](std::size_t i) {
    return i == 0 ? trace.initial.v : trace.v[i - 1];
  };
  auto rho_at = [&](std::size_t i) { return trace.rho_applied[i - 1]; };

  double worst = 0.0;
  if (order == 1) {
    for (std::size_t i = 1; i <= n; ++i) {
      const double lhs = trace.f[i - 1] - trace.q[i - 1];
      const double rhs = v_at(i) - rho_at(i) * v_at(i - 1);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
  }
  for (std::size_t i = 1; i <= n; ++i) {
    const double r = rho_at(i);
    const double first = u_at(i) - r * u_at(i - 1);
    const double lhs = trace.f[i - 1] - trace.q[i - 1];
    worst = std::max(worst, std::abs(lhs - first));
    // u_{n-1} = v_{n-1} - rho_{n-1} v_{n-2}; at n = 1 the initial u_0 stands
    // in for the unrecorded v_0 - rho_0 v_{-1}.
    const double prev = i >= 2 ? v_at(i - 1) - rho_at(i - 1) * v_at(i - 2) : u_at(0);
    const double second = v_at(i) - r * v_at(i - 1) - r * prev;
    worst = std::max(worst, std::abs(first - second));
  }
  return worst;
}

}  // namespace quietsd
