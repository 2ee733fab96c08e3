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

#ifndef QUIETSD_SCHEMES_HPP_
#define QUIETSD_SCHEMES_HPP_

#include <span>
#include <string>
#include <vector>

#include "quietsd/signal_model.hpp"

namespace quietsd {

enum class Variant { standard, leaky, quiet };
enum class RhoPolicy { explicit_value, from_lambda };

std::string to_string(Variant v);
// Throws std::invalid_argument on an unknown name.
Variant parse_variant(const std::string& name);

struct SchemeConfig {
  int order = 2;
  Variant variant = Variant::standard;
  double gamma = 2.0;
  double rho = 1.0;
  RhoPolicy rho_policy = RhoPolicy::explicit_value;
  // Only consulted by RhoPolicy::from_lambda, which sets rho = 1 - 1/lambda.
  double lambda = 0.0;

  // Throws std::invalid_argument when the configuration is out of range
  // (order not in {1, 2}, gamma < 1, rho outside [0, 1), quiet with order 1).
  void validate() const;

  // Damping used by the leaky and quiet branches; 1 for standard.
  double damping() const;
};

// u is the first integrator and v the second. For order 1 the single
// integrator lives in v and u is left untouched.
struct SchemeState {
  double u = 0.0;
  double v = 0.0;
};

struct FirstOrderStep {
  double v;
  int q;
};

struct SecondOrderStep {
  SchemeState state;
  int q;
  double rho_applied;
};

// q = Q(rho v + f), v' = rho v + f - q. rho = 1 is the undamped recursion.
FirstOrderStep step_first_order(double v, double f, double rho);

// Damped previous state (rho* u, rho* v) decides q = Q(gamma rho* u + rho* v);
// the input enters only the update u' = rho* u + f - q, v' = rho* u + rho* v
// + f - q. rho* is 1 (standard), rho (leaky), or rho when u >= 0 and 1
// otherwise (quiet).
SecondOrderStep step_second_order(const SchemeState& s, double f,
                                  const SchemeConfig& cfg);

struct RunTrace {
  int order = 2;
  SchemeState initial;
  std::vector<double> f;
  std::vector<int> q;
  std::vector<double> u;
  std::vector<double> v;
  std::vector<double> rho_applied;

  std::size_t size() const { return f.size(); }
};

RunTrace run(std::span<const double> samples, const SchemeConfig& cfg,
             const SchemeState& s0 = {});
RunTrace run(const SampleSequence& samples, const SchemeConfig& cfg,
             const SchemeState& s0 = {});

// Largest residual of the difference relation recorded in the trace, using
// the per-step damping factors:
//   order 1:  f_n - q_n = v_n - rho_n v_{n-1}
//   order 2:  f_n - q_n = u_n - rho_n u_{n-1}
//             u_n - rho_n u_{n-1} = v_n - 2 rho_n v_{n-1}
//                                   + rho_n rho_{n-1} v_{n-2}
// At n = 1 the second identity uses u_0 in place of v_0 - rho_0 v_{-1}.
// Throws std::invalid_argument on mismatched sequence lengths or order.
double verify_difference_relation(const RunTrace& trace, int order);

}  // namespace quietsd

#endif  // QUIETSD_SCHEMES_HPP_
