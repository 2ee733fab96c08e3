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

#include "quietsd/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "quietsd/analysis.hpp"
#include "quietsd/dynamics.hpp"
#include "quietsd/fir_shaper.hpp"
#include "quietsd/io.hpp"
#include "quietsd/schemes.hpp"
#include "quietsd/signal_model.hpp"

namespace quietsd::cli {

namespace {

using io::Json;

struct Output {
  std::string out = "-";
  std::string summary;
};

// Writes CSV produced by `body` and its JSON summary.
void emit(const Output& o, std::ostream& out, std::ostream& err,
          const std::function<void(std::ostream&)>& body, const Json& summary) {
  if (o.out == "-") {
    body(out);
  } else {
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot write '" + o.out + "'");
    body(f);
  }
  const std::string text = summary.dump(2) + "\n";
  std::string path = o.summary;
  if (path.empty() && o.out != "-") path = o.out + ".json";
  if (path.empty()) {
    err << text;
  } else {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << text;
  }
}

void add_output(CLI::App* sub, Output& o) {
  sub->add_option("--out", o.out, "CSV destination ('-' for stdout)");
  sub->add_option("--summary", o.summary, "JSON summary destination");
}

Json optional_index(const std::optional<std::size_t>& v) {
  return v ? Json(*v) : Json(nullptr);
}

struct SchemeFlags {
  int order = 2;
  std::string variant = "standard";
  double gamma = 2.0;
  double rho = 0.99;
  std::string rho_policy = "explicit";
  double lambda = 100.0;

  void add(CLI::App* sub) {
    sub->add_option("--order", order, "Scheme order (1 or 2)");
    sub->add_option("--variant", variant, "standard | leaky | quiet");
    sub->add_option("--gamma", gamma, "Second-order gain gamma >= 1");
    sub->add_option("--rho", rho, "Damping factor in [0, 1)");
    sub->add_option("--rho-policy", rho_policy, "explicit | from_lambda");
    sub->add_option("--lambda", lambda, "Oversampling ratio");
  }

  SchemeConfig config() const {
    SchemeConfig c;
    c.order = order;
    c.variant = parse_variant(variant);
    c.gamma = gamma;
    c.rho = c.variant == Variant::standard ? 1.0 : rho;
    if (rho_policy == "from_lambda") {
      c.rho_policy = RhoPolicy::from_lambda;
    } else if (rho_policy != "explicit") {
      throw std::invalid_argument("unknown rho policy '" + rho_policy + "'");
    }
    c.lambda = lambda;
    if (c.variant == Variant::standard) c.rho_policy = RhoPolicy::explicit_value;
    c.validate();
    return c;
  }
};

BandlimitedSignal load_signal(const std::string& arg) {
  if (arg.empty()) return default_tone();
  return io::signal_from_json(io::load_json_argument(arg));
}

struct MapFlags {
  std::string kind = "M";
  MapSpec spec;

  void add(CLI::App* sub) {
    sub->add_option("--map", kind, "T | M | leaky | three_region | four_level");
    sub->add_option("--gamma", spec.gamma, "Gain gamma >= 1");
    sub->add_option("--rho", spec.rho, "Damping factor in [0, 1)");
    sub->add_option("--tau", spec.tau, "Three-region threshold");
    sub->add_option("--rho1", spec.rho1, "Four-level u damping");
    sub->add_option("--rho2", spec.rho2, "Four-level second u damping");
    sub->add_option("--delta1", spec.delta1, "Four-level v damping");
    sub->add_option("--delta2", spec.delta2, "Four-level second v damping");
  }

  MapSpec resolve() {
    spec.kind = parse_map_kind(kind);
    spec.validate();
    return spec;
  }
};

std::pair<double, double> parse_range(const std::vector<double>& r,
                                      const std::string& name) {
  if (r.size() != 2 || !(r[0] <= r[1])) {
    throw std::invalid_argument(name + " expects LO,HI with LO <= HI");
  }
  return {r[0], r[1]};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Quiet sigma-delta quantization and zero-input map experiments",
               "quietsd"};
  app.require_subcommand(1);
  std::function<void()> action;

  // quantize
  auto* quantize = app.add_subcommand("quantize", "Run a scheme, emit its trace");
  Output q_out;
  SchemeFlags q_scheme;
  std::string q_signal;
  std::size_t q_n = 1000;
  double q_u0 = 0.0, q_v0 = 0.0, q_alpha = 0.5;
  bool q_zero = false, q_random = false;
  std::uint64_t q_seed = 1;
  std::string q_recon;
  std::size_t q_recon_points = 2048;
  double q_recon_duration = 40.0, q_lambda0 = 2.0, q_tail_tol = 1e-6;
  q_scheme.add(quantize);
  quantize->add_option("--signal-json", q_signal, "Signal JSON (inline or path)");
  quantize->add_option("--n", q_n, "Number of samples");
  quantize->add_option("--u0", q_u0, "Initial first integrator");
  quantize->add_option("--v0", q_v0, "Initial second integrator");
  quantize->add_flag("--zero-input", q_zero, "Feed zeros instead of a signal");
  quantize->add_flag("--random-input", q_random,
                     "Feed i.i.d. uniform samples in [-alpha, alpha]");
  quantize->add_option("--alpha", q_alpha, "Amplitude for --random-input");
  quantize->add_option("--seed", q_seed, "Seed for --random-input");
  quantize->add_option("--reconstruct", q_recon,
                       "Also write the reconstruction of q (t,value CSV)");
  quantize->add_option("--recon-points", q_recon_points, "Reconstruction grid points");
  quantize->add_option("--recon-duration", q_recon_duration,
                       "Reconstruction window after the burn-in");
  quantize->add_option("--lambda0", q_lambda0, "Kernel stopband parameter");
  quantize->add_option("--tail-tol", q_tail_tol, "Kernel tail tolerance");
  add_output(quantize, q_out);
  quantize->callback([&] {
    action = [&] {
      const SchemeConfig cfg = q_scheme.config();
      if (q_zero && q_random) {
        throw std::invalid_argument("--zero-input and --random-input conflict");
      }
      if (q_random && !(q_alpha >= 0.0 && q_alpha <= 1.0)) {
        throw std::invalid_argument("--alpha must lie in [0, 1]");
      }
      std::optional<ReconstructionKernel> kernel;
      TimeGrid recon_grid;
      if (!q_recon.empty()) {
        kernel.emplace(q_lambda0, q_tail_tol);
        if (!(q_scheme.lambda >= q_lambda0)) {
          throw std::invalid_argument("--reconstruct needs --lambda >= lambda0");
        }
        if (q_recon_points == 0 || !(q_recon_duration > 0.0)) {
          throw std::invalid_argument("--recon-points and --recon-duration must be positive");
        }
        recon_grid = interior_grid(*kernel, q_scheme.lambda, q_recon_duration, q_recon_points);
        const std::size_t need = samples_required(*kernel, q_scheme.lambda, recon_grid);
        if (q_n < need) {
          throw std::invalid_argument("--reconstruct needs --n >= " + std::to_string(need));
        }
      }
      std::vector<double> f(q_n, 0.0);
      if (q_random) {
        std::mt19937_64 rng(q_seed);
        std::uniform_real_distribution<double> dist(-q_alpha, q_alpha);
        for (auto& x : f) x = dist(rng);
      } else if (!q_zero) {
        if (!(q_scheme.lambda >= 1.0)) {
          throw std::invalid_argument("--lambda must be >= 1");
        }
        f = sample(load_signal(q_signal), q_scheme.lambda, q_n).values;
      }
      const auto trace = run(f, cfg, {q_u0, q_v0});
      Json summary = {{"order", cfg.order},
                      {"variant", to_string(cfg.variant)},
                      {"gamma", cfg.gamma},
                      {"rho", cfg.damping()},
                      {"n", trace.size()},
                      {"difference_residual",
                       verify_difference_relation(trace, cfg.order)}};
      if (trace.size() > 0) {
        const auto b = boundedness_stats(trace);
        summary["max_abs_u"] = b.max_abs_u;
        summary["max_abs_v"] = b.max_abs_v;
        std::size_t last_nonzero = 0;
        for (std::size_t i = 0; i < trace.size(); ++i) {
          if (trace.q[i] != 0) last_nonzero = i + 1;
        }
        summary["last_nonzero_q"] = last_nonzero;
        summary["final_state"] = {trace.u.back(), trace.v.back()};
        const std::size_t horizon = trace.size() / 2;
        const auto period =
            horizon >= 2 ? detect_period(trace.q, 100, trace.size() - horizon, horizon)
                         : std::nullopt;
        summary["period"] = period ? Json(period->length) : Json(nullptr);
        summary["period_nontrivial"] = period ? period->nontrivial : false;
      }
      if (kernel) {
        const auto values =
            reconstruct(std::span<const int>(trace.q), q_scheme.lambda, *kernel, recon_grid);
        std::ofstream rf(q_recon);
        if (!rf) throw std::runtime_error("cannot write '" + q_recon + "'");
        io::write_reconstruction_csv(rf, recon_grid.points(), values);
        summary["reconstruction"] = {{"path", q_recon},
                                     {"t_start", recon_grid.t_start},
                                     {"t_end", recon_grid.t_end},
                                     {"points", recon_grid.n_points}};
      }
      emit(q_out, out, err, [&](std::ostream& os) { io::write_trace_csv(os, trace); },
           summary);
    };
  });

  // error-sweep
  auto* sweep = app.add_subcommand("error-sweep", "Sup error versus lambda");
  Output s_out;
  SchemeFlags s_scheme;
  std::string s_signal;
  std::vector<double> s_lambdas{32, 64, 128, 256};
  ErrorSweepOptions s_opts;
  s_opts.jobs = default_jobs();
  double s_synthetic = 0.0;
  s_scheme.add(sweep);
  sweep->add_option("--lambdas", s_lambdas, "Comma-separated rates")->delimiter(',');
  sweep->add_option("--signal-json", s_signal, "Signal JSON (inline or path)");
  sweep->add_option("--duration", s_opts.duration, "Interior window length");
  sweep->add_option("--points", s_opts.n_points, "Interior grid points");
  sweep->add_option("--lambda0", s_opts.lambda0, "Kernel stopband parameter");
  sweep->add_option("--tail-tol", s_opts.tail_tolerance, "Kernel tail tolerance");
  sweep->add_option("--jobs", s_opts.jobs, "Worker threads");
  sweep->add_option("--synthetic-order", s_synthetic,
                    "Test hook: replace errors by lambda^-p")
      ->group("");
  add_output(sweep, s_out);
  sweep->callback([&] {
    action = [&] {
      SchemeFlags flags = s_scheme;
      flags.lambda = s_lambdas.empty() ? 1.0 : s_lambdas.front();
      const SchemeConfig cfg = flags.config();
      if (s_lambdas.size() < 3) {
        throw std::invalid_argument("--lambdas needs at least 3 rates");
      }
      for (double l : s_lambdas) {
        if (!(l >= s_opts.lambda0)) {
          throw std::invalid_argument("every lambda must be >= lambda0");
        }
      }
      if (s_opts.n_points == 0 || !(s_opts.duration > 0.0)) {
        throw std::invalid_argument("--points and --duration must be positive");
      }
      ErrorCurve curve;
      if (s_synthetic > 0.0) {
        curve.lambdas = s_lambdas;
        for (double l : s_lambdas) curve.sup_errors.push_back(std::pow(l, -s_synthetic));
        const auto fit = fit_order_slope(curve.lambdas, curve.sup_errors);
        curve.fitted_slope = fit.slope;
        curve.fit_residual = fit.residual;
      } else {
        curve = error_sweep(load_signal(s_signal), cfg, s_lambdas, s_opts);
      }
      const Json summary = {{"order", cfg.order},
                            {"variant", to_string(cfg.variant)},
                            {"rho_policy", flags.rho_policy},
                            {"slope", curve.fitted_slope},
                            {"fit_residual", curve.fit_residual},
                            {"lambdas", curve.lambdas},
                            {"sup_errors", curve.sup_errors}};
      emit(s_out, out, err,
           [&](std::ostream& os) { io::write_error_curve_csv(os, curve); }, summary);
    };
  });

  // orbit
  auto* orbit = app.add_subcommand("orbit", "Iterate a zero-input map");
  Output o_out;
  MapFlags o_map;
  double o_u0 = 0.0, o_v0 = 0.0;
  std::size_t o_iters = 0;
  OrbitOptions o_opts;
  bool o_full = false;
  o_map.add(orbit);
  orbit->add_option("--u0", o_u0, "Initial u");
  orbit->add_option("--v0", o_v0, "Initial v");
  orbit->add_option("--max-iters", o_iters,
                    "Iteration cap (default ceil(200/(1-rho)) + 10000)");
  orbit->add_option("--conv-tol", o_opts.conv_tol, "Convergence threshold");
  orbit->add_option("--period-horizon", o_opts.period_horizon,
                    "Trailing outputs checked for a cycle");
  orbit->add_flag("--no-stop", o_full, "Keep iterating after convergence");
  add_output(orbit, o_out);
  orbit->callback([&] {
    action = [&] {
      const MapSpec spec = o_map.resolve();
      if (!std::isfinite(o_u0) || !std::isfinite(o_v0)) {
        throw std::invalid_argument("initial point must be finite");
      }
      OrbitOptions opts = o_opts;
      const double r = spec.kind == MapKind::T ? 0.99 : spec.rho;
      opts.max_iters = o_iters > 0 ? o_iters
                                   : default_iteration_cap(std::min(r, 0.999999)) + 10000;
      opts.stop_at_convergence = !o_full;
      if (!(opts.conv_tol > 0.0)) throw std::invalid_argument("--conv-tol must be > 0");
      const auto rec = iterate_orbit({o_u0, o_v0}, spec, opts);
      Json summary = {{"map", io::to_json(spec)},
                      {"iterations", rec.q.size()},
                      {"entered_S_at", optional_index(rec.entered_S_at)},
                      {"converged_at", optional_index(rec.converged_at)},
                      {"final_point", {rec.points.back().u, rec.points.back().v}}};
      summary["period"] = rec.period ? Json(rec.period->length) : Json(nullptr);
      summary["period_nontrivial"] = rec.period ? rec.period->nontrivial : false;
      emit(o_out, out, err,
           [&](std::ostream& os) { io::write_orbit_csv(os, rec, spec.gamma); },
           summary);
    };
  });

  // tornado
  auto* tornado = app.add_subcommand("tornado", "Basin classification sweep");
  Output t_out;
  MapFlags t_map;
  t_map.kind = "leaky";
  std::vector<double> t_rho{0.96, 0.999}, t_u0{-2.0, 0.0}, t_cells{50, 50};
  double t_v0 = 0.0;
  TornadoOptions t_opts;
  t_opts.jobs = default_jobs();
  t_map.add(tornado);
  tornado->add_option("--rho-range", t_rho, "LO,HI")->delimiter(',');
  tornado->add_option("--u0-range", t_u0, "LO,HI")->delimiter(',');
  tornado->add_option("--cells", t_cells, "N or NRHO,NU0")->delimiter(',');
  tornado->add_option("--v0", t_v0, "Initial v for every cell");
  tornado->add_option("--settle", t_opts.settle, "Settling iterations");
  tornado->add_option("--persist", t_opts.persist, "Classification iterations");
  tornado->add_option("--max-period", t_opts.max_period, "Longest cycle searched");
  tornado->add_option("--conv-tol", t_opts.conv_tol, "Convergence threshold");
  tornado->add_option("--jobs", t_opts.jobs, "Worker threads");
  add_output(tornado, t_out);
  tornado->callback([&] {
    action = [&] {
      const auto [rlo, rhi] = parse_range(t_rho, "--rho-range");
      const auto [ulo, uhi] = parse_range(t_u0, "--u0-range");
      if (t_cells.empty() || t_cells.size() > 2) {
        throw std::invalid_argument("--cells expects N or NRHO,NU0");
      }
      const double nr = t_cells[0], nu = t_cells.size() == 2 ? t_cells[1] : t_cells[0];
      if (!(nr >= 1 && nu >= 1) || nr != std::floor(nr) || nu != std::floor(nu)) {
        throw std::invalid_argument("--cells must be positive integers");
      }
      MapSpec spec = t_map.spec;
      spec.kind = parse_map_kind(t_map.kind);
      spec.rho = rlo;
      spec.validate();
      spec.rho = rhi;
      spec.validate();
      if (t_opts.persist < 2 || t_opts.max_period < 1) {
        throw std::invalid_argument("--persist must be >= 2 and --max-period >= 1");
      }
      const auto rhos = linspace(rlo, rhi, static_cast<std::size_t>(nr));
      const auto u0s = linspace(ulo, uhi, static_cast<std::size_t>(nu));
      const auto grid = tornado_sweep(spec, rhos, u0s, t_v0, t_opts);
      const Json summary = {{"map", to_string(spec.kind)},
                            {"gamma", spec.gamma},
                            {"cells", grid.cells.size()},
                            {"converged", grid.count(CellClass::converged)},
                            {"periodic", grid.count(CellClass::periodic)},
                            {"undecided", grid.count(CellClass::undecided)},
                            {"settle", t_opts.settle},
                            {"persist", t_opts.persist}};
      emit(t_out, out, err,
           [&](std::ostream& os) { io::write_tornado_csv(os, grid); }, summary);
    };
  });

  // spectrum
  auto* spec_cmd = app.add_subcommand("spectrum", "DFT magnitude of a CSV column");
  Output p_out;
  std::string p_csv, p_window = "rect", p_column;
  double p_lambda = 100.0;
  std::size_t p_skip = 0;
  spec_cmd->add_option("--trace-csv", p_csv, "Trace or reconstruction CSV")->required();
  spec_cmd->add_option("--lambda", p_lambda, "Sample rate (spacing 1/lambda)");
  spec_cmd->add_option("--window", p_window, "rect | hann");
  spec_cmd->add_option("--column", p_column, "Column (default q, else value)");
  spec_cmd->add_option("--skip", p_skip, "Leading rows to discard");
  add_output(spec_cmd, p_out);
  spec_cmd->callback([&] {
    action = [&] {
      if (!(p_lambda > 0.0)) throw std::invalid_argument("--lambda must be > 0");
      Window w;
      if (p_window == "rect" || p_window == "rectangular") {
        w = Window::rectangular;
      } else if (p_window == "hann") {
        w = Window::hann;
      } else {
        throw std::invalid_argument("unknown window '" + p_window + "'");
      }
      std::ifstream in(p_csv);
      if (!in) throw std::runtime_error("cannot open '" + p_csv + "'");
      const auto table = io::read_csv(in);
      std::string col = p_column;
      if (col.empty()) col = table.has_column("q") ? "q" : "value";
      auto values = table.column(col);
      if (p_skip >= values.size()) throw std::invalid_argument("--skip leaves no data");
      values.erase(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(p_skip));
      const auto bins = spectrum(values, 1.0 / p_lambda, w);
      const auto peak = std::max_element(
          bins.begin(), bins.end(),
          [](const auto& a, const auto& b) { return a.magnitude < b.magnitude; });
      const Json summary = {{"column", col},
                            {"samples", values.size()},
                            {"peak_frequency", peak->frequency},
                            {"peak_magnitude", peak->magnitude}};
      emit(p_out, out, err,
           [&](std::ostream& os) { io::write_spectrum_csv(os, bins); }, summary);
    };
  });

  // fir
  auto* fir = app.add_subcommand("fir", "Tri-level FIR coefficient shaping");
  Output f_out;
  std::string f_csv;
  double f_rho = 0.99, f_gamma = 2.0, f_alpha = 0.8;
  FirOptions f_opts;
  fir->add_option("--coeffs-csv", f_csv, "Coefficients (CSV or JSON)")->required();
  fir->add_option("--rho", f_rho, "Damping factor in [0, 1)");
  fir->add_option("--gamma", f_gamma, "Gain gamma >= 1");
  fir->add_option("--alpha", f_alpha, "Normalization bound in (0, 1)");
  fir->add_option("--tail-tol", f_opts.tail_tol, "State tolerance for the tail");
  fir->add_option("--tail-cap", f_opts.tail_cap, "Maximum zero-input steps");
  add_output(fir, f_out);
  fir->callback([&] {
    action = [&] {
      SchemeConfig cfg;
      cfg.order = 2;
      cfg.variant = Variant::quiet;
      cfg.gamma = f_gamma;
      cfg.rho = f_rho;
      cfg.validate();
      const auto set = CoefficientSet::normalized(io::read_coefficients(f_csv), f_alpha);
      const auto qc = quantize_coefficients(set, cfg, f_opts);
      const Json summary = {{"scale", qc.scale},
                            {"rho", qc.rho},
                            {"gamma", qc.gamma},
                            {"alpha", f_alpha},
                            {"input_length", qc.input_length},
                            {"tail_length", qc.tail_length},
                            {"length", qc.q.size()}};
      emit(f_out, out, err, [&](std::ostream& os) { io::write_fir_csv(os, qc); },
           summary);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error: " << msg << '\n';
    return 2;
  }
  try {
    if (action) action();
  } catch (const std::exception& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error: " << msg << '\n';
    return 2;
  }
  return 0;
}

}  // namespace quietsd::cli
