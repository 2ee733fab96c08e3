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

#include "quietsd/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace quietsd::io {

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json to_json(const BandlimitedSignal& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms()) {
    terms.push_back(
        {{"amplitude", t.amplitude}, {"frequency", t.frequency}, {"phase", t.phase}});
  }
  return {{"terms", terms}, {"amplitude_bound", f.amplitude_bound()}};
}

BandlimitedSignal signal_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) {
    throw std::invalid_argument("signal JSON needs a 'terms' array");
  }
  std::vector<ToneTerm> terms;
  for (const auto& t : j["terms"]) {
    terms.push_back({t.at("amplitude").get<double>(),
                     t.at("frequency").get<double>(),
                     t.value("phase", 0.0)});
  }
  if (j.contains("amplitude_bound")) {
    return BandlimitedSignal(std::move(terms), j["amplitude_bound"].get<double>());
  }
  return BandlimitedSignal::from_terms(std::move(terms));
}

Json to_json(const ReconstructionKernel& k) {
  return {{"lambda0", k.lambda0()},
          {"tail_tolerance", k.tail_tolerance()},
          {"truncation_halfwidth", k.truncation_halfwidth()}};
}

ReconstructionKernel kernel_from_json(const Json& j) {
  return make_kernel(j.value("lambda0", 2.0), j.value("tail_tolerance", 1e-6));
}

Json to_json(const MapSpec& m) {
  return {{"kind", to_string(m.kind)}, {"gamma", m.gamma},   {"rho", m.rho},
          {"tau", m.tau},              {"rho1", m.rho1},     {"rho2", m.rho2},
          {"delta1", m.delta1},        {"delta2", m.delta2}};
}

MapSpec map_spec_from_json(const Json& j) {
  MapSpec m;
  m.kind = parse_map_kind(j.value("kind", std::string("M")));
  m.gamma = j.value("gamma", m.gamma);
  m.rho = j.value("rho", m.rho);
  m.tau = j.value("tau", m.tau);
  m.rho1 = j.value("rho1", m.rho1);
  m.rho2 = j.value("rho2", m.rho2);
  m.delta1 = j.value("delta1", m.delta1);
  m.delta2 = j.value("delta2", m.delta2);
  m.validate();
  return m;
}

Json load_json_argument(const std::string& text_or_path) {
  const auto first = text_or_path.find_first_not_of(" \t\r\n");
  if (first != std::string::npos &&
      (text_or_path[first] == '{' || text_or_path[first] == '[')) {
    return Json::parse(text_or_path);
  }
  std::ifstream in(text_or_path);
  if (!in) throw std::runtime_error("cannot open '" + text_or_path + "'");
  return Json::parse(in);
}

void write_trace_csv(std::ostream& os, const RunTrace& trace) {
  os << "n,f,q,u,v,rho\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    os << (i + 1) << ',' << format_real(trace.f[i]) << ',' << trace.q[i] << ','
       << format_real(trace.u[i]) << ',' << format_real(trace.v[i]) << ','
       << format_real(trace.rho_applied[i]) << '\n';
  }
}

void write_orbit_csv(std::ostream& os, const OrbitRecord& rec, double gamma) {
  os << "n,u,v,q,in_S\n";
  for (std::size_t n = 0; n < rec.points.size(); ++n) {
    const auto& x = rec.points[n];
    os << n << ',' << format_real(x.u) << ',' << format_real(x.v) << ',';
    if (n < rec.q.size()) os << rec.q[n];
    os << ',' << (in_trapping_set_S(x, gamma) ? 1 : 0) << '\n';
  }
}

void write_error_curve_csv(std::ostream& os, const ErrorCurve& curve) {
  os << "lambda,sup_error\n";
  for (std::size_t i = 0; i < curve.lambdas.size(); ++i) {
    os << format_real(curve.lambdas[i]) << ','
       << format_real(curve.sup_errors[i]) << '\n';
  }
}

void write_tornado_csv(std::ostream& os, const TornadoGrid& grid) {
  os << "rho,u0,class,period\n";
  for (std::size_t i = 0; i < grid.rho_values.size(); ++i) {
    for (std::size_t j = 0; j < grid.u0_values.size(); ++j) {
      const auto& cell = grid.at(i, j);
      os << format_real(grid.rho_values[i]) << ','
         << format_real(grid.u0_values[j]) << ',' << to_string(cell.cls) << ','
         << cell.period << '\n';
    }
  }
}

void write_spectrum_csv(std::ostream& os, std::span<const SpectrumBin> bins) {
  os << "freq,magnitude\n";
  for (const auto& b : bins) {
    os << format_real(b.frequency) << ',' << format_real(b.magnitude) << '\n';
  }
}

void write_fir_csv(std::ostream& os, const QuantizedCoefficients& qc) {
  os << "j,q\n";
  for (std::size_t j = 0; j < qc.q.size(); ++j) os << j << ',' << qc.q[j] << '\n';
}

void write_reconstruction_csv(std::ostream& os, std::span<const double> t,
                              std::span<const double> values) {
  os << "t,value\n";
  for (std::size_t i = 0; i < t.size() && i < values.size(); ++i) {
    os << format_real(t[i]) << ',' << format_real(values[i]) << '\n';
  }
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) {
      field.pop_back();
    }
    const auto b = field.find_first_not_of(' ');
    fields.push_back(b == std::string::npos ? std::string() : field.substr(b));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

bool parse_real(const std::string& s, double& out) {
  if (s.empty()) {
    out = std::numeric_limits<double>::quiet_NaN();
    return true;
  }
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace

bool CsvTable::has_column(const std::string& name) const {
  for (const auto& h : header) {
    if (h == name) return true;
  }
  return false;
}

std::vector<double> CsvTable::column(const std::string& name) const {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] != name) continue;
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
      out.push_back(c < r.size() ? r[c] : std::numeric_limits<double>::quiet_NaN());
    }
    return out;
  }
  throw std::invalid_argument("CSV has no column '" + name + "'");
}

CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  bool first = true;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_fields(line);
    std::vector<double> row(fields.size());
    bool numeric = true;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (!parse_real(fields[i], row[i])) numeric = false;
    }
    if (first && !numeric) {
      table.header = fields;
      first = false;
      continue;
    }
    first = false;
    if (!numeric) {
      throw std::runtime_error("malformed number on CSV line " +
                               std::to_string(line_no));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<double> read_coefficients(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  const auto first = in.peek();
  if (first == '[' || first == '{') {
    const Json j = Json::parse(in);
    const Json& arr = j.is_array() ? j : j.at("coefficients");
    return arr.get<std::vector<double>>();
  }
  const auto table = read_csv(in);
  std::vector<double> out;
  for (const auto& r : table.rows) {
    if (!r.empty()) out.push_back(r[0]);
  }
  return out;
}

}  // namespace quietsd::io
