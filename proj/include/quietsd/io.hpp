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

#ifndef QUIETSD_IO_HPP_
#define QUIETSD_IO_HPP_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "quietsd/analysis.hpp"
#include "quietsd/dynamics.hpp"
#include "quietsd/fir_shaper.hpp"
#include "quietsd/schemes.hpp"
#include "quietsd/signal_model.hpp"

namespace quietsd::io {

using Json = nlohmann::json;

// "%.17g": round-trips every double.
std::string format_real(double x);

// {"terms": [{"amplitude", "frequency", "phase"}...], "amplitude_bound"}.
// amplitude_bound defaults to sum |amplitude| when absent.
Json to_json(const BandlimitedSignal& f);
BandlimitedSignal signal_from_json(const Json& j);

// {"lambda0", "tail_tolerance", "truncation_halfwidth"}
Json to_json(const ReconstructionKernel& k);
ReconstructionKernel kernel_from_json(const Json& j);

// {"kind", "gamma", "rho", "tau", "rho1", "rho2", "delta1", "delta2"}
Json to_json(const MapSpec& m);
MapSpec map_spec_from_json(const Json& j);

// Parses inline JSON if the text starts with '{', otherwise reads the file.
Json load_json_argument(const std::string& text_or_path);

// n,f,q,u,v,rho with n = 1 .. N.
void write_trace_csv(std::ostream& os, const RunTrace& trace);
// n,u,v,q,in_S; q is the output of the transition leaving point n and is
// empty on the final point.
void write_orbit_csv(std::ostream& os, const OrbitRecord& rec, double gamma);
void write_error_curve_csv(std::ostream& os, const ErrorCurve& curve);
// rho,u0,class,period
void write_tornado_csv(std::ostream& os, const TornadoGrid& grid);
void write_spectrum_csv(std::ostream& os, std::span<const SpectrumBin> bins);
// j,q for j = 0 .. len-1 (q in {-1, 0, 1}).
void write_fir_csv(std::ostream& os, const QuantizedCoefficients& qc);
// t,value
void write_reconstruction_csv(std::ostream& os, std::span<const double> t,
                              std::span<const double> values);

// Header-aware CSV table of reals.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  // Throws std::invalid_argument if the column is absent.
  std::vector<double> column(const std::string& name) const;
  bool has_column(const std::string& name) const;
};

// Empty fields read as NaN. A first line with any non-numeric field is the
// header. Throws std::runtime_error on malformed numbers.
CsvTable read_csv(std::istream& is);

// One coefficient per line (the first field of each row); a header line is
// skipped. Also accepts a JSON array or {"coefficients": [...]}.
std::vector<double> read_coefficients(const std::string& path);

}  // namespace quietsd::io

#endif  // QUIETSD_IO_HPP_
