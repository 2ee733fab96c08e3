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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "quietsd/io.hpp"
#include "support/fixtures.hpp"

using namespace quietsd;
using quietsd::testing::uniform;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "quietsd_test_io";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("reals round-trip through text", "[io][property]") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 10000; ++i) {
    const double x = uniform(rng, -1.0, 1.0) * std::pow(10.0, uniform(rng, -300.0, 300.0));
    CHECK(std::stod(io::format_real(x)) == x);
  }
  CHECK(io::format_real(0.1) == "0.10000000000000001");
}

TEST_CASE("signal JSON round trip", "[io]") {
  const BandlimitedSignal f({{0.25, 0.1, 0.5}, {-0.125, -0.3, 0.0}}, 0.5);
  const auto back = io::signal_from_json(io::to_json(f));
  REQUIRE(back.terms().size() == 2);
  CHECK(back.terms()[1].amplitude == -0.125);
  CHECK(back.terms()[0].phase == 0.5);
  CHECK(back.amplitude_bound() == 0.5);

  const auto j = io::Json::parse(R"({"terms": [{"amplitude": 0.3, "frequency": 0.2}]})");
  const auto g = io::signal_from_json(j);
  CHECK(g.amplitude_bound() == 0.3);
  CHECK(g.terms()[0].phase == 0.0);

  CHECK_THROWS_AS(io::signal_from_json(io::Json::parse("{}")), std::invalid_argument);
  CHECK_THROWS(io::signal_from_json(
      io::Json::parse(R"({"terms": [{"amplitude": 0.3, "frequency": 0.7}]})")));
}

TEST_CASE("kernel and map spec JSON", "[io]") {
  const auto k = io::kernel_from_json(io::to_json(make_kernel(3.0, 1e-5)));
  CHECK(k.lambda0() == 3.0);
  CHECK(k.tail_tolerance() == 1e-5);
  CHECK(io::to_json(k).at("truncation_halfwidth").get<double>() == k.truncation_halfwidth());

  MapSpec m;
  m.kind = MapKind::four_level;
  m.gamma = 3.0;
  m.delta2 = 0.95;
  const auto back = io::map_spec_from_json(io::to_json(m));
  CHECK(back.kind == MapKind::four_level);
  CHECK(back.gamma == 3.0);
  CHECK(back.delta2 == 0.95);
  CHECK_THROWS(io::map_spec_from_json(io::Json::parse(R"({"kind": "M", "rho": 1.5})")));
}

TEST_CASE("JSON arguments are inline text or file paths", "[io]") {
  CHECK(io::load_json_argument(R"({"a": 1})").at("a") == 1);
  CHECK(io::load_json_argument(" [1, 2]").size() == 2);
  const auto p = scratch("arg.json");
  write_file(p, R"({"b": 2})");
  CHECK(io::load_json_argument(p.string()).at("b") == 2);
  CHECK_THROWS_AS(io::load_json_argument("/nonexistent/x.json"), std::runtime_error);
}

TEST_CASE("trace CSV", "[io]") {
  SchemeConfig cfg;
  cfg.variant = Variant::quiet;
  cfg.rho = 0.9;
  const std::vector<double> f{0.1, 0.6, -0.2};
  const auto t = run(f, cfg, {0.4, 0.1});
  std::ostringstream os;
  io::write_trace_csv(os, t);
  std::istringstream is(os.str());
  const auto table = io::read_csv(is);
  CHECK(table.header == std::vector<std::string>{"n", "f", "q", "u", "v", "rho"});
  REQUIRE(table.rows.size() == 3);
  CHECK(table.column("u") == t.u);
  CHECK(table.column("v") == t.v);
  CHECK(table.column("rho") == t.rho_applied);
  CHECK(table.column("n") == std::vector<double>{1, 2, 3});
}

TEST_CASE("orbit CSV leaves q empty on the last point", "[io]") {
  MapSpec m;
  OrbitOptions opts;
  opts.max_iters = 5;
  opts.stop_at_convergence = false;
  const auto rec = iterate_orbit({0.4, 0.1}, m, opts);
  std::ostringstream os;
  io::write_orbit_csv(os, rec, m.gamma);
  std::istringstream is(os.str());
  const auto table = io::read_csv(is);
  CHECK(table.header == std::vector<std::string>{"n", "u", "v", "q", "in_S"});
  REQUIRE(table.rows.size() == 6);
  const auto q = table.column("q");
  CHECK(std::isnan(q.back()));
  CHECK(q[0] == rec.q[0]);
  CHECK(table.column("in_S")[0] == 1.0);
}

TEST_CASE("other CSV headers", "[io]") {
  std::ostringstream a, b, c, d, e;
  io::write_error_curve_csv(a, ErrorCurve{{32, 64}, {0.1, 0.05}, -1.0, 0.0});
  CHECK(a.str() == "lambda,sup_error\n32,0.10000000000000001\n64,0.050000000000000003\n");

  TornadoGrid g;
  g.rho_values = {0.5};
  g.u0_values = {-1.0, 0.0};
  g.cells = {{CellClass::periodic, 2}, {CellClass::converged, 0}};
  io::write_tornado_csv(b, g);
  CHECK(b.str() == "rho,u0,class,period\n0.5,-1,periodic,2\n0.5,0,converged,0\n");

  const std::vector<SpectrumBin> bins{{-0.5, 0.25}, {0.0, 1.0}};
  io::write_spectrum_csv(c, bins);
  CHECK(c.str() == "freq,magnitude\n-0.5,0.25\n0,1\n");

  QuantizedCoefficients qc;
  qc.q = {1, 0, -1};
  io::write_fir_csv(d, qc);
  CHECK(d.str() == "j,q\n0,1\n1,0\n2,-1\n");

  const std::vector<double> t{1.0, 2.0}, v{0.5, -0.5};
  io::write_reconstruction_csv(e, t, v);
  CHECK(e.str() == "t,value\n1,0.5\n2,-0.5\n");
}

TEST_CASE("CSV reader edge cases", "[io]") {
  std::istringstream plain("1,2\n3,4\n");
  const auto t = io::read_csv(plain);
  CHECK(t.header.empty());
  CHECK(t.rows.size() == 2);

  std::istringstream crlf("x,y\r\n1,\r\n\r\n2,3\r\n");
  const auto u = io::read_csv(crlf);
  CHECK(u.header == std::vector<std::string>{"x", "y"});
  REQUIRE(u.rows.size() == 2);
  CHECK(std::isnan(u.rows[0][1]));
  CHECK(u.column("y")[1] == 3.0);
  CHECK_THROWS_AS(u.column("z"), std::invalid_argument);

  std::istringstream bad("a,b\n1,zz\n");
  CHECK_THROWS_AS(io::read_csv(bad), std::runtime_error);
}

TEST_CASE("coefficient files", "[io]") {
  const auto csv = scratch("c.csv");
  write_file(csv, "c\n0.5\n-0.25\n0.125\n");
  CHECK(io::read_coefficients(csv.string()) == std::vector<double>{0.5, -0.25, 0.125});

  const auto bare = scratch("bare.csv");
  write_file(bare, "1\n2\n");
  CHECK(io::read_coefficients(bare.string()) == std::vector<double>{1, 2});

  const auto arr = scratch("c.json");
  write_file(arr, "[0.1, 0.2]");
  CHECK(io::read_coefficients(arr.string()) == std::vector<double>{0.1, 0.2});

  const auto obj = scratch("o.json");
  write_file(obj, R"({"coefficients": [3, 4, 5]})");
  CHECK(io::read_coefficients(obj.string()) == std::vector<double>{3, 4, 5});

  CHECK_THROWS_AS(io::read_coefficients("/nonexistent/c.csv"), std::runtime_error);
}
