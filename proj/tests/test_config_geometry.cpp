// SPDX-License-Identifier: Apache-2.0
//
// oobce: dual-band MIMO-OFDM link-level simulator for out-of-band aided
// mmWave channel estimation
// Copyright (C) 2026 The oobce authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "oobce/config.hpp"
#include "oobce/geometry.hpp"
#include "oobce/tdl_profile.hpp"

using namespace oobce;
using Catch::Approx;

TEST_CASE("derived parameters of the default dual-band setup", "[config]") {
  const SystemConfig cfg;
  const auto d = derived_params(cfg);
  CHECK(d.alpha == Approx(100.0).epsilon(1e-12));  // (25.5 / 2.55)^2
  CHECK(d.beta == Approx(10.0).epsilon(1e-12));    // bandwidth ratio, equal noise figures

  // integer-division oracle on the Hz values
  CHECK(d.n_sub6 == 10'080'000 / 60'000);
  CHECK(d.n_mm == 100'800'000 / 60'000);
  CHECK(d.n_sub6 == 168);
  CHECK(d.n_mm == 1680);

  CHECK(d.lambda_s == Approx(0.1176).epsilon(1e-3));
  CHECK(d.lambda_m == Approx(0.01176).epsilon(1e-3));
  CHECK(cfg.element_spacing_m == Approx(0.5 * d.lambda_m).epsilon(1e-15));
  CHECK(cfg.element_spacing_m == Approx(0.05 * d.lambda_s).epsilon(1e-12));
}

TEST_CASE("noise figures enter beta in linear scale", "[config]") {
  SystemConfig cfg;
  cfg.mmwave.noise_figure_db = 6.0;
  const auto d = derived_params(cfg);
  CHECK(d.beta == Approx(10.0 * std::pow(10.0, 0.3)).epsilon(1e-12));
}

TEST_CASE("invalid configurations are rejected", "[config]") {
  SystemConfig cfg;
  SECTION("non-integer subcarrier count") {
    cfg.mmwave.bandwidth_hz = 100.81e6;
    CHECK_THROWS_AS(derived_params(cfg), ConfigError);
  }
  SECTION("mmWave carrier below sub-6") {
    cfg.mmwave.carrier_frequency_hz = 1e9;
    CHECK_THROWS_AS(derived_params(cfg), ConfigError);
  }
  SECTION("empty grid") {
    cfg.snr_mm_db_grid.clear();
    CHECK_THROWS_AS(validate(cfg), ConfigError);
  }
  SECTION("zero realizations") {
    cfg.realizations = 0;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
  }
  SECTION("fewer subcarriers than transmit antennas") {
    cfg.sub6.bandwidth_hz = 2 * cfg.sub6.subcarrier_spacing_hz;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
  }
}

TEST_CASE("key = value configuration files", "[config]") {
  std::istringstream in(R"(# comment line
sub6.carrier_frequency_hz = 3.5e9   # trailing comment
mmwave.bandwidth_hz=50.4e6
m_tx = 2
m_rx = 8
k_factor_mm_db_grid = -10, 0, 10.5
snr_mm_db_grid = 3
realizations = 17
seed = 18446744073709551615
link_distance_m = 25
)");
  const auto cfg = parse_config(in);
  CHECK(cfg.sub6.carrier_frequency_hz == 3.5e9);
  CHECK(cfg.mmwave.bandwidth_hz == 50.4e6);
  CHECK(cfg.m_tx == 2);
  CHECK(cfg.m_rx == 8);
  CHECK(cfg.k_factor_mm_db_grid == std::vector<double>{-10.0, 0.0, 10.5});
  CHECK(cfg.snr_mm_db_grid == std::vector<double>{3.0});
  CHECK(cfg.realizations == 17);
  CHECK(cfg.seed == 18446744073709551615ULL);
  CHECK(cfg.link_distance_m == 25.0);
  CHECK(cfg.mmwave.carrier_frequency_hz == 25.5e9);  // untouched keys keep defaults

  std::istringstream bad_key("unknown_key = 1\n");
  CHECK_THROWS_AS(parse_config(bad_key), ConfigError);
  std::istringstream bad_value("m_tx = four\n");
  CHECK_THROWS_AS(parse_config(bad_value), ConfigError);
  std::istringstream no_equals("m_tx 4\n");
  CHECK_THROWS_AS(parse_config(no_equals), ConfigError);
  std::istringstream negative_seed("seed = -1\n");
  CHECK_THROWS_AS(parse_config(negative_seed), ConfigError);

  SystemConfig over = cfg;
  set_config_value(over, "mmwave.noise_figure_db", " 5 ");
  CHECK(over.mmwave.noise_figure_db == 5.0);
  CHECK_THROWS_AS(load_config("/nonexistent/file.conf"), IoError);
}

TEST_CASE("element distance matrix", "[geometry]") {
  SystemConfig cfg;

  SECTION("single element pair") {
    cfg.m_tx = cfg.m_rx = 1;
    const auto d = build_distance_matrix(cfg);
    REQUIRE(d.rows() == 1);
    CHECK(d(0, 0) == cfg.link_distance_m);
  }

  SECTION("2x2 Pythagoras oracle") {
    cfg.m_tx = cfg.m_rx = 2;
    cfg.element_spacing_m = 0.00588;
    cfg.link_distance_m = 10.0;
    const auto d = build_distance_matrix(cfg);
    const double diag = std::hypot(10.0, 0.00588);  // 10.0000017287...
    CHECK(d(0, 0) == 10.0);
    CHECK(d(1, 1) == 10.0);
    CHECK(d(0, 1) == Approx(diag).epsilon(1e-15));
    CHECK(d(1, 0) == Approx(diag).epsilon(1e-15));
    CHECK(d(0, 1) == Approx(10.00000172872).epsilon(1e-12));
  }

  SECTION("bounds and symmetries") {
    for (auto [m_rx, m_tx] : {std::pair{4, 4}, std::pair{3, 5}, std::pair{8, 2}}) {
      cfg.m_rx = m_rx;
      cfg.m_tx = m_tx;
      const auto d = build_distance_matrix(cfg);
      SystemConfig swapped = cfg;
      std::swap(swapped.m_rx, swapped.m_tx);
      const auto ds = build_distance_matrix(swapped);
      for (int r = 0; r < m_rx; ++r) {
        for (int t = 0; t < m_tx; ++t) {
          CHECK(d(r, t) >= cfg.link_distance_m);
          CHECK(d(r, t) == d(m_rx - 1 - r, m_tx - 1 - t));  // mirror
          CHECK(ds(t, r) == d(r, t));                        // role swap
        }
      }
    }
  }
}

TEST_CASE("shipped TDL-A data file matches the built-in table", "[tdl]") {
  const auto file = load_tdl_profile(std::string(OOBCE_DATA_DIR) + "/tdl_a.csv");
  const auto builtin = tdl_a();
  REQUIRE(file.tap_count() == 23);
  CHECK(file.normalized_delays == builtin.normalized_delays);
  CHECK(file.powers_db == builtin.powers_db);

  const auto p = builtin.linear_powers();
  double sum = 0.0;
  for (double v : p) sum += v;
  CHECK(sum == Approx(1.0).epsilon(1e-14));
  for (std::size_t i = 1; i < builtin.tap_count(); ++i) {
    CHECK(builtin.normalized_delays[i] >= builtin.normalized_delays[i - 1]);
  }
  CHECK(builtin.normalized_delays.front() == 0.0);

  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(parse_tdl_profile(empty), ConfigError);
  std::istringstream negative("-1.0, 0\n");
  CHECK_THROWS_AS(parse_tdl_profile(negative), ConfigError);
}
