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

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oobce/oobce.hpp"

namespace {

constexpr int kExitConfigError = 1;
constexpr int kExitIoError = 2;

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;  // key=value
  std::optional<std::uint64_t> seed;
  std::optional<int> realizations;
  unsigned parallelism = 1;
  std::string tdl_path;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "key = value configuration file");
  cmd->add_option("--set", args.overrides, "override one configuration key (key=value), repeatable");
  cmd->add_option("--seed", args.seed, "master seed");
  cmd->add_option("--realizations", args.realizations, "Monte Carlo realizations per grid point");
  cmd->add_option("--parallelism", args.parallelism, "worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tdl", args.tdl_path, "TDL profile file (delay, power_dB per line)");
}

oobce::SimulationContext load_context(const CommonArgs& args) {
  oobce::SystemConfig cfg;
  if (!args.config_path.empty()) cfg = oobce::load_config(args.config_path);
  for (const auto& kv : args.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw oobce::ConfigError("--set expects key=value, got '" + kv + "'");
    oobce::set_config_value(cfg, oobce::detail::trim(kv.substr(0, eq)), kv.substr(eq + 1));
  }
  if (args.seed) cfg.seed = *args.seed;
  if (args.realizations) cfg.realizations = *args.realizations;
  auto profile = args.tdl_path.empty() ? oobce::tdl_a() : oobce::load_tdl_profile(args.tdl_path);
  return oobce::make_context(cfg, std::move(profile));
}

std::vector<oobce::EstimationMethod> parse_methods(const std::string& list) {
  std::vector<oobce::EstimationMethod> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = oobce::detail::trim(item);
    if (!item.empty()) out.push_back(oobce::parse_method(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual-band MIMO-OFDM link simulator: sub-6 GHz aided mmWave channel estimation"};
  app.require_subcommand(1);

  CommonArgs sweep_args;
  std::string methods = "conventional,perfect_csi,translating,averaging,weighting";
  std::string sweep_out = "sweep.csv";
  std::string weight_table_in;
  bool per_stream = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "spectral efficiency over the (method, K, SNR) grid");
  add_common(sweep_cmd, sweep_args);
  sweep_cmd->add_option("--methods", methods, "comma-separated estimation methods");
  sweep_cmd->add_option("--out", sweep_out, "output CSV");
  sweep_cmd->add_option("--weight-table", weight_table_in, "precomputed weight table CSV for the weighting method");
  sweep_cmd->add_flag("--per-stream-sinr", per_stream, "diagnostic: sum of per-stream log2(1 + SINR)");

  CommonArgs table_args;
  std::string table_out = "weight_table.csv";
  double w_step = 0.01;
  auto* table_cmd = app.add_subcommand("weight-table", "MSE-optimal weight lookup table");
  add_common(table_cmd, table_args);
  table_cmd->add_option("--out", table_out, "output CSV");
  table_cmd->add_option("--w-step", w_step, "weight grid step (must divide 1)");

  CommonArgs validate_args;
  auto* validate_cmd = app.add_subcommand("validate", "run the numerical invariant suite");
  add_common(validate_cmd, validate_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  try {
    if (*sweep_cmd) {
      const auto ctx = load_context(sweep_args);
      const auto requested = parse_methods(methods);
      std::optional<oobce::WeightTable> table;
      if (!weight_table_in.empty()) table = oobce::load_weight_table(weight_table_in);
      oobce::RunOptions opts;
      opts.parallelism = sweep_args.parallelism;
      if (per_stream) opts.sinr_mode = oobce::SinrMode::per_stream;
      const auto rows = oobce::run_sweep(ctx, requested, sweep_out, table ? &*table : nullptr, opts);
      if (ctx.cfg.realizations < 2) {
        std::cerr << "warning: a single realization per point; ci95_halfwidth is undefined and written as 0\n";
      }
      std::cout << "wrote " << rows.size() << " rows to " << sweep_out << '\n';
    } else if (*table_cmd) {
      const auto ctx = load_context(table_args);
      oobce::RunOptions opts;
      opts.parallelism = table_args.parallelism;
      const auto table = oobce::regenerate_weight_table(ctx, table_out, w_step, opts);
      std::cout << "wrote " << table.k_grid_db().size() << "x" << table.snr_grid_db().size() << " table to "
                << table_out << '\n';
    } else if (*validate_cmd) {
      const auto ctx = load_context(validate_args);
      bool all = true;
      for (const auto& c : oobce::run_invariant_suite(ctx.cfg)) {
        std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << "  (measured " << c.measured << ", limit "
                  << c.threshold << ")\n";
        all = all && c.passed;
      }
      return all ? 0 : 3;
    }
  } catch (const oobce::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const oobce::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIoError;
  }
  return 0;
}
