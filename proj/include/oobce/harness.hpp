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

#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "oobce/link_eval.hpp"
#include "oobce/parallel.hpp"
#include "oobce/pipeline.hpp"
#include "oobce/weight_search.hpp"
#include "oobce/weight_table.hpp"

namespace oobce {

struct RunOptions {
  unsigned parallelism = 1;
  SinrMode sinr_mode = SinrMode::aggregate;
  /// Methods whose fused estimates coincide bit for bit (e.g. weighting at
  /// W = 0 and conventional) share one SVD evaluation.
  bool reuse_identical_estimates = true;
};

/// Monte Carlo outcome of one method at one (K, SNR) point.
struct SweepResult {
  EstimationMethod method = EstimationMethod::conventional;
  double k_mm_db = 0.0;
  double snr_mm_db = 0.0;
  std::vector<double> se_samples;
  std::vector<int> realization_index;  // realization behind each sample, for pairing
  double mean_se = 0.0;
  double ci95_halfwidth = 0.0;  // 0 when fewer than two samples
  int excluded_count = 0;

  [[nodiscard]] bool ci_defined() const { return se_samples.size() >= 2; }
};

struct SampleStats {
  double mean = 0.0;
  double ci95_halfwidth = 0.0;
};

/// Mean and normal-approximation 95% half width, summed in index order.
inline SampleStats sample_stats(const std::vector<double>& x) {
  SampleStats s;
  if (x.empty()) return s;
  double sum = 0.0;
  for (double v : x) sum += v;
  s.mean = sum / static_cast<double>(x.size());
  if (x.size() < 2) return s;
  double ss = 0.0;
  for (double v : x) ss += (v - s.mean) * (v - s.mean);
  const double sd = std::sqrt(ss / static_cast<double>(x.size() - 1));
  s.ci95_halfwidth = 1.96 * sd / std::sqrt(static_cast<double>(x.size()));
  return s;
}

namespace detail {

/// Sub-6 weight equivalent to the method's fused estimate, if it is a mix.
inline std::optional<double> mix_weight(EstimationMethod m, double table_w) {
  switch (m) {
    case EstimationMethod::conventional: return 0.0;
    case EstimationMethod::translating: return 1.0;
    case EstimationMethod::averaging: return 0.5;
    case EstimationMethod::weighting: return table_w;
    case EstimationMethod::perfect_csi: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace detail

/// Runs every method in `methods` on the same L realizations of one grid
/// point. Realization l always uses the substream of (seed, l, K, SNR), so
/// all methods see identical channels and noise.
inline std::vector<SweepResult> evaluate_point(const SimulationContext& ctx, const std::vector<EstimationMethod>& methods,
                                               double k_mm_db, double snr_mm_db, const WeightTable* weight_table,
                                               const RunOptions& options = {}) {
  bool needs_table = false;
  for (auto m : methods) needs_table |= (m == EstimationMethod::weighting);
  if (needs_table && weight_table == nullptr) throw ConfigError("weighting requires a weight table");
  const double table_w = needs_table ? weight_table->lookup(k_mm_db, snr_mm_db) : 0.0;

  const auto L = static_cast<std::size_t>(ctx.cfg.realizations);
  // samples[l][method] is empty when the SVD failed for that realization
  std::vector<std::vector<std::optional<double>>> samples(L, std::vector<std::optional<double>>(methods.size()));

  parallel_for(L, options.parallelism, [&](std::size_t l) {
    auto rng = make_rng(ctx.cfg.seed, StreamDomain::sweep, l, k_mm_db, snr_mm_db);
    const auto est = run_estimation_pipeline(ctx, k_mm_db, snr_mm_db, rng);
    std::map<double, std::optional<double>> by_weight;
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      const auto m = methods[mi];
      const auto w = detail::mix_weight(m, table_w);
      if (options.reuse_identical_estimates && w) {
        if (auto it = by_weight.find(*w); it != by_weight.end()) {
          samples[l][mi] = it->second;
          continue;
        }
      }
      std::optional<double> se;
      try {
        const auto fused = fuse(m, est.h_hat_sub6, est.h_tilde_mm, est.truth.h_mm,
                                m == EstimationMethod::weighting ? std::optional<double>(table_w) : std::nullopt);
        const auto precoding = svd_precoding(fused, ctx.cfg.transmit_power);
        se = spectral_efficiency(channel_gain(precoding, est.truth.h_mm), est.truth.noise_var_mm, precoding,
                                 options.sinr_mode);
      } catch (const NumericalError&) {
        se.reset();
      }
      samples[l][mi] = se;
      if (w) by_weight[*w] = se;
    }
  });

  std::vector<SweepResult> out;
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    SweepResult r;
    r.method = methods[mi];
    r.k_mm_db = k_mm_db;
    r.snr_mm_db = snr_mm_db;
    for (std::size_t l = 0; l < L; ++l) {
      if (samples[l][mi]) {
        r.se_samples.push_back(*samples[l][mi]);
        r.realization_index.push_back(static_cast<int>(l));
      } else {
        ++r.excluded_count;
      }
    }
    const auto s = sample_stats(r.se_samples);
    r.mean_se = s.mean;
    r.ci95_halfwidth = s.ci95_halfwidth;
    out.push_back(std::move(r));
  }
  return out;
}

/// Single method at a single point. A weight table must be given exactly
/// when the method is weighting.
inline SweepResult run_point(const SimulationContext& ctx, EstimationMethod method, double k_mm_db, double snr_mm_db,
                             const WeightTable* weight_table = nullptr, const RunOptions& options = {}) {
  if ((method == EstimationMethod::weighting) != (weight_table != nullptr)) {
    throw ConfigError("run_point: a weight table is required for weighting and only for weighting");
  }
  return evaluate_point(ctx, {method}, k_mm_db, snr_mm_db, weight_table, options).front();
}

/// Paired difference a - b over realizations present in both results.
inline SampleStats paired_difference(const SweepResult& a, const SweepResult& b) {
  std::map<int, double> bv;
  for (std::size_t i = 0; i < b.se_samples.size(); ++i) bv[b.realization_index[i]] = b.se_samples[i];
  std::vector<double> d;
  for (std::size_t i = 0; i < a.se_samples.size(); ++i) {
    if (auto it = bv.find(a.realization_index[i]); it != bv.end()) d.push_back(a.se_samples[i] - it->second);
  }
  return sample_stats(d);
}

inline constexpr const char* kSweepCsvHeader = "method,k_mm_db,snr_mm_db,mean_se,ci95_halfwidth,n_samples,excluded";

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepResult>& rows) {
  out << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    out << to_string(r.method) << ',' << format_fixed(r.k_mm_db, 2) << ',' << format_fixed(r.snr_mm_db, 2) << ','
        << format_fixed(r.mean_se, 4) << ',' << format_fixed(r.ci95_halfwidth, 4) << ',' << r.se_samples.size() << ','
        << r.excluded_count << '\n';
  }
}

namespace detail {

inline void require_writable_location(const std::string& path) {
  namespace fs = std::filesystem;
  const fs::path p(path);
  const fs::path parent = p.has_parent_path() ? p.parent_path() : fs::path(".");
  std::error_code ec;
  if (!fs::is_directory(parent, ec)) throw IoError("output directory does not exist: '" + parent.string() + "'");
  if (fs::is_directory(p, ec)) throw IoError("output path is a directory: '" + path + "'");
}

}  // namespace detail

/// Requested methods plus the conventional and perfect-CSI baselines, in
/// canonical order.
inline std::vector<EstimationMethod> sweep_method_set(const std::vector<EstimationMethod>& requested) {
  if (requested.empty()) throw ConfigError("sweep: method list is empty");
  std::vector<EstimationMethod> out;
  for (auto m : kAllMethods) {
    const bool baseline = m == EstimationMethod::conventional || m == EstimationMethod::perfect_csi;
    if (baseline || std::find(requested.begin(), requested.end(), m) != requested.end()) out.push_back(m);
  }
  return out;
}

/// Weight table for the configured grids, built on the weight-table
/// substreams so it never shares realizations with a sweep.
inline WeightTable weight_table_for(const SimulationContext& ctx, double w_step, unsigned parallelism) {
  return build_weight_table(ctx, ctx.cfg.k_factor_mm_db_grid, ctx.cfg.snr_mm_db_grid, w_step, ctx.cfg.realizations,
                            parallelism);
}

/// All (method, K, SNR) results of the configured grids, method-major.
inline std::vector<SweepResult> sweep(const SimulationContext& ctx, const std::vector<EstimationMethod>& requested,
                                      const WeightTable* weight_table, const RunOptions& options = {}) {
  const auto methods = sweep_method_set(requested);
  const bool weighting = std::find(methods.begin(), methods.end(), EstimationMethod::weighting) != methods.end();
  std::optional<WeightTable> own_table;
  if (weighting && weight_table == nullptr) {
    own_table = weight_table_for(ctx, 0.01, options.parallelism);
    weight_table = &*own_table;
  }
  std::vector<std::vector<SweepResult>> per_point;
  for (double k : ctx.cfg.k_factor_mm_db_grid) {
    for (double s : ctx.cfg.snr_mm_db_grid) {
      per_point.push_back(evaluate_point(ctx, methods, k, s, weighting ? weight_table : nullptr, options));
    }
  }
  std::vector<SweepResult> rows;
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    for (auto& point : per_point) rows.push_back(std::move(point[mi]));
  }
  return rows;
}

/// Runs the sweep and writes its CSV to `output_path`. Nothing is written if
/// the method list is empty or the computation fails.
inline std::vector<SweepResult> run_sweep(const SimulationContext& ctx, const std::vector<EstimationMethod>& requested,
                                          const std::string& output_path, const WeightTable* weight_table = nullptr,
                                          const RunOptions& options = {}) {
  sweep_method_set(requested);
  detail::require_writable_location(output_path);
  auto rows = sweep(ctx, requested, weight_table, options);
  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw IoError("cannot write sweep output '" + output_path + "'");
  write_sweep_csv(out, rows);
  if (!out) throw IoError("error while writing sweep output '" + output_path + "'");
  return rows;
}

/// Builds the lookup table for the configured grids and writes it as CSV.
inline WeightTable regenerate_weight_table(const SimulationContext& ctx, const std::string& output_path,
                                           double w_step = 0.01, const RunOptions& options = {}) {
  weight_candidates(w_step);
  detail::require_writable_location(output_path);
  auto table = weight_table_for(ctx, w_step, options.parallelism);
  save_weight_table(output_path, table, weight_decimals(w_step));
  return table;
}

}  // namespace oobce
