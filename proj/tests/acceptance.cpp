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

// Acceptance suite: reproduces the headline numbers of the dual-band
// estimation study at full scale (4x4, L = 1000) and prints one PASS/FAIL
// line per criterion. Exit status is nonzero if any criterion fails.
//
// OOBCE_ACCEPTANCE_REALIZATIONS overrides L for quick local runs only; the
// registered ctest always uses the default.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oobce/oobce.hpp"

using namespace oobce;

namespace {

struct Outcome {
  int id;
  bool passed;
  std::string detail;
};

std::vector<Outcome> g_outcomes;

void report(int id, bool passed, const std::string& detail) {
  g_outcomes.push_back({id, passed, detail});
  std::printf("[%s] criterion %d: %s\n", passed ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int realizations_from_env() {
  if (const char* v = std::getenv("OOBCE_ACCEPTANCE_REALIZATIONS")) {
    const int n = std::atoi(v);
    if (n > 0) return n;
  }
  return 1000;
}

SystemConfig table1_config(int realizations) {
  SystemConfig cfg;  // defaults carry the reference system parameters, 4x4
  cfg.realizations = realizations;
  cfg.seed = 1;
  return cfg;
}

using PointKey = std::pair<double, double>;  // (K dB, SNR dB)
using PointResults = std::map<EstimationMethod, SweepResult>;

const std::vector<EstimationMethod> kCompared{EstimationMethod::conventional, EstimationMethod::translating,
                                              EstimationMethod::averaging, EstimationMethod::weighting};

/// Mean error for every candidate weight, by mixing each realization
/// explicitly (independent of the quadratic expansion used by the table).
std::vector<double> brute_force_errors(const SimulationContext& ctx, double k, double s,
                                       const std::vector<double>& candidates) {
  std::vector<double> err(candidates.size(), 0.0);
  double count = 0.0;
  for (int l = 0; l < ctx.cfg.realizations; ++l) {
    auto rng = make_rng(ctx.cfg.seed, StreamDomain::weight_table, static_cast<std::uint64_t>(l), k, s);
    const auto est = run_estimation_pipeline(ctx, k, s, rng);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const double w = candidates[i];
      double acc = 0.0;
      for (int n = 0; n < est.truth.h_mm.subcarriers(); ++n) {
        acc += (est.truth.h_mm[n] - (w * est.h_hat_sub6[n] + (1.0 - w) * est.h_tilde_mm[n])).squaredNorm();
      }
      err[i] += acc;
    }
    count += est.truth.h_mm.subcarriers();
  }
  for (double& e : err) e /= count;
  return err;
}

void check_gain(int id, const PointResults& r, double lo, double hi, bool include_translating) {
  const double conv = r.at(EstimationMethod::conventional).mean_se;
  const double wt = r.at(EstimationMethod::weighting).mean_se / conv;
  const double tr = r.at(EstimationMethod::translating).mean_se / conv;
  const auto& any = r.at(EstimationMethod::conventional);
  bool ok = wt >= lo && wt <= hi;
  if (include_translating) ok = ok && tr >= lo && tr <= hi;
  report(id, ok,
         fmt("K=%.0f dB, SNR=%.0f dB: SE weighting/conventional = %.3f, translating/conventional = %.3f "
             "(conventional %.4f, weighting %.4f bit/s/Hz), required [%.2f, %.2f]%s",
             any.k_mm_db, any.snr_mm_db, wt, tr, conv, r.at(EstimationMethod::weighting).mean_se, lo, hi,
             include_translating ? " for both" : " for weighting"));
}

}  // namespace

int main() {
  const auto t_start = std::chrono::steady_clock::now();
  const int L = realizations_from_env();
  const auto cfg = table1_config(L);
  const auto ctx = make_context(cfg);
  std::printf("acceptance: %dx%d, N_sub6=%d, N_mm=%d, L=%d, seed=%llu\n", cfg.m_rx, cfg.m_tx, ctx.derived.n_sub6,
              ctx.derived.n_mm, L, static_cast<unsigned long long>(cfg.seed));
  if (L != 1000) std::printf("note: L overridden by OOBCE_ACCEPTANCE_REALIZATIONS; results are not the gate\n");
  std::fflush(stdout);

  const auto k_grid = db_range(-20.0, 30.0, 5.0);
  const double k_high = k_grid.back();
  const double k_low = k_grid.front();

  // Criterion 6 first: it is cheap and validates the machinery.
  {
    const auto t0 = std::chrono::steady_clock::now();
    const auto checks = run_invariant_suite(cfg);
    const double elapsed = seconds_since(t0);
    bool all = elapsed < 60.0;
    std::string failed;
    for (const auto& c : checks) {
      std::printf("    %-55s measured %.3e, limit %.1e %s\n", c.name.c_str(), c.measured, c.threshold,
                  c.passed ? "ok" : "FAILED");
      if (!c.passed) failed += " " + c.name + ";";
      all = all && c.passed;
    }
    report(6, all,
           fmt("%zu numerical invariants in %.1f s (limit 60 s)%s%s", checks.size(), elapsed,
               failed.empty() ? "" : ", failed:", failed.c_str()));
  }

  // Weight cells needed by the sweeps and the spot checks.
  std::vector<PointKey> cells;
  for (double k : k_grid) cells.emplace_back(k, -5.0);
  cells.emplace_back(k_high, 0.0);
  cells.emplace_back(k_high, 10.0);
  const std::vector<PointKey> spots{{10.0, -5.0}, {0.0, -10.0}, {-20.0, 5.0}};
  const std::vector<double> spot_paper{0.35, 0.55, 1.0};
  cells.emplace_back(0.0, -10.0);
  cells.emplace_back(-20.0, 5.0);

  std::vector<double> cell_k;
  std::vector<double> cell_s;
  for (auto [k, s] : cells) {
    if (std::find(cell_k.begin(), cell_k.end(), k) == cell_k.end()) cell_k.push_back(k);
    if (std::find(cell_s.begin(), cell_s.end(), s) == cell_s.end()) cell_s.push_back(s);
  }
  WeightTable table(cell_k, cell_s);
  const auto candidates = weight_candidates(0.01);
  {
    const auto t0 = std::chrono::steady_clock::now();
    for (auto [k, s] : cells) {
      const auto q = collect_error_quadratic(ctx, k, s, L, 1);
      const auto ki = static_cast<std::size_t>(std::find(cell_k.begin(), cell_k.end(), k) - cell_k.begin());
      const auto si = static_cast<std::size_t>(std::find(cell_s.begin(), cell_s.end(), s) - cell_s.begin());
      table.set(ki, si, optimal_weight(q, candidates));
      std::printf("    weight W_sub6(K=%6.1f dB, SNR=%6.1f dB) = %.2f\n", k, s, table.lookup(k, s));
      std::fflush(stdout);
    }
    std::printf("    weight cells: %.1f s\n", seconds_since(t0));
  }

  // Sweeps on the sweep substreams; every method sees the same realizations.
  std::map<PointKey, PointResults> results;
  {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<PointKey> points;
    for (double k : k_grid) points.emplace_back(k, -5.0);
    points.emplace_back(k_high, 0.0);
    points.emplace_back(k_high, 10.0);
    for (auto [k, s] : points) {
      for (auto& r : evaluate_point(ctx, kCompared, k, s, &table)) {
        std::printf("    SE %-12s K=%6.1f SNR=%6.1f  mean %.4f  ci95 %.4f  excluded %d\n",
                    std::string(to_string(r.method)).c_str(), k, s, r.mean_se, r.ci95_halfwidth, r.excluded_count);
        results[{k, s}][r.method] = std::move(r);
      }
      std::fflush(stdout);
    }
    std::printf("    sweeps: %.1f s\n", seconds_since(t0));
  }

  check_gain(1, results.at({k_high, -5.0}), 1.5, 2.1, true);
  check_gain(2, results.at({k_high, 0.0}), 1.15, 1.5, false);
  check_gain(3, results.at({k_high, 10.0}), 1.0, 1.1, false);

  // Criterion 4: spot weights, in the stored orientation (weight on the
  // rotated sub-6 estimate, near 1 at high K) and, for information, the
  // complementary orientation (weight on the mmWave estimate).
  {
    bool spots_ok = true;
    bool complement_ok = true;
    std::string detail;
    for (std::size_t i = 0; i < spots.size(); ++i) {
      const auto [k, s] = spots[i];
      const double w = table.lookup(k, s);
      spots_ok = spots_ok && std::abs(w - spot_paper[i]) <= 0.1;
      complement_ok = complement_ok && std::abs((1.0 - w) - spot_paper[i]) <= 0.1;
      detail += fmt(" (K=%.0f,SNR=%.0f): W_sub6=%.2f, 1-W_sub6=%.2f vs %.2f;", k, s, w, 1.0 - w, spot_paper[i]);
    }
    // argmin re-check against brute-force mixing on the same realizations
    bool argmin_ok = true;
    for (auto [k, s] : spots) {
      const auto err = brute_force_errors(ctx, k, s, candidates);
      std::size_t best = 0;
      for (std::size_t i = 1; i < err.size(); ++i) {
        if (err[i] < err[best]) best = i;
      }
      const double stored = table.lookup(k, s);
      const auto stored_i = static_cast<std::size_t>(std::lround(stored * 100.0));
      // Equal up to rounding of the two error evaluations.
      const bool ok = best == stored_i || err[stored_i] <= err[best] * (1.0 + 1e-12);
      argmin_ok = argmin_ok && ok;
      detail += fmt(" argmin re-check (K=%.0f,SNR=%.0f): brute force %.2f, stored %.2f;", k, s, candidates[best], stored);
    }
    detail += fmt(" stored orientation %s, complementary orientation %s, argmin re-check %s",
                  spots_ok ? "matches" : "does not match", complement_ok ? "matches" : "does not match",
                  argmin_ok ? "exact" : "FAILED");
    report(4, spots_ok && argmin_ok, "lookup-table spot weights within 0.1:" + detail);
  }

  // Criterion 5: ordering at SNR = -5 dB with paired 95% intervals.
  {
    const auto& hi = results.at({k_high, -5.0});
    const auto& lo = results.at({k_low, -5.0});
    const auto t_vs_a_hi = paired_difference(hi.at(EstimationMethod::translating), hi.at(EstimationMethod::averaging));
    const auto a_vs_t_lo = paired_difference(lo.at(EstimationMethod::averaging), lo.at(EstimationMethod::translating));
    const bool trans_beats_avg_hi = t_vs_a_hi.mean - t_vs_a_hi.ci95_halfwidth > 0.0;
    const bool avg_beats_trans_lo = a_vs_t_lo.mean - a_vs_t_lo.ci95_halfwidth > 0.0;
    bool weighting_ok = true;
    std::string worst;
    double worst_margin = 1e300;
    for (double k : k_grid) {
      const auto& r = results.at({k, -5.0});
      for (auto other : {EstimationMethod::translating, EstimationMethod::averaging}) {
        const auto d = paired_difference(r.at(EstimationMethod::weighting), r.at(other));
        const double margin = d.mean + d.ci95_halfwidth;
        if (margin < worst_margin) {
          worst_margin = margin;
          worst = fmt("weighting-%s at K=%.0f: %.4f +- %.4f", std::string(to_string(other)).c_str(), k, d.mean,
                      d.ci95_halfwidth);
        }
        weighting_ok = weighting_ok && margin >= 0.0;
      }
    }
    report(5, trans_beats_avg_hi && avg_beats_trans_lo && weighting_ok,
           fmt("SNR=-5 dB: translating-averaging at K=%.0f = %.4f +- %.4f (%s); averaging-translating at K=%.0f = "
               "%.4f +- %.4f (%s); weighting >= both at all K: %s (tightest %s)",
               k_high, t_vs_a_hi.mean, t_vs_a_hi.ci95_halfwidth, trans_beats_avg_hi ? "beats" : "does not beat",
               k_low, a_vs_t_lo.mean, a_vs_t_lo.ci95_halfwidth, avg_beats_trans_lo ? "beats" : "does not beat",
               weighting_ok ? "yes" : "no", worst.c_str()));
  }

  // Criterion 7: byte-identical sweep CSV across reruns and worker counts.
  {
    auto small = cfg;
    small.k_factor_mm_db_grid = {k_low, 10.0, k_high};
    small.snr_mm_db_grid = {-5.0, 10.0};
    small.realizations = 12;
    const auto sctx = make_context(small);
    const auto dir = std::filesystem::temp_directory_path();
    const std::vector<EstimationMethod> all(kAllMethods.begin(), kAllMethods.end());
    std::vector<std::string> texts;
    for (unsigned par : {1u, 1u, 4u}) {
      const auto path = dir / fmt("oobce_acceptance_sweep_%u_%zu.csv", par, texts.size());
      RunOptions opts;
      opts.parallelism = par;
      run_sweep(sctx, all, path.string(), nullptr, opts);
      std::ifstream in(path, std::ios::binary);
      std::ostringstream ss;
      ss << in.rdbuf();
      texts.push_back(ss.str());
      std::filesystem::remove(path);
    }
    const bool same = texts[0] == texts[1] && texts[0] == texts[2] && !texts[0].empty();
    report(7, same,
           fmt("4x4 sweep (%zu bytes, 5 methods x 3 K x 2 SNR, L=12) identical across two serial runs and one "
               "4-worker run: %s",
               texts[0].size(), same ? "yes" : "no"));
  }

  int failed = 0;
  std::printf("\nsummary (%.0f s):\n", seconds_since(t_start));
  std::sort(g_outcomes.begin(), g_outcomes.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  for (const auto& o : g_outcomes) {
    std::printf("  criterion %d: %s\n", o.id, o.passed ? "PASS" : "FAIL");
    failed += o.passed ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
