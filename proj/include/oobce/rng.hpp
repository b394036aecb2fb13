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

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace oobce {

using Rng = std::mt19937_64;

/// Bumped whenever the substream derivation below changes; results are only
/// reproducible between builds with the same version.
inline constexpr std::uint64_t kSubstreamVersion = 1;

/// Independent purposes get disjoint substreams for the same grid point.
enum class StreamDomain : std::uint64_t { sweep = 1, weight_table = 2, validation = 3, test = 4 };

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Grid coordinates enter the hash at 0.01 dB resolution, so a point's
/// stream depends on its value only and never on its position in a grid.
inline std::uint64_t db_key(double db) {
  return static_cast<std::uint64_t>(static_cast<std::int64_t>(std::llround(db * 100.0)));
}

/// Seed of realization `l` at grid point (k_db, snr_db).
inline std::uint64_t substream_seed(std::uint64_t seed, StreamDomain domain, std::uint64_t l,
                                    double k_db, double snr_db) {
  std::uint64_t h = splitmix64(seed ^ (kSubstreamVersion << 56));
  for (std::uint64_t part : {static_cast<std::uint64_t>(domain), l, db_key(k_db), db_key(snr_db)}) {
    h = splitmix64(h ^ part);
  }
  return h;
}

inline Rng make_rng(std::uint64_t seed, StreamDomain domain, std::uint64_t l, double k_db, double snr_db) {
  return Rng(substream_seed(seed, domain, l, k_db, snr_db));
}

/// Circularly-symmetric complex Gaussian sample with E|z|^2 = variance.
template <class Urbg>
std::complex<double> complex_gaussian(Urbg& g, double variance) {
  std::normal_distribution<double> unit(0.0, 1.0);
  const double s = std::sqrt(variance / 2.0);
  const double re = unit(g);
  const double im = unit(g);
  return {s * re, s * im};
}

}  // namespace oobce
