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

#include <complex>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace oobce {

using cd = std::complex<double>;

enum class Band { sub6, mmwave };

inline std::string_view to_string(Band b) { return b == Band::sub6 ? "sub6" : "mmwave"; }

/// One complex M_rx x M_tx matrix per OFDM subcarrier of a band. Holds true
/// channels as well as every estimate derived from them.
class ChannelTensor {
 public:
  ChannelTensor() = default;

  ChannelTensor(Band band, int n_subcarriers, int m_rx, int m_tx)
      : band_(band), rows_(m_rx), cols_(m_tx),
        data_(static_cast<std::size_t>(n_subcarriers), Eigen::MatrixXcd::Zero(m_rx, m_tx)) {}

  ChannelTensor(Band band, std::vector<Eigen::MatrixXcd> data) : band_(band), data_(std::move(data)) {
    if (!data_.empty()) {
      rows_ = static_cast<int>(data_.front().rows());
      cols_ = static_cast<int>(data_.front().cols());
    }
    for (const auto& m : data_) {
      if (m.rows() != rows_ || m.cols() != cols_) {
        throw std::invalid_argument("ChannelTensor: inconsistent subcarrier matrix dimensions");
      }
    }
  }

  /// `n` copies of the same matrix.
  static ChannelTensor replicated(Band band, int n, const Eigen::MatrixXcd& m) {
    return ChannelTensor(band, std::vector<Eigen::MatrixXcd>(static_cast<std::size_t>(n), m));
  }

  [[nodiscard]] Band band() const { return band_; }
  [[nodiscard]] int subcarriers() const { return static_cast<int>(data_.size()); }
  [[nodiscard]] int rows() const { return rows_; }
  [[nodiscard]] int cols() const { return cols_; }
  [[nodiscard]] bool empty() const { return data_.empty(); }

  Eigen::MatrixXcd& operator[](std::size_t n) { return data_[n]; }
  const Eigen::MatrixXcd& operator[](std::size_t n) const { return data_[n]; }

  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  [[nodiscard]] auto begin() const { return data_.begin(); }
  [[nodiscard]] auto end() const { return data_.end(); }

  [[nodiscard]] bool same_shape(const ChannelTensor& o) const {
    return subcarriers() == o.subcarriers() && rows_ == o.rows_ && cols_ == o.cols_;
  }

  [[nodiscard]] bool all_finite() const {
    for (const auto& m : data_) {
      if (!m.allFinite()) return false;
    }
    return true;
  }

 private:
  Band band_ = Band::mmwave;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Eigen::MatrixXcd> data_;
};

/// Sum over subcarriers of the squared Frobenius norm of a - b.
inline double squared_error(const ChannelTensor& a, const ChannelTensor& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("squared_error: shape mismatch");
  double acc = 0.0;
  for (int n = 0; n < a.subcarriers(); ++n) acc += (a[n] - b[n]).squaredNorm();
  return acc;
}

}  // namespace oobce
