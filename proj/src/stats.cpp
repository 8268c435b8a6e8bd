// Copyright 2026 The fconn authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fconn/stats.hpp"

#include <cmath>

namespace fconn {

StandardizedRows standardize_rows(const FunctionalMatrix& z) {
  return standardize_rows(z.values, covariance_diagonal(z.values, z.n_subjects()));
}

FunctionalMatrix row_center(const FunctionalMatrix& z) {
  FunctionalMatrix out = z;
  out.values = row_center(z.values);
  return out;
}

GroupMatrix row_center(const GroupMatrix& y) {
  GroupMatrix out = y;
  out.values = row_center(y.values);
  return out;
}

SubjectRecord periodogram(const SubjectRecord& record, Index n_freqs) {
  validate(record);
  if (record.axis.kind != AxisKind::Time) {
    throw ValidationError("periodogram: subject '" + record.subject_id +
                          "' does not have a time axis");
  }
  const Index n = record.n_axis();
  if (n_freqs < 1) throw ValidationError("periodogram: n_freqs must be positive");
  if (n < 2 * n_freqs) {
    throw ValidationError("periodogram: need at least 2*n_freqs samples, have " +
                          std::to_string(n));
  }
  const std::vector<double>& pos = record.axis.positions;
  const double dt = (pos.back() - pos.front()) / static_cast<double>(n - 1);
  for (Index t = 1; t < n; ++t) {
    const double step = pos[static_cast<std::size_t>(t)] - pos[static_cast<std::size_t>(t - 1)];
    if (std::abs(step - dt) > 1e-9 * std::max(1.0, std::abs(dt))) {
      throw ValidationError("periodogram: time axis of subject '" + record.subject_id +
                            "' is not uniformly spaced");
    }
  }

  // Power at bin k via two real GEMMs against precomputed cos/sin tables.
  Matrix cos_table(n_freqs, n);
  Matrix sin_table(n_freqs, n);
  const double w0 = 2.0 * M_PI / static_cast<double>(n);
  for (Index k = 0; k < n_freqs; ++k) {
    for (Index t = 0; t < n; ++t) {
      const double angle = w0 * static_cast<double>(k) * static_cast<double>(t);
      cos_table(k, t) = std::cos(angle);
      sin_table(k, t) = std::sin(angle);
    }
  }
  const Matrix re = cos_table * record.values.transpose();  // n_freqs x n_voxels
  const Matrix im = sin_table * record.values.transpose();
  const Matrix power =
      ((re.array().square() + im.array().square()) / static_cast<double>(n)).transpose();

  SubjectRecord out;
  out.subject_id = record.subject_id;
  out.voxel_ids = record.voxel_ids;
  out.values = power;
  out.axis.kind = AxisKind::Frequency;
  out.axis.name = "frequency";
  out.axis.positions.resize(static_cast<std::size_t>(n_freqs));
  for (Index k = 0; k < n_freqs; ++k) {
    out.axis.positions[static_cast<std::size_t>(k)] =
        static_cast<double>(k) / (static_cast<double>(n) * dt);
  }
  return out;
}

}  // namespace fconn
