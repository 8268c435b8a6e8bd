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
//
// Reading a loading map: entries with large absolute value mark coupled
// (voxel, latency) samples, and when voxel a peaks at tau_a and voxel b at
// tau_b the pair is reported as cross-correlated at lag |tau_a - tau_b|.

#pragma once

#include <string>
#include <vector>

#include "fconn/decomposition.hpp"
#include "fconn/synth.hpp"
#include "fconn/types.hpp"

namespace fconn {

struct CouplingEvent {
  Index voxel = 0;
  Index axis_position = 0;  // kNoAxisPosition for spatial-only (ssvd) events
  double value = 0.0;
};

inline constexpr Index kNoAxisPosition = -1;

struct LagPair {
  Index voxel_a = 0;
  Index voxel_b = 0;
  Index lag = 0;  // |tau_a - tau_b| in axis steps
};

struct CouplingReport {
  Method method = Method::Fsvd;
  double threshold = 0.5;
  std::string threshold_mode = "fraction";
  double strength = 0.0;
  int component_index = 0;
  Index n_voxels = 0;
  Index n_times = 0;  // 0 for spatial-only reports
  std::vector<CouplingEvent> events;
  std::vector<LagPair> lags;
};

/// Keeps every entry with |value| >= theta * max|map|, theta in (0, 1].
/// Events come back sorted by descending |value|, ties by flat index.
std::vector<CouplingEvent> threshold_component(const Matrix& map, double theta);

/// Alternative cut: keeps entries with |value| >= the q-quantile of |map|
/// (q in (0, 1], lower-value semantics: the ceil(q*n)-th smallest).
std::vector<CouplingEvent> threshold_component_quantile(const Matrix& map, double q);

/// Per voxel the surviving event of largest |value| defines that voxel's
/// latency; every unordered voxel pair is reported with the latency gap.
/// Sorted by (voxel_a, voxel_b).
std::vector<LagPair> infer_lags(const std::vector<CouplingEvent>& events);

struct RecoveryMetrics {
  double hit_rate = 0.0;         // truth events with a report at the voxel within +-1 step
  double false_alarm_rate = 0.0; // reported events matching no truth event
  double mean_abs_lag_error = 0.0;
  bool has_lag_error = false;    // false when events carry no axis positions
  Index matched = 0;
  Index n_truth = 0;
  Index n_reported = 0;
};

/// Scores a report against planted ground truth. Both lists must be
/// non-empty. Events without axis positions match on voxel alone.
RecoveryMetrics evaluate_recovery(const std::vector<CouplingEvent>& reported,
                                  const std::vector<TruthEvent>& truth);

}  // namespace fconn
