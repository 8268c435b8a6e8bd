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

#include "fconn/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fconn/errors.hpp"

namespace fconn {

namespace {

std::vector<CouplingEvent> collect_above(const Matrix& map, double cut) {
  std::vector<CouplingEvent> events;
  for (Index t = 0; t < map.cols(); ++t) {
    for (Index v = 0; v < map.rows(); ++v) {
      if (std::abs(map(v, t)) >= cut) events.push_back({v, t, map(v, t)});
    }
  }
  const Index n_voxels = map.rows();
  std::sort(events.begin(), events.end(), [n_voxels](const CouplingEvent& a, const CouplingEvent& b) {
    const double aa = std::abs(a.value), ab = std::abs(b.value);
    if (aa != ab) return aa > ab;
    return a.axis_position * n_voxels + a.voxel < b.axis_position * n_voxels + b.voxel;
  });
  return events;
}

void check_map(const Matrix& map) {
  if (map.size() == 0) throw ValidationError("threshold: empty map");
  if (!map.allFinite()) throw ValidationError("threshold: map contains non-finite values");
  if (map.cwiseAbs().maxCoeff() == 0.0) throw ValidationError("threshold: map is all zero");
}

}  // namespace

std::vector<CouplingEvent> threshold_component(const Matrix& map, double theta) {
  check_map(map);
  if (!(theta > 0.0) || theta > 1.0) {
    throw ValidationError("threshold: theta must be in (0, 1]");
  }
  return collect_above(map, theta * map.cwiseAbs().maxCoeff());
}

std::vector<CouplingEvent> threshold_component_quantile(const Matrix& map, double q) {
  check_map(map);
  if (!(q > 0.0) || q > 1.0) {
    throw ValidationError("threshold: quantile must be in (0, 1]");
  }
  std::vector<double> magnitudes(map.data(), map.data() + map.size());
  for (double& m : magnitudes) m = std::abs(m);
  std::sort(magnitudes.begin(), magnitudes.end());
  const std::size_t n = magnitudes.size();
  std::size_t idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
  idx = std::min(n, std::max<std::size_t>(1, idx)) - 1;
  return collect_above(map, magnitudes[idx]);
}

std::vector<LagPair> infer_lags(const std::vector<CouplingEvent>& events) {
  if (events.empty()) throw ValidationError("infer_lags: no events");
  // Latency per voxel = axis position of its largest-|value| event. Events
  // arrive sorted, so the first mention of a voxel wins (ties already break
  // by flat index).
  std::map<Index, Index> latency;
  for (const CouplingEvent& e : events) {
    if (e.axis_position == kNoAxisPosition) continue;
    latency.emplace(e.voxel, e.axis_position);
  }
  std::vector<LagPair> lags;
  for (auto a = latency.begin(); a != latency.end(); ++a) {
    for (auto b = std::next(a); b != latency.end(); ++b) {
      lags.push_back({a->first, b->first, std::abs(a->second - b->second)});
    }
  }
  return lags;  // map iteration already orders by (voxel_a, voxel_b)
}

RecoveryMetrics evaluate_recovery(const std::vector<CouplingEvent>& reported,
                                  const std::vector<TruthEvent>& truth) {
  if (reported.empty() || truth.empty()) {
    throw ValidationError("evaluate_recovery: reported and truth must both be non-empty");
  }

  const bool with_latency =
      std::all_of(reported.begin(), reported.end(),
                  [](const CouplingEvent& e) { return e.axis_position != kNoAxisPosition; });

  RecoveryMetrics metrics;
  metrics.n_truth = static_cast<Index>(truth.size());
  metrics.n_reported = static_cast<Index>(reported.size());

  auto matches = [&](const TruthEvent& t, const CouplingEvent& e) {
    if (e.voxel != t.voxel) return false;
    return !with_latency || std::abs(e.axis_position - t.time) <= 1;
  };

  double lag_error_sum = 0.0;
  for (const TruthEvent& t : truth) {
    Index best_gap = -1;
    for (const CouplingEvent& e : reported) {
      if (!matches(t, e)) continue;
      const Index gap = with_latency ? std::abs(e.axis_position - t.time) : 0;
      if (best_gap < 0 || gap < best_gap) best_gap = gap;
    }
    if (best_gap >= 0) {
      ++metrics.matched;
      lag_error_sum += static_cast<double>(best_gap);
    }
  }
  Index false_alarms = 0;
  for (const CouplingEvent& e : reported) {
    const bool hit = std::any_of(truth.begin(), truth.end(),
                                 [&](const TruthEvent& t) { return matches(t, e); });
    if (!hit) ++false_alarms;
  }

  metrics.hit_rate = static_cast<double>(metrics.matched) / static_cast<double>(truth.size());
  metrics.false_alarm_rate =
      static_cast<double>(false_alarms) / static_cast<double>(reported.size());
  metrics.has_lag_error = with_latency && metrics.matched > 0;
  metrics.mean_abs_lag_error =
      metrics.has_lag_error ? lag_error_sum / static_cast<double>(metrics.matched) : 0.0;
  return metrics;
}

}  // namespace fconn
