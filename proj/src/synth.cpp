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

#include "fconn/synth.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "fconn/errors.hpp"
#include "fconn/rng.hpp"

namespace fconn {

SynthConfig SynthConfig::default_config() {
  SynthConfig cfg;
  cfg.regions = {{{10, 11, 12}, 5, 2}, {{30, 31, 32}, 12, 2}};
  cfg.coupling_groups = {{0, 1}};
  return cfg;
}

void validate(const SynthConfig& cfg) {
  if (cfg.n_voxels < 1 || cfg.n_times < 1) {
    throw ValidationError("synth: n_voxels and n_times must be positive");
  }
  if (cfg.n_subjects < 2) throw ValidationError("synth: at least 2 subjects required");
  if (cfg.amplitude_std < 0.0 || cfg.noise_std < 0.0) {
    throw ValidationError("synth: standard deviations must be non-negative");
  }
  for (std::size_t r = 0; r < cfg.regions.size(); ++r) {
    const PlantedRegion& region = cfg.regions[r];
    if (region.voxels.empty()) {
      throw ValidationError("synth: region " + std::to_string(r) + " has no voxels");
    }
    for (Index v : region.voxels) {
      if (v < 0 || v >= cfg.n_voxels) {
        throw ValidationError("synth: region " + std::to_string(r) + " voxel " +
                              std::to_string(v) + " outside [0, " +
                              std::to_string(cfg.n_voxels) + ")");
      }
    }
    if (region.latency < 0 || region.latency >= cfg.n_times) {
      throw ValidationError("synth: region " + std::to_string(r) + " latency " +
                            std::to_string(region.latency) + " outside [0, " +
                            std::to_string(cfg.n_times) + ")");
    }
    if (region.half_width < 0) {
      throw ValidationError("synth: region " + std::to_string(r) + " has negative half width");
    }
  }
  if (!cfg.coupling_groups.empty()) {
    std::set<int> seen;
    for (const auto& group : cfg.coupling_groups) {
      for (int r : group) {
        if (r < 0 || r >= static_cast<int>(cfg.regions.size())) {
          throw ValidationError("synth: coupling group references region " + std::to_string(r));
        }
        if (!seen.insert(r).second) {
          throw ValidationError("synth: region " + std::to_string(r) +
                                " appears in more than one coupling group");
        }
      }
    }
    if (seen.size() != cfg.regions.size()) {
      throw ValidationError("synth: coupling groups must cover every region exactly once");
    }
  }
}

double bump_weight(Index offset, Index half_width) {
  const double support = static_cast<double>(half_width) + 1.0;
  return std::max(0.0, 1.0 - std::abs(static_cast<double>(offset)) / support);
}

SynthDataset generate_planted(const SynthConfig& cfg) {
  validate(cfg);

  std::vector<std::vector<int>> groups = cfg.coupling_groups;
  if (groups.empty()) {
    for (int r = 0; r < static_cast<int>(cfg.regions.size()); ++r) groups.push_back({r});
  }

  Rng rng(cfg.seed);
  AxisSpec axis;
  axis.kind = AxisKind::Time;
  axis.name = "time";
  axis.positions.resize(static_cast<std::size_t>(cfg.n_times));
  for (Index t = 0; t < cfg.n_times; ++t) {
    axis.positions[static_cast<std::size_t>(t)] = static_cast<double>(t);
  }
  std::vector<std::string> voxel_ids;
  voxel_ids.reserve(static_cast<std::size_t>(cfg.n_voxels));
  for (Index v = 0; v < cfg.n_voxels; ++v) voxel_ids.push_back("v" + std::to_string(v));

  SynthDataset dataset;
  dataset.records.reserve(static_cast<std::size_t>(cfg.n_subjects));
  for (Index s = 0; s < cfg.n_subjects; ++s) {
    SubjectRecord record;
    char id[32];
    std::snprintf(id, sizeof(id), "s%03lld", static_cast<long long>(s));
    record.subject_id = id;
    record.voxel_ids = voxel_ids;
    record.axis = axis;
    record.values = Matrix::Zero(cfg.n_voxels, cfg.n_times);

    for (const auto& group : groups) {
      const double amplitude = rng.normal(0.0, cfg.amplitude_std);
      for (int r : group) {
        const PlantedRegion& region = cfg.regions[static_cast<std::size_t>(r)];
        for (Index t = std::max<Index>(0, region.latency - region.half_width);
             t <= std::min<Index>(cfg.n_times - 1, region.latency + region.half_width); ++t) {
          const double w = bump_weight(t - region.latency, region.half_width);
          for (Index v : region.voxels) record.values(v, t) += amplitude * w;
        }
      }
    }
    if (cfg.noise_std > 0.0) {
      for (Index t = 0; t < cfg.n_times; ++t) {
        for (Index v = 0; v < cfg.n_voxels; ++v) {
          record.values(v, t) += rng.normal(0.0, cfg.noise_std);
        }
      }
    }
    dataset.records.push_back(std::move(record));
  }

  for (const PlantedRegion& region : cfg.regions) {
    for (Index v : region.voxels) dataset.truth.events.push_back({v, region.latency});
  }
  dataset.truth.regions = cfg.regions;
  return dataset;
}

}  // namespace fconn
