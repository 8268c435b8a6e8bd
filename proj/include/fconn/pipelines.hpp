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
// End-to-end runs from loaded records to coupling reports. The CLI is a thin
// wrapper over these.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fconn/coupling.hpp"
#include "fconn/data_model.hpp"
#include "fconn/decomposition.hpp"

namespace fconn {

struct ThresholdOptions {
  double threshold = 0.5;
  std::string mode = "fraction";  // "fraction" of max |entry| or "quantile"
};

std::vector<CouplingEvent> apply_threshold(const Matrix& map, const ThresholdOptions& opts);

/// Vectorize + center + leading functional eigenvector + threshold + lags.
CouplingReport run_fsvd(const std::vector<SubjectRecord>& records, const ThresholdOptions& opts);

/// Temporal concatenation baseline; events carry voxels only, no lags.
CouplingReport run_ssvd(const std::vector<SubjectRecord>& records, const ThresholdOptions& opts);

struct FicaRunResult {
  Index k = 0;
  std::uint64_t seed = 0;
  bool converged = false;
  std::vector<std::string> warnings;
  std::vector<CouplingReport> components;  // one threshold/lag set per component
};

FicaRunResult run_fica(const std::vector<SubjectRecord>& records, Index k, std::uint64_t seed,
                       const ThresholdOptions& opts, const FicaOptions& ica_opts = {});

/// Per-record periodogram front end; output records carry a frequency axis.
std::vector<SubjectRecord> run_spectra(const std::vector<SubjectRecord>& records, Index n_freqs);

}  // namespace fconn
