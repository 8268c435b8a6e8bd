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

#include "fconn/pipelines.hpp"

#include "fconn/errors.hpp"
#include "fconn/stats.hpp"

namespace fconn {

std::vector<CouplingEvent> apply_threshold(const Matrix& map, const ThresholdOptions& opts) {
  if (opts.mode == "fraction") return threshold_component(map, opts.threshold);
  if (opts.mode == "quantile") return threshold_component_quantile(map, opts.threshold);
  throw ValidationError("unknown threshold mode '" + opts.mode + "'");
}

CouplingReport run_fsvd(const std::vector<SubjectRecord>& records, const ThresholdOptions& opts) {
  FunctionalMatrix z = functional_concat(records);
  z.values = row_center(z.values);
  const Component component = fsvd(z);
  const Matrix map = component_to_map(component, z.n_voxels, z.n_times);

  CouplingReport report;
  report.method = Method::Fsvd;
  report.threshold = opts.threshold;
  report.threshold_mode = opts.mode;
  report.strength = component.strength;
  report.n_voxels = z.n_voxels;
  report.n_times = z.n_times;
  report.events = apply_threshold(map, opts);
  report.lags = infer_lags(report.events);
  return report;
}

CouplingReport run_ssvd(const std::vector<SubjectRecord>& records, const ThresholdOptions& opts) {
  GroupMatrix y = temporal_concat(records);
  y.values = row_center(y.values);
  const Component component = spatial_svd(y);

  CouplingReport report;
  report.method = Method::Ssvd;
  report.threshold = opts.threshold;
  report.threshold_mode = opts.mode;
  report.strength = component.strength;
  report.n_voxels = y.n_voxels();
  report.n_times = 0;
  report.events = apply_threshold(component.loading, opts);
  for (CouplingEvent& e : report.events) e.axis_position = kNoAxisPosition;
  return report;  // spatial loadings carry no latencies, so no lags
}

FicaRunResult run_fica(const std::vector<SubjectRecord>& records, Index k, std::uint64_t seed,
                       const ThresholdOptions& opts, const FicaOptions& ica_opts) {
  FunctionalMatrix z = functional_concat(records);
  z.values = row_center(z.values);
  const IcaResult ica = fica(z, k, seed, ica_opts);
  if (!ica.converged) {
    throw NumericalError("fica: fixed-point iteration did not converge; raise max_iter or tol");
  }

  FicaRunResult result;
  result.k = ica.k;
  result.seed = ica.seed;
  result.converged = ica.converged;
  result.warnings = ica.warnings;
  for (const Component& component : ica_components(ica)) {
    const Matrix map = component_to_map(component, z.n_voxels, z.n_times);
    CouplingReport report;
    report.method = Method::Fica;
    report.threshold = opts.threshold;
    report.threshold_mode = opts.mode;
    report.strength = component.strength;
    report.component_index = component.index;
    report.n_voxels = z.n_voxels;
    report.n_times = z.n_times;
    report.events = apply_threshold(map, opts);
    report.lags = infer_lags(report.events);
    result.components.push_back(std::move(report));
  }
  return result;
}

std::vector<SubjectRecord> run_spectra(const std::vector<SubjectRecord>& records, Index n_freqs) {
  std::vector<SubjectRecord> out;
  out.reserve(records.size());
  for (const SubjectRecord& record : records) out.push_back(periodogram(record, n_freqs));
  return out;
}

}  // namespace fconn
