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

#include "fconn/data_model.hpp"

#include <cmath>

#include "fconn/errors.hpp"

namespace fconn {

std::string axis_kind_name(AxisKind kind) {
  return kind == AxisKind::Time ? "time" : "frequency";
}

AxisKind parse_axis_kind(const std::string& name) {
  if (name == "time") return AxisKind::Time;
  if (name == "frequency") return AxisKind::Frequency;
  throw ValidationError("unknown axis kind '" + name + "' (expected 'time' or 'frequency')");
}

std::string format_name(MatrixFormat format) {
  return format == MatrixFormat::Fcn1 ? "fcn1" : "csv";
}

MatrixFormat parse_format(const std::string& name) {
  if (name == "fcn1") return MatrixFormat::Fcn1;
  if (name == "csv") return MatrixFormat::Csv;
  throw ValidationError("unknown matrix format '" + name + "' (expected 'fcn1' or 'csv')");
}

void validate(const AxisSpec& axis) {
  if (axis.positions.empty()) {
    throw ValidationError("axis '" + axis.name + "' has no positions");
  }
  for (std::size_t i = 0; i < axis.positions.size(); ++i) {
    if (!std::isfinite(axis.positions[i])) {
      throw ValidationError("axis '" + axis.name + "' has a non-finite position");
    }
    if (i > 0 && !(axis.positions[i - 1] < axis.positions[i])) {
      throw ValidationError("axis '" + axis.name + "' positions are not strictly increasing");
    }
  }
}

void validate(const SubjectRecord& record) {
  validate(record.axis);
  if (record.values.rows() != static_cast<Index>(record.voxel_ids.size())) {
    throw ValidationError("subject '" + record.subject_id + "': row count " +
                          std::to_string(record.values.rows()) + " does not match " +
                          std::to_string(record.voxel_ids.size()) + " voxel ids");
  }
  if (record.values.cols() != record.axis.size()) {
    throw ValidationError("subject '" + record.subject_id + "': column count " +
                          std::to_string(record.values.cols()) + " does not match axis length " +
                          std::to_string(record.axis.size()));
  }
  if (!record.values.allFinite()) {
    throw ValidationError("subject '" + record.subject_id + "' contains non-finite values");
  }
}

void validate(const DatasetManifest& manifest) {
  validate(manifest.axis);
  if (manifest.subjects.size() < 2) {
    throw ValidationError("manifest lists " + std::to_string(manifest.subjects.size()) +
                          " subjects; at least 2 are required");
  }
  if (manifest.voxel_ids.empty()) {
    throw ValidationError("manifest has no voxel ids");
  }
}

Index flat_index(Index v, Index t, Index n_voxels) {
  if (n_voxels < 1) throw ValidationError("flat_index: n_voxels must be positive");
  if (v < 0 || v >= n_voxels) {
    throw ValidationError("flat_index: voxel index " + std::to_string(v) + " out of range [0, " +
                          std::to_string(n_voxels) + ")");
  }
  if (t < 0) throw ValidationError("flat_index: axis index must be non-negative");
  return t * n_voxels + v;
}

std::pair<Index, Index> unflatten(Index j, Index n_voxels) {
  if (n_voxels < 1) throw ValidationError("unflatten: n_voxels must be positive");
  if (j < 0) throw ValidationError("unflatten: flat index must be non-negative");
  return {j % n_voxels, j / n_voxels};
}

Vector vectorize(const SubjectRecord& record) {
  validate(record);
  // Matrix storage is column-major, so column stacking is the raw layout.
  return Eigen::Map<const Vector>(record.values.data(), record.values.size());
}

namespace {

// Shared checks for both concatenations. with_axis_positions additionally
// requires matching axis labels, not just matching length.
void check_compatible(const std::vector<SubjectRecord>& records, bool with_axis_positions) {
  if (records.empty()) throw ValidationError("no subject records to concatenate");
  const SubjectRecord& first = records.front();
  for (const SubjectRecord& r : records) {
    validate(r);
    if (r.voxel_ids != first.voxel_ids) {
      throw ValidationError("subject '" + r.subject_id + "' voxel ids differ from subject '" +
                            first.subject_id + "'");
    }
    if (r.axis.size() != first.axis.size()) {
      throw ValidationError("subject '" + r.subject_id + "' axis length " +
                            std::to_string(r.axis.size()) + " differs from subject '" +
                            first.subject_id + "' (" + std::to_string(first.axis.size()) + ")");
    }
    if (with_axis_positions && r.axis.positions != first.axis.positions) {
      throw ValidationError("subject '" + r.subject_id + "' axis positions differ from subject '" +
                            first.subject_id + "'");
    }
  }
}

}  // namespace

GroupMatrix temporal_concat(const std::vector<SubjectRecord>& records) {
  check_compatible(records, /*with_axis_positions=*/false);
  const Index n_voxels = records.front().n_voxels();
  const Index n_axis = records.front().n_axis();
  const Index n_subjects = static_cast<Index>(records.size());

  GroupMatrix group;
  group.values.resize(n_voxels, n_subjects * n_axis);
  group.boundaries.reserve(records.size());
  group.subject_ids.reserve(records.size());
  for (Index i = 0; i < n_subjects; ++i) {
    group.boundaries.push_back(i * n_axis);
    group.subject_ids.push_back(records[static_cast<std::size_t>(i)].subject_id);
    group.values.middleCols(i * n_axis, n_axis) = records[static_cast<std::size_t>(i)].values;
  }
  group.voxel_ids = records.front().voxel_ids;
  group.axis = records.front().axis;
  return group;
}

FunctionalMatrix functional_concat(const std::vector<SubjectRecord>& records) {
  check_compatible(records, /*with_axis_positions=*/true);
  const Index n_voxels = records.front().n_voxels();
  const Index n_axis = records.front().n_axis();

  FunctionalMatrix fm;
  fm.n_voxels = n_voxels;
  fm.n_times = n_axis;
  fm.values.resize(n_voxels * n_axis, static_cast<Index>(records.size()));
  fm.subject_ids.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    fm.values.col(static_cast<Index>(i)) =
        Eigen::Map<const Vector>(records[i].values.data(), records[i].values.size());
    fm.subject_ids.push_back(records[i].subject_id);
  }
  return fm;
}

}  // namespace fconn
