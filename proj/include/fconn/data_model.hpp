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
// Subject records and the two group layouts used by the analysis pipelines:
// side-by-side temporal concatenation (one row per voxel) and the vectorized
// functional layout (one column per subject, rows indexed over (voxel, time)
// with the voxel index running fastest).

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fconn/types.hpp"

namespace fconn {

enum class AxisKind { Time, Frequency };

std::string axis_kind_name(AxisKind kind);
AxisKind parse_axis_kind(const std::string& name);

/// Labels for the second dimension of a subject matrix: sample times in
/// seconds or frequency bins in Hz. Positions must be strictly increasing.
struct AxisSpec {
  AxisKind kind = AxisKind::Time;
  std::vector<double> positions;
  std::string name;

  Index size() const { return static_cast<Index>(positions.size()); }
};

void validate(const AxisSpec& axis);

/// One subject (or epoch): an n_voxels x axis.size() matrix of activity
/// values, all finite.
struct SubjectRecord {
  std::string subject_id;
  Matrix values;  // n_voxels x n_axis
  std::vector<std::string> voxel_ids;
  AxisSpec axis;

  Index n_voxels() const { return values.rows(); }
  Index n_axis() const { return values.cols(); }
};

void validate(const SubjectRecord& record);

/// Subjects placed side by side along the axis dimension:
/// values is n_voxels x (n_subjects * n_axis), boundaries holds the starting
/// column of each subject block.
struct GroupMatrix {
  Matrix values;
  std::vector<Index> boundaries;
  std::vector<std::string> voxel_ids;
  std::vector<std::string> subject_ids;
  AxisSpec axis;

  Index n_subjects() const { return static_cast<Index>(boundaries.size()); }
  Index n_voxels() const { return values.rows(); }
};

/// Vectorized layout: column i is the column-stacked matrix of subject i, so
/// values is (n_times * n_voxels) x n_subjects. Row j addresses the sample
/// (voxel, time) = unflatten(j, n_voxels).
struct FunctionalMatrix {
  Matrix values;
  Index n_voxels = 0;
  Index n_times = 0;  // axis length; also used for frequency axes
  std::vector<std::string> subject_ids;

  Index n_subjects() const { return values.cols(); }
};

enum class MatrixFormat { Fcn1, Csv };

std::string format_name(MatrixFormat format);
MatrixFormat parse_format(const std::string& name);

struct SubjectFileRef {
  std::string id;
  std::string path;  // relative paths resolve against the manifest directory
  MatrixFormat format = MatrixFormat::Fcn1;
};

/// On-disk dataset description: per-subject files plus the voxel ids and axis
/// shared by every subject. Needs at least two subjects.
struct DatasetManifest {
  std::vector<SubjectFileRef> subjects;
  std::vector<std::string> voxel_ids;
  AxisSpec axis;

  Index n_subjects() const { return static_cast<Index>(subjects.size()); }
};

void validate(const DatasetManifest& manifest);

/// Flat row index of sample (v, t) in the vectorized layout: t * n_voxels + v.
Index flat_index(Index v, Index t, Index n_voxels);

/// Inverse of flat_index: j -> (v, t).
std::pair<Index, Index> unflatten(Index j, Index n_voxels);

/// Column-stacks a record's matrix into a vector of length n_axis * n_voxels.
Vector vectorize(const SubjectRecord& record);

GroupMatrix temporal_concat(const std::vector<SubjectRecord>& records);

FunctionalMatrix functional_concat(const std::vector<SubjectRecord>& records);

}  // namespace fconn
