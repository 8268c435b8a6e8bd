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
// File formats:
//   fcn1  - magic "FCN1", u32-le rows, u32-le cols, rows*cols f64-le values
//           in column-major order.
//   csv   - one line per voxel, comma-separated decimal values, no header.
//   manifest - JSON {subjects: [{id, path, format}], voxel_ids,
//           axis: {kind, positions, name}}; paths resolve against the
//           manifest's directory.
// Both matrix formats round-trip doubles bit-exactly.

#pragma once

#include <filesystem>
#include <vector>

#include "fconn/data_model.hpp"

namespace fconn {

void write_matrix(const std::filesystem::path& path, const Matrix& values, MatrixFormat format);
Matrix read_matrix(const std::filesystem::path& path, MatrixFormat format);

void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);
DatasetManifest read_manifest(const std::filesystem::path& path);

/// Reads every subject referenced by the manifest, in manifest order, and
/// validates each record against the shared voxel ids and axis.
std::vector<SubjectRecord> load_dataset(const std::filesystem::path& manifest_path);
std::vector<SubjectRecord> load_dataset(const DatasetManifest& manifest,
                                        const std::filesystem::path& base_dir);

/// Writes one file per record plus a manifest ("manifest.json") into out_dir.
/// Returns the manifest path.
std::filesystem::path write_dataset(const std::filesystem::path& out_dir,
                                    const std::vector<SubjectRecord>& records,
                                    MatrixFormat format);

}  // namespace fconn
