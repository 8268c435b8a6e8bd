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
// Report and metrics files are JSON with sorted keys and floating values
// printed at 17 significant digits, so identical inputs produce byte
// identical files and every double round-trips exactly.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "fconn/coupling.hpp"
#include "fconn/synth.hpp"

namespace fconn {

/// Serializes with sorted keys, two-space indentation, and "%.17g" floats.
std::string dump_deterministic(const nlohmann::json& doc);

void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);
nlohmann::json read_json_file(const std::filesystem::path& path);

nlohmann::json to_json(const CouplingEvent& event);
nlohmann::json to_json(const CouplingReport& report);
nlohmann::json to_json(const RecoveryMetrics& metrics);
nlohmann::json to_json(const GroundTruth& truth);

CouplingReport coupling_report_from_json(const nlohmann::json& doc);
std::vector<TruthEvent> truth_events_from_json(const nlohmann::json& doc);

/// A report file holds either one CouplingReport or (for fica) a components
/// array of them; this returns them uniformly.
std::vector<CouplingReport> reports_from_file(const std::filesystem::path& path);

}  // namespace fconn
