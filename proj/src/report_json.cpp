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

#include "fconn/report_json.hpp"

#include <cstdio>
#include <fstream>

#include "fconn/errors.hpp"

namespace fconn {

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void dump_value(std::string& out, const nlohmann::json& value, int depth) {
  const std::string indent(static_cast<std::size_t>(2 * depth), ' ');
  const std::string inner(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  switch (value.type()) {
    case nlohmann::json::value_t::null:
      out += "null";
      break;
    case nlohmann::json::value_t::boolean:
      out += value.get<bool>() ? "true" : "false";
      break;
    case nlohmann::json::value_t::number_integer:
      out += std::to_string(value.get<long long>());
      break;
    case nlohmann::json::value_t::number_unsigned:
      out += std::to_string(value.get<unsigned long long>());
      break;
    case nlohmann::json::value_t::number_float: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", value.get<double>());
      out += buf;
      break;
    }
    case nlohmann::json::value_t::string:
      append_escaped(out, value.get<std::string>());
      break;
    case nlohmann::json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      bool first = true;
      for (const auto& item : value) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        dump_value(out, item, depth + 1);
      }
      out += '\n' + indent + ']';
      break;
    }
    case nlohmann::json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      bool first = true;
      for (auto it = value.begin(); it != value.end(); ++it) {  // keys already sorted
        if (!first) out += ",\n";
        first = false;
        out += inner;
        append_escaped(out, it.key());
        out += ": ";
        dump_value(out, it.value(), depth + 1);
      }
      out += '\n' + indent + '}';
      break;
    }
    default:
      throw NumericalError("cannot serialize binary JSON value");
  }
}

}  // namespace

std::string dump_deterministic(const nlohmann::json& doc) {
  std::string out;
  dump_value(out, doc, 0);
  out += '\n';
  return out;
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open '" + path.string() + "' for writing");
  out << dump_deterministic(doc);
  if (!out) throw ValidationError("short write to '" + path.string() + "'");
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("failed to parse '" + path.string() + "': " + e.what());
  }
}

nlohmann::json to_json(const CouplingEvent& event) {
  nlohmann::json doc;
  doc["voxel"] = event.voxel;
  if (event.axis_position != kNoAxisPosition) doc["time"] = event.axis_position;
  doc["value"] = event.value;
  return doc;
}

nlohmann::json to_json(const CouplingReport& report) {
  nlohmann::json doc;
  doc["method"] = method_name(report.method);
  doc["threshold"] = report.threshold;
  doc["threshold_mode"] = report.threshold_mode;
  doc["strength"] = report.strength;
  doc["component_index"] = report.component_index;
  doc["n_voxels"] = report.n_voxels;
  if (report.n_times > 0) doc["n_times"] = report.n_times;
  doc["events"] = nlohmann::json::array();
  for (const CouplingEvent& e : report.events) doc["events"].push_back(to_json(e));
  doc["lags"] = nlohmann::json::array();
  for (const LagPair& l : report.lags) {
    doc["lags"].push_back({{"voxel_a", l.voxel_a}, {"voxel_b", l.voxel_b}, {"lag", l.lag}});
  }
  return doc;
}

nlohmann::json to_json(const RecoveryMetrics& metrics) {
  nlohmann::json doc;
  doc["hit_rate"] = metrics.hit_rate;
  doc["false_alarm_rate"] = metrics.false_alarm_rate;
  doc["mean_abs_lag_error"] =
      metrics.has_lag_error ? nlohmann::json(metrics.mean_abs_lag_error) : nlohmann::json();
  doc["matched"] = metrics.matched;
  doc["n_truth"] = metrics.n_truth;
  doc["n_reported"] = metrics.n_reported;
  return doc;
}

nlohmann::json to_json(const GroundTruth& truth) {
  nlohmann::json doc;
  doc["events"] = nlohmann::json::array();
  for (const TruthEvent& e : truth.events) {
    doc["events"].push_back({{"voxel", e.voxel}, {"time", e.time}});
  }
  doc["regions"] = nlohmann::json::array();
  for (const PlantedRegion& r : truth.regions) {
    doc["regions"].push_back(
        {{"voxels", r.voxels}, {"latency", r.latency}, {"half_width", r.half_width}});
  }
  return doc;
}

CouplingReport coupling_report_from_json(const nlohmann::json& doc) {
  CouplingReport report;
  try {
    report.method = parse_method(doc.at("method").get<std::string>());
    report.threshold = doc.at("threshold").get<double>();
    report.threshold_mode = doc.value("threshold_mode", "fraction");
    report.strength = doc.value("strength", 0.0);
    report.component_index = doc.value("component_index", 0);
    report.n_voxels = doc.value("n_voxels", Index{0});
    report.n_times = doc.value("n_times", Index{0});
    for (const auto& e : doc.at("events")) {
      CouplingEvent event;
      event.voxel = e.at("voxel").get<Index>();
      event.axis_position = e.contains("time") ? e.at("time").get<Index>() : kNoAxisPosition;
      event.value = e.at("value").get<double>();
      report.events.push_back(event);
    }
    for (const auto& l : doc.value("lags", nlohmann::json::array())) {
      report.lags.push_back({l.at("voxel_a").get<Index>(), l.at("voxel_b").get<Index>(),
                             l.at("lag").get<Index>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed report: ") + e.what());
  }
  return report;
}

std::vector<TruthEvent> truth_events_from_json(const nlohmann::json& doc) {
  std::vector<TruthEvent> events;
  try {
    for (const auto& e : doc.at("events")) {
      events.push_back({e.at("voxel").get<Index>(), e.at("time").get<Index>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed ground truth: ") + e.what());
  }
  return events;
}

std::vector<CouplingReport> reports_from_file(const std::filesystem::path& path) {
  const nlohmann::json doc = read_json_file(path);
  std::vector<CouplingReport> reports;
  if (doc.contains("components")) {
    for (const auto& c : doc.at("components")) reports.push_back(coupling_report_from_json(c));
  } else {
    reports.push_back(coupling_report_from_json(doc));
  }
  if (reports.empty()) throw ValidationError("report '" + path.string() + "' has no components");
  return reports;
}

}  // namespace fconn
