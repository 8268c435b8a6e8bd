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
// fconn: batch discovery of coupled brain regions across space, time and
// frequency. Subcommands:
//   synth    generate a planted-coupling dataset (subject files + manifest +
//            ground truth)
//   fsvd     leading eigenvector of the vectorized (voxel, time) correlation
//   ssvd     spatial baseline: leading eigenvector of the voxel correlation
//   fica     independent components of the vectorized layout
//   spectra  periodogram front end producing a frequency-axis dataset
//   eval     score a report against planted ground truth
// Exit codes: 0 success, 2 validation error, 3 numerical failure.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fconn/coupling.hpp"
#include "fconn/data_model.hpp"
#include "fconn/errors.hpp"
#include "fconn/io.hpp"
#include "fconn/pipelines.hpp"
#include "fconn/report_json.hpp"
#include "fconn/stats.hpp"
#include "fconn/synth.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

fconn::SynthConfig synth_config_from_file(const fs::path& path) {
  const nlohmann::json doc = fconn::read_json_file(path);
  fconn::SynthConfig cfg;
  try {
    cfg.n_voxels = doc.value("n_voxels", cfg.n_voxels);
    cfg.n_times = doc.value("n_times", cfg.n_times);
    cfg.n_subjects = doc.value("n_subjects", cfg.n_subjects);
    cfg.amplitude_std = doc.value("amplitude_std", cfg.amplitude_std);
    cfg.noise_std = doc.value("noise_std", cfg.noise_std);
    cfg.seed = doc.value("seed", cfg.seed);
    if (doc.contains("regions")) {
      cfg.regions.clear();
      for (const auto& r : doc.at("regions")) {
        fconn::PlantedRegion region;
        region.voxels = r.at("voxels").get<std::vector<fconn::Index>>();
        region.latency = r.at("latency").get<fconn::Index>();
        region.half_width = r.value("half_width", fconn::Index{2});
        cfg.regions.push_back(std::move(region));
      }
    } else {
      cfg.regions = fconn::SynthConfig::default_config().regions;
    }
    if (doc.contains("coupling_groups")) {
      cfg.coupling_groups = doc.at("coupling_groups").get<std::vector<std::vector<int>>>();
    } else if (!doc.contains("regions")) {
      cfg.coupling_groups = fconn::SynthConfig::default_config().coupling_groups;
    }
  } catch (const nlohmann::json::exception& e) {
    throw fconn::ValidationError("config '" + path.string() + "': " + e.what());
  }
  return cfg;
}

void cmd_synth(const std::string& config_path, const std::string& out_dir,
               const std::string& format_name) {
  const fconn::SynthConfig cfg = synth_config_from_file(config_path);
  const fconn::SynthDataset dataset = fconn::generate_planted(cfg);
  const fconn::MatrixFormat format = fconn::parse_format(format_name);
  fconn::write_dataset(out_dir, dataset.records, format);
  fconn::write_json_file(fs::path(out_dir) / "truth.json", fconn::to_json(dataset.truth));
  std::cerr << "wrote " << dataset.records.size() << " subjects to " << out_dir << "\n";
}

void cmd_spectra(const std::string& manifest_path, fconn::Index n_freqs,
                 const std::string& out_dir, const std::string& format_name) {
  const std::vector<fconn::SubjectRecord> records = fconn::load_dataset(manifest_path);
  const std::vector<fconn::SubjectRecord> spectra = fconn::run_spectra(records, n_freqs);
  fconn::write_dataset(out_dir, spectra, fconn::parse_format(format_name));
  std::cerr << "wrote " << spectra.size() << " spectra to " << out_dir << "\n";
}

void cmd_eval(const std::string& report_path, const std::string& truth_path,
              const std::string& out_path) {
  const std::vector<fconn::CouplingReport> reports = fconn::reports_from_file(report_path);
  const std::vector<fconn::TruthEvent> truth =
      fconn::truth_events_from_json(fconn::read_json_file(truth_path));

  nlohmann::json doc;
  if (reports.size() == 1) {
    doc = fconn::to_json(fconn::evaluate_recovery(reports.front().events, truth));
  } else {
    doc["components"] = nlohmann::json::array();
    double best_hit_rate = -1.0;
    int best_index = 0;
    for (const fconn::CouplingReport& report : reports) {
      const fconn::RecoveryMetrics metrics = fconn::evaluate_recovery(report.events, truth);
      nlohmann::json entry = fconn::to_json(metrics);
      entry["component_index"] = report.component_index;
      doc["components"].push_back(std::move(entry));
      if (metrics.hit_rate > best_hit_rate) {
        best_hit_rate = metrics.hit_rate;
        best_index = report.component_index;
      }
    }
    doc["best_component_index"] = best_index;
  }
  fconn::write_json_file(out_path, doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coupled brain-region discovery across space, time and frequency"};
  app.require_subcommand(1);

  int threads = 1;
  app.add_option("--threads", threads, "threads for matrix kernels (default 1, reproducible)");

  std::string config_path, manifest_path, out_path, out_dir;
  std::string report_path, truth_path;
  std::string format_name = "fcn1";
  fconn::ThresholdOptions thr;
  fconn::FicaOptions ica_opts;
  fconn::Index k = 2;
  fconn::Index n_freqs = 0;
  std::uint64_t seed = 0;

  CLI::App* synth = app.add_subcommand("synth", "generate a planted-coupling dataset");
  synth->add_option("--config", config_path, "JSON synth config")->required();
  synth->add_option("--out-dir", out_dir, "output directory")->required();
  synth->add_option("--format", format_name, "subject file format: fcn1|csv")
      ->check(CLI::IsMember({"fcn1", "csv"}));

  auto add_threshold_flags = [&thr](CLI::App* cmd) {
    cmd->add_option("--threshold", thr.threshold, "threshold in (0, 1] (default 0.5)");
    cmd->add_option("--threshold-mode", thr.mode, "fraction|quantile")
        ->check(CLI::IsMember({"fraction", "quantile"}));
  };

  CLI::App* fsvd_cmd = app.add_subcommand("fsvd", "functional SVD pipeline");
  fsvd_cmd->add_option("--manifest", manifest_path, "dataset manifest")->required();
  add_threshold_flags(fsvd_cmd);
  fsvd_cmd->add_option("--out", out_path, "report path")->required();

  CLI::App* ssvd_cmd = app.add_subcommand("ssvd", "spatial SVD baseline");
  ssvd_cmd->add_option("--manifest", manifest_path, "dataset manifest")->required();
  add_threshold_flags(ssvd_cmd);
  ssvd_cmd->add_option("--out", out_path, "report path")->required();

  CLI::App* fica_cmd = app.add_subcommand("fica", "functional ICA pipeline");
  fica_cmd->add_option("--manifest", manifest_path, "dataset manifest")->required();
  fica_cmd->add_option("-k,--components", k, "number of components")->required();
  fica_cmd->add_option("--seed", seed, "restart seed");
  add_threshold_flags(fica_cmd);
  fica_cmd->add_option("--max-iter", ica_opts.max_iter, "fixed-point iteration cap");
  fica_cmd->add_option("--tol", ica_opts.tol, "fixed-point convergence tolerance");
  fica_cmd->add_flag_callback(
      "--raw-covariance", [&ica_opts] { ica_opts.standardize = false; },
      "skip the correlation standardization of rows");
  fica_cmd->add_option("--out", out_path, "report path")->required();

  CLI::App* spectra_cmd = app.add_subcommand("spectra", "periodogram front end");
  spectra_cmd->add_option("--manifest", manifest_path, "time-axis dataset manifest")->required();
  spectra_cmd->add_option("--n-freqs", n_freqs, "one-sided frequency bins")->required();
  spectra_cmd->add_option("--out-dir", out_dir, "output directory")->required();
  spectra_cmd->add_option("--format", format_name, "subject file format: fcn1|csv")
      ->check(CLI::IsMember({"fcn1", "csv"}));

  CLI::App* eval_cmd = app.add_subcommand("eval", "score a report against ground truth");
  eval_cmd->add_option("--report", report_path, "report JSON")->required();
  eval_cmd->add_option("--truth", truth_path, "ground truth JSON")->required();
  eval_cmd->add_option("--out", out_path, "metrics path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  Eigen::setNbThreads(threads);

  try {
    if (synth->parsed()) {
      cmd_synth(config_path, out_dir, format_name);
    } else if (fsvd_cmd->parsed()) {
      const fconn::CouplingReport report = fconn::run_fsvd(fconn::load_dataset(manifest_path), thr);
      fconn::write_json_file(out_path, fconn::to_json(report));
    } else if (ssvd_cmd->parsed()) {
      const fconn::CouplingReport report = fconn::run_ssvd(fconn::load_dataset(manifest_path), thr);
      fconn::write_json_file(out_path, fconn::to_json(report));
    } else if (fica_cmd->parsed()) {
      const fconn::FicaRunResult run =
          fconn::run_fica(fconn::load_dataset(manifest_path), k, seed, thr, ica_opts);
      for (const std::string& warning : run.warnings) std::cerr << "warning: " << warning << "\n";
      nlohmann::json doc;
      doc["method"] = "fica";
      doc["k"] = run.k;
      doc["seed"] = run.seed;
      doc["converged"] = run.converged;
      doc["components"] = nlohmann::json::array();
      for (const fconn::CouplingReport& c : run.components) {
        doc["components"].push_back(fconn::to_json(c));
      }
      fconn::write_json_file(out_path, doc);
    } else if (spectra_cmd->parsed()) {
      cmd_spectra(manifest_path, n_freqs, out_dir, format_name);
    } else if (eval_cmd->parsed()) {
      cmd_eval(report_path, truth_path, out_path);
    }
  } catch (const fconn::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const fconn::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
