//
// Copyright 2026 The dpboot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Command-line front end for the coverage experiments.
//
//   dpboot run --config mean_small --seed 7
//   dpboot ablate --config mean_small --sweep K
//   dpboot moments --mu 0 --var 4 --lo -6 --hi 4
//   dpboot report --trials results/mean_small_trials.csv --task mean

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "dpboot/harness/experiment.h"
#include "dpboot/harness/report_io.h"
#include "dpboot/harness/truncated_gaussian.h"

namespace {

using dpboot::harness::CoverageGroup;
using dpboot::harness::ExperimentConfig;
using dpboot::harness::Method;

constexpr int kExitConfig = 1;
constexpr int kExitUsage = 2;
constexpr char kDefaultOutputDir[] = "results";

int Fail(const absl::Status& status) {
  std::cerr << "dpboot: " << status.message() << "\n";
  return kExitConfig;
}

std::string OutputDir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("DPBOOT_OUTPUT_DIR"); env && *env) {
    return env;
  }
  return kDefaultOutputDir;
}

struct RunFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  std::optional<std::size_t> trials;
  std::string out;
};

absl::StatusOr<ExperimentConfig> ResolveConfig(const RunFlags& flags) {
  absl::StatusOr<ExperimentConfig> config =
      dpboot::harness::LoadConfig(flags.config);
  if (!config.ok()) return config.status();
  if (flags.seed) config->master_seed = *flags.seed;
  if (flags.threads) config->threads = *flags.threads;
  if (flags.trials) config->trials = *flags.trials;
  if (absl::Status s = config->Validate(); !s.ok()) return s;
  return config;
}

int Run(const RunFlags& flags) {
  absl::StatusOr<ExperimentConfig> config = ResolveConfig(flags);
  if (!config.ok()) return Fail(config.status());
  absl::StatusOr<dpboot::harness::ExperimentResult> result =
      dpboot::harness::RunExperiment(*config);
  if (!result.ok()) return Fail(result.status());

  const std::string dir = OutputDir(flags.out);
  const std::string stem = dir + "/" + config->name;
  const std::pair<std::string, std::string> files[] = {
      {stem + "_trials.csv", dpboot::harness::FormatTrialsCsv(result->records)},
      {stem + "_report.json",
       dpboot::harness::ReportToJson(result->report, *config)},
      {stem + "_plot.csv",
       dpboot::harness::FormatPlotCsv(result->report.groups)}};
  for (const auto& [path, contents] : files) {
    if (absl::Status s = dpboot::harness::WriteFile(path, contents); !s.ok()) {
      return Fail(s);
    }
  }
  std::cout << dpboot::harness::FormatSummary(result->report.groups);
  std::cout << "wrote " << stem << "_{trials.csv,report.json,plot.csv}\n";
  return 0;
}

struct AblateFlags {
  RunFlags run;
  std::string sweep = "K";
  std::vector<double> c_grid = {0.5, 1.0, 2.0};
  std::vector<double> r_grid = {10.0, 50.0, 250.0};
};

int Ablate(const AblateFlags& flags) {
  absl::StatusOr<ExperimentConfig> base = ResolveConfig(flags.run);
  if (!base.ok()) return Fail(base.status());
  base->methods.clear();
  base->methods = {Method::kBlbQuant, Method::kBlbVar};

  struct Variant {
    std::string label;
    ExperimentConfig config;
  };
  std::vector<Variant> variants;
  auto add = [&](std::string label, auto&& edit) {
    ExperimentConfig c = *base;
    edit(c);
    variants.push_back({std::move(label), std::move(c)});
  };
  if (flags.sweep == "K") {
    for (double k : {6.0, 10.0, 14.0}) {
      add(std::to_string(static_cast<int>(k)),
          [k](ExperimentConfig& c) { c.blb.K = k; });
    }
  } else if (flags.sweep == "c") {
    for (double cv : flags.c_grid) {
      char label[32];
      std::snprintf(label, sizeof(label), "%g", cv);
      add(label, [cv](ExperimentConfig& c) { c.blb.c = cv; });
    }
  } else if (flags.sweep == "R") {
    for (double r : flags.r_grid) {
      char label[32];
      std::snprintf(label, sizeof(label), "%g", r);
      add(label, [r](ExperimentConfig& c) {
        c.R = r;
        c.blb.sigma_max_sq.reset();
      });
    }
  } else if (flags.sweep == "variant") {
    add("private", [](ExperimentConfig&) {});
    add("nonprivate_aggregation",
        [](ExperimentConfig& c) { c.blb.private_aggregation = false; });
    add("upsampled", [](ExperimentConfig& c) { c.blb.upsampled = true; });
  } else {
    std::cerr << "dpboot: --sweep must be one of K, c, R, variant\n";
    return kExitUsage;
  }

  std::string table =
      "sweep,value,method,n,trials,mean_coverage,mean_width,median_width,"
      "failure_rate,catastrophic_rate\n";
  for (Variant& v : variants) {
    v.config.name = base->name + "_" + flags.sweep + "_" + v.label;
    absl::StatusOr<dpboot::harness::ExperimentResult> result =
        dpboot::harness::RunExperiment(v.config);
    if (!result.ok()) return Fail(result.status());
    std::cout << "== " << flags.sweep << " = " << v.label << "\n"
              << dpboot::harness::FormatSummary(result->report.groups);
    for (const CoverageGroup& g : result->report.groups) {
      char row[512];
      std::snprintf(row, sizeof(row), "%s,%s,%s,%zu,%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                    flags.sweep.c_str(), v.label.c_str(),
                    std::string(dpboot::harness::MethodName(g.method)).c_str(),
                    g.n, g.trials, g.mean_coverage, g.mean_width,
                    g.median_width, g.failure_rate, g.catastrophic_rate);
      table += row;
    }
  }
  const std::string path = OutputDir(flags.run.out) + "/" + base->name +
                           "_ablate_" + flags.sweep + ".csv";
  if (absl::Status s = dpboot::harness::WriteFile(path, table); !s.ok()) {
    return Fail(s);
  }
  std::cout << "wrote " << path << "\n";
  return 0;
}

int Moments(double mu, double var, double lo, double hi) {
  absl::StatusOr<dpboot::harness::TruncatedMoments> m =
      dpboot::harness::TruncatedGaussianMoments(mu, var, lo, hi);
  if (!m.ok()) return Fail(m.status());
  std::printf("mean     %.6f\nvariance %.6f\nmedian   %.6f\n", m->mean,
              m->variance, m->median);
  return 0;
}

int Report(const std::string& trials_path, const std::string& task_name,
           const std::string& json_out) {
  absl::StatusOr<std::string> text = dpboot::harness::ReadFile(trials_path);
  if (!text.ok()) return Fail(text.status());
  absl::StatusOr<std::vector<dpboot::harness::TrialRecord>> records =
      dpboot::harness::ParseTrialsCsv(*text);
  if (!records.ok()) return Fail(records.status());
  absl::StatusOr<dpboot::harness::Task> task =
      dpboot::harness::ParseTask(task_name);
  if (!task.ok()) return Fail(task.status());
  const std::vector<CoverageGroup> groups =
      dpboot::harness::Aggregate(*task, *records);
  std::cout << dpboot::harness::FormatSummary(groups);
  if (!json_out.empty()) {
    dpboot::harness::CoverageReport report;
    report.config_name = trials_path;
    report.groups = groups;
    ExperimentConfig config;
    config.task = *task;
    if (absl::Status s = dpboot::harness::WriteFile(
            json_out, dpboot::harness::ReportToJson(report, config));
        !s.ok()) {
      return Fail(s);
    }
  }
  return 0;
}

void AddRunFlags(CLI::App* cmd, RunFlags& flags, bool config_required) {
  CLI::Option* config = cmd->add_option(
      "--config", flags.config, "preset name or JSON config file");
  if (config_required) {
    config->required();
  } else {
    flags.config = "mean_small";
  }
  cmd->add_option("--seed", flags.seed, "override master_seed");
  cmd->add_option("--threads", flags.threads, "worker threads for trials");
  cmd->add_option("--trials", flags.trials, "override the trial count");
  cmd->add_option("--out", flags.out,
                  "output directory (default $DPBOOT_OUTPUT_DIR or ./results)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Private bootstrap confidence intervals: experiment harness"};
  app.require_subcommand(1);

  std::string presets;
  for (const std::string& p : dpboot::harness::PresetNames()) {
    presets += (presets.empty() ? "" : ", ") + p;
  }

  RunFlags run_flags;
  CLI::App* run = app.add_subcommand(
      "run", "run a coverage experiment (presets: " + presets + ")");
  AddRunFlags(run, run_flags, /*config_required=*/true);

  AblateFlags ablate_flags;
  CLI::App* ablate =
      app.add_subcommand("ablate", "sweep K, c, R or the BLB variants");
  AddRunFlags(ablate, ablate_flags.run, /*config_required=*/false);
  ablate->add_option("--sweep", ablate_flags.sweep, "K | c | R | variant");
  ablate->add_option("--c-grid", ablate_flags.c_grid, "values of c");
  ablate->add_option("--r-grid", ablate_flags.r_grid, "values of R");

  double mu = 0.0, var = 4.0, lo = -6.0, hi = 4.0;
  CLI::App* moments =
      app.add_subcommand("moments", "truncated-Gaussian ground truth");
  moments->add_option("--mu", mu);
  moments->add_option("--var", var);
  moments->add_option("--lo", lo);
  moments->add_option("--hi", hi);

  std::string trials_path, task_name = "mean", json_out;
  CLI::App* report =
      app.add_subcommand("report", "re-aggregate a stored trials CSV");
  report->add_option("--trials", trials_path, "trials CSV")->required();
  report->add_option("--task", task_name, "mean | median | logreg");
  report->add_option("--json", json_out, "also write a report JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  if (*run) return Run(run_flags);
  if (*ablate) return Ablate(ablate_flags);
  if (*moments) return Moments(mu, var, lo, hi);
  if (*report) return Report(trials_path, task_name, json_out);
  return kExitUsage;
}
