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

#include "dpboot/harness/report_io.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "json.hpp"

namespace dpboot::harness {

namespace {

using nlohmann::json;

std::string Exact(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string Short(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4f", x);
  return buf;
}

json BlbToJson(const BlbConfig& blb) {
  json j = {{"K", blb.K},
            {"c", blb.c},
            {"private_aggregation", blb.private_aggregation},
            {"upsampled", blb.upsampled}};
  if (blb.rho) j["rho"] = *blb.rho;
  if (blb.sigma_max_sq) j["sigma_max_sq"] = *blb.sigma_max_sq;
  if (blb.n_mc) j["n_mc"] = *blb.n_mc;
  return j;
}

json ConfigJson(const ExperimentConfig& c) {
  json methods = json::array();
  for (Method m : c.methods) methods.push_back(std::string(MethodName(m)));
  json data = {{"kind", c.data.kind}};
  if (c.data.kind == "truncated_gaussian") {
    data["mu"] = c.data.mu;
    data["var"] = c.data.var;
    data["lo"] = c.data.lo;
    data["hi"] = c.data.hi;
  } else if (c.data.kind == "synthetic_logistic") {
    if (!c.data.theta_star.empty()) data["theta_star"] = c.data.theta_star;
  } else {
    data["path"] = c.data.path;
  }
  json j = {{"name", c.name},
            {"task", std::string(TaskName(c.task))},
            {"n_grid", c.n_grid},
            {"eps_total", c.eps_total},
            {"alpha", c.alpha},
            {"trials", c.trials},
            {"resamp", c.resamp},
            {"methods", methods},
            {"blb", BlbToJson(c.blb)},
            {"data", data},
            {"master_seed", c.master_seed},
            {"noiseless", c.noiseless},
            {"coordinate", c.coordinate},
            {"threads", c.threads}};
  if (c.R) j["R"] = *c.R;
  if (c.clip_bound) j["clip_bound"] = *c.clip_bound;
  if (c.param_bound) j["param_bound"] = *c.param_bound;
  if (c.median_rho) j["median_rho"] = *c.median_rho;
  if (c.radius > 0.0) j["radius"] = c.radius;
  return j;
}

template <typename T>
void ReadField(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

template <typename T>
void ReadOptional(const json& j, const char* key, std::optional<T>& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

absl::Status CheckKeys(const json& j, std::initializer_list<const char*> keys,
                       std::string_view where) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown key '", key, "' in ", std::string(where)));
    }
  }
  return absl::OkStatus();
}

}  // namespace

std::string FormatTrialsCsv(const std::vector<TrialRecord>& records) {
  std::string out = std::string(kTrialsHeader) + "\n";
  for (const TrialRecord& r : records) {
    absl::StrAppend(&out, r.trial_id, ",", std::string(MethodName(r.method)), ",", r.n, ",",
                    Exact(r.eps_total), ",", Exact(r.lo), ",", Exact(r.hi), ",",
                    Exact(r.width), ",", Exact(r.coverage_freq), ",",
                    r.failed ? 1 : 0, ",", r.seed, "\n");
  }
  return out;
}

absl::StatusOr<std::vector<TrialRecord>> ParseTrialsCsv(std::string_view text) {
  std::vector<TrialRecord> records;
  std::size_t line_no = 0;
  for (absl::string_view line : absl::StrSplit(absl::string_view(text.data(), text.size()), '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line_no == 1) {
      if (std::string_view(line.data(), line.size()) != kTrialsHeader) {
        return absl::InvalidArgumentError("trials CSV: unexpected header");
      }
      continue;
    }
    std::vector<absl::string_view> f = absl::StrSplit(line, ',');
    auto bad = [&] {
      return absl::InvalidArgumentError(
          absl::StrCat("trials CSV: malformed line ", line_no));
    };
    if (f.size() != 10) return bad();
    TrialRecord r;
    int failed = 0;
    if (!absl::SimpleAtoi(f[0], &r.trial_id) || !absl::SimpleAtoi(f[2], &r.n) ||
        !absl::SimpleAtod(f[3], &r.eps_total) ||
        !absl::SimpleAtod(f[4], &r.lo) || !absl::SimpleAtod(f[5], &r.hi) ||
        !absl::SimpleAtod(f[6], &r.width) ||
        !absl::SimpleAtod(f[7], &r.coverage_freq) ||
        !absl::SimpleAtoi(f[8], &failed) || !absl::SimpleAtoi(f[9], &r.seed)) {
      return bad();
    }
    absl::StatusOr<Method> method = ParseMethod(std::string_view(f[1].data(), f[1].size()));
    if (!method.ok()) return bad();
    r.method = *method;
    r.failed = failed != 0;
    records.push_back(r);
  }
  return records;
}

std::string ConfigToJson(const ExperimentConfig& config) {
  return ConfigJson(config).dump(2);
}

absl::StatusOr<ExperimentConfig> ConfigFromJson(std::string_view text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    return absl::InvalidArgumentError("config: not a JSON object");
  }
  ExperimentConfig c;
  try {
    absl::Status keys = CheckKeys(
        j,
        {"name", "task", "n_grid", "eps_total", "alpha", "trials", "resamp",
         "methods", "blb", "data", "master_seed", "noiseless", "coordinate",
         "threads", "R", "clip_bound", "param_bound", "median_rho", "radius"},
        "config");
    if (!keys.ok()) return keys;
    ReadField(j, "name", c.name);
    if (j.contains("task")) {
      absl::StatusOr<Task> task = ParseTask(j.at("task").get<std::string>());
      if (!task.ok()) return task.status();
      c.task = *task;
    }
    ReadField(j, "n_grid", c.n_grid);
    ReadField(j, "eps_total", c.eps_total);
    ReadField(j, "alpha", c.alpha);
    ReadField(j, "trials", c.trials);
    ReadField(j, "resamp", c.resamp);
    if (j.contains("methods")) {
      c.methods.clear();
      for (const json& m : j.at("methods")) {
        absl::StatusOr<Method> method = ParseMethod(m.get<std::string>());
        if (!method.ok()) return method.status();
        c.methods.push_back(*method);
      }
    }
    if (j.contains("blb")) {
      const json& b = j.at("blb");
      keys = CheckKeys(b,
                       {"K", "c", "private_aggregation", "upsampled", "rho",
                        "sigma_max_sq", "n_mc"},
                       "blb");
      if (!keys.ok()) return keys;
      ReadField(b, "K", c.blb.K);
      ReadField(b, "c", c.blb.c);
      ReadField(b, "private_aggregation", c.blb.private_aggregation);
      ReadField(b, "upsampled", c.blb.upsampled);
      ReadOptional(b, "rho", c.blb.rho);
      ReadOptional(b, "sigma_max_sq", c.blb.sigma_max_sq);
      ReadOptional(b, "n_mc", c.blb.n_mc);
    }
    if (j.contains("data")) {
      const json& d = j.at("data");
      keys = CheckKeys(d, {"kind", "mu", "var", "lo", "hi", "theta_star", "path"},
                       "data");
      if (!keys.ok()) return keys;
      ReadField(d, "kind", c.data.kind);
      ReadField(d, "mu", c.data.mu);
      ReadField(d, "var", c.data.var);
      ReadField(d, "lo", c.data.lo);
      ReadField(d, "hi", c.data.hi);
      ReadField(d, "theta_star", c.data.theta_star);
      ReadField(d, "path", c.data.path);
    }
    ReadField(j, "master_seed", c.master_seed);
    ReadField(j, "noiseless", c.noiseless);
    ReadField(j, "coordinate", c.coordinate);
    ReadField(j, "threads", c.threads);
    ReadOptional(j, "R", c.R);
    ReadOptional(j, "clip_bound", c.clip_bound);
    ReadOptional(j, "param_bound", c.param_bound);
    ReadOptional(j, "median_rho", c.median_rho);
    ReadField(j, "radius", c.radius);
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("config: ", e.what()));
  }
  if (absl::Status s = c.Validate(); !s.ok()) return s;
  return c;
}

absl::StatusOr<ExperimentConfig> LoadConfig(const std::string& name_or_path) {
  if (std::optional<ExperimentConfig> preset = Preset(name_or_path)) {
    return *preset;
  }
  absl::StatusOr<std::string> text = ReadFile(name_or_path);
  if (!text.ok()) {
    return absl::NotFoundError(absl::StrCat(
        "'", name_or_path, "' is neither a preset nor a readable file"));
  }
  return ConfigFromJson(*text);
}

std::string ReportToJson(const CoverageReport& report,
                         const ExperimentConfig& config) {
  json groups = json::array();
  for (const CoverageGroup& g : report.groups) {
    json hist = json::array();
    for (const WidthBin& bin : g.width_histogram) {
      hist.push_back({{"lo", bin.lo}, {"count", bin.count}});
    }
    groups.push_back({{"task", std::string(TaskName(g.task))},
                      {"method", std::string(MethodName(g.method))},
                      {"n", g.n},
                      {"eps_total", g.eps_total},
                      {"trials", g.trials},
                      {"mean_coverage", g.mean_coverage},
                      {"mean_width", g.mean_width},
                      {"median_width", g.median_width},
                      {"failure_rate", g.failure_rate},
                      {"catastrophic_rate", g.catastrophic_rate},
                      {"width_histogram", hist}});
  }
  json counts = json::array();
  for (const auto& [n, count] : report.interval_counts) {
    counts.push_back({{"n", n}, {"T", count}});
  }
  json j = {{"config_name", report.config_name},
            {"master_seed", report.master_seed},
            {"config", ConfigJson(config)},
            {"interval_counts", counts},
            {"groups", groups}};
  return j.dump(2);
}

std::string FormatPlotCsv(const std::vector<CoverageGroup>& groups) {
  std::string out = "metric,x,y,series\n";
  for (const CoverageGroup& g : groups) {
    const std::string series =
        absl::StrCat(std::string(TaskName(g.task)), "/",
                     std::string(MethodName(g.method)), "/eps=",
                     Exact(g.eps_total));
    const std::pair<const char*, double> metrics[] = {
        {"mean_coverage", g.mean_coverage},
        {"mean_width", g.mean_width},
        {"median_width", g.median_width},
        {"failure_rate", g.failure_rate},
        {"catastrophic_rate", g.catastrophic_rate}};
    for (const auto& [metric, y] : metrics) {
      absl::StrAppend(&out, metric, ",", g.n, ",", Exact(y), ",", series, "\n");
    }
  }
  return out;
}

std::string FormatSummary(const std::vector<CoverageGroup>& groups) {
  std::string out =
      "method            n       trials  coverage  mean_width  "
      "median_width  failed  catastrophic\n";
  for (const CoverageGroup& g : groups) {
    char line[256];
    std::snprintf(line, sizeof(line),
                  "%-16s  %-6zu  %-6zu  %-8s  %-10s  %-12s  %-6s  %s\n",
                  std::string(MethodName(g.method)).c_str(), g.n, g.trials,
                  Short(g.mean_coverage).c_str(), Short(g.mean_width).c_str(),
                  Short(g.median_width).c_str(), Short(g.failure_rate).c_str(),
                  Short(g.catastrophic_rate).c_str());
    out += line;
  }
  return out;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::Status WriteFile(const std::string& path, std::string_view contents) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) return absl::PermissionDeniedError(absl::StrCat("cannot write ", path));
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) return absl::DataLossError(absl::StrCat("short write to ", path));
  return absl::OkStatus();
}

}  // namespace dpboot::harness
