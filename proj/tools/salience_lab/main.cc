// Copyright 2026 The Salience Lab Authors.
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

// salience-lab: command-line front end for the salience pipeline.

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "salience/errors.h"
#include "salience_lab/commands.h"
#include "salience_lab/run_config.h"

namespace {

using salience::cli::RunConfig;

constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

int Fail(int code, const char* kind, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = kind;
  j["exit_code"] = code;
  j["message"] = message;
  std::cerr << j.dump() << std::endl;
  return code;
}

// Flag values, applied on top of the config file and --set overrides.
struct Flags {
  std::string config;
  std::vector<std::string> sets;
  std::string corpus, out, head, model, predictions, split;
  std::vector<std::string> teachers, transfer;
  uint64_t seed = 0;
  size_t epochs = 0, bins = 0;
  double threshold = 0, t_teacher = 0, t_student = 0, temperature = 0;
  double salient = 0, nonsalient = 0;
  std::vector<size_t> ks;
};

struct Command {
  CLI::App* app;
  std::function<void(const RunConfig&)> run;
};

void AddCommonFlags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON run config or a previous manifest");
  cmd->add_option("--set", f.sets, "Dotted-key override, KEY=VALUE (repeatable)");
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--seed", f.seed, "Seed for every stochastic component");
}

void AddModelFlags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--corpus", f.corpus, "Corpus JSONL");
  cmd->add_option("--head", f.head, "tagging | pooling | pooling-tags | standard");
}

void ApplySets(RunConfig& config, const std::vector<std::string>& sets) {
  for (const auto& s : sets) {
    const size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw salience::ConfigError("--set expects KEY=VALUE, got '" + s + "'");
    }
    config.Set(s.substr(0, eq), s.substr(eq + 1));
  }
}

RunConfig Resolve(const CLI::App& cmd, const Flags& f, const std::string& name) {
  RunConfig config;
  if (!f.config.empty()) config.MergeFile(f.config);
  ApplySets(config, f.sets);
  const auto given = [&](const char* flag) {
    try {
      return cmd.get_option(flag)->count() > 0;
    } catch (const CLI::OptionNotFound&) {
      return false;
    }
  };
  if (given("--out")) config.Set("paths.out", nlohmann::json(f.out));
  if (given("--corpus")) config.Set("paths.corpus", nlohmann::json(f.corpus));
  if (given("--model")) config.Set("paths.model", nlohmann::json(f.model));
  if (given("--predictions")) config.Set("paths.predictions", nlohmann::json(f.predictions));
  if (given("--teacher")) config.Set("paths.teachers", nlohmann::json(f.teachers));
  if (given("--transfer")) config.Set("paths.transfer", nlohmann::json(f.transfer));
  if (given("--seed")) config.Set("seed", nlohmann::json(f.seed));
  if (given("--head")) {
    const std::string key = name == "distill" ? "distill.student_head" : "train.head";
    config.Set(key, nlohmann::json(f.head));
  }
  if (given("--epochs")) config.Set("train.epochs", nlohmann::json(f.epochs));
  if (given("--threshold")) config.Set("metrics.threshold", nlohmann::json(f.threshold));
  if (given("--bins")) config.Set("metrics.bins", nlohmann::json(f.bins));
  if (given("--k")) config.Set("metrics.k", nlohmann::json(f.ks));
  if (given("--t-teacher")) config.Set("distill.t_teacher", nlohmann::json(f.t_teacher));
  if (given("--t-student")) config.Set("distill.t_student", nlohmann::json(f.t_student));
  if (given("--temperature")) {
    config.Set("calibrate.temperature", nlohmann::json(f.temperature));
  }
  if (given("--split")) {
    config.Set(name == "score" ? "score.split" : "metrics.split", nlohmann::json(f.split));
  }
  if (given("--salient")) config.Set("speedup.salient", nlohmann::json(f.salient));
  if (given("--nonsalient")) config.Set("speedup.nonsalient", nlohmann::json(f.nonsalient));
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = salience::cli;
  CLI::App app{"Entity salience experiments: synthetic data, training, "
               "distillation, evaluation and analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SALIENCE_LAB_VERSION);
  Flags f;
  std::vector<Command> commands;

  auto* synth = app.add_subcommand("synth-gen", "Generate a labeled synthetic corpus");
  AddCommonFlags(synth, f);
  commands.push_back({synth, cli::SynthGen});

  auto* train = app.add_subcommand("train", "Train one salience model");
  AddCommonFlags(train, f);
  AddModelFlags(train, f);
  train->add_option("--epochs", f.epochs, "Training epochs");
  commands.push_back({train, cli::TrainModel});

  auto* distill = app.add_subcommand("distill", "Distill a student from a teacher ensemble");
  AddCommonFlags(distill, f);
  AddModelFlags(distill, f);
  distill->add_option("--epochs", f.epochs, "Epochs for teachers and student");
  distill->add_option("--t-teacher", f.t_teacher, "Teacher temperature");
  distill->add_option("--t-student", f.t_student, "Student temperature");
  distill->add_option("--teacher", f.teachers, "Trained teacher directory (repeatable)");
  commands.push_back({distill, cli::DistillStudent});

  auto* evaluate = app.add_subcommand("evaluate", "Score a split and write a metrics report");
  AddCommonFlags(evaluate, f);
  AddModelFlags(evaluate, f);
  evaluate->add_option("--model", f.model, "Model directory");
  evaluate->add_option("--split", f.split, "train | valid | test");
  evaluate->add_option("--threshold", f.threshold, "Decision threshold");
  evaluate->add_option("--bins", f.bins, "Calibration bins");
  evaluate->add_option("--k", f.ks, "Top-k cutoff (repeatable)");
  commands.push_back({evaluate, cli::Evaluate});

  auto* calibrate = app.add_subcommand("calibrate", "Reliability bins and ECE for predictions");
  AddCommonFlags(calibrate, f);
  calibrate->add_option("--head", f.head, "Selects predictions_<head>.jsonl");
  calibrate->add_option("--predictions", f.predictions, "Predictions JSONL");
  calibrate->add_option("--bins", f.bins, "Calibration bins");
  calibrate->add_option("--temperature", f.temperature, "Post-hoc logit temperature");
  commands.push_back({calibrate, cli::Calibrate});

  auto* analyze = app.add_subcommand("analyze", "Strata, transfer and temperature sweep");
  AddCommonFlags(analyze, f);
  AddModelFlags(analyze, f);
  analyze->add_option("--model", f.model, "Model directory for transfer evaluation");
  analyze->add_option("--predictions", f.predictions, "Predictions JSONL");
  analyze->add_option("--teacher", f.teachers, "Teacher directory for the sweep (repeatable)");
  analyze->add_option("--transfer", f.transfer, "Target corpus for transfer (repeatable)");
  analyze->add_option("--bins", f.bins, "Calibration bins");
  analyze->add_option("--epochs", f.epochs, "Student epochs in the sweep");
  commands.push_back({analyze, cli::Analyze});

  auto* score = app.add_subcommand("score", "Write candidate scores for a corpus");
  AddCommonFlags(score, f);
  AddModelFlags(score, f);
  score->add_option("--model", f.model, "Model directory");
  score->add_option("--split", f.split, "train | valid | test | all");
  commands.push_back({score, cli::Score});

  auto* speedup = app.add_subcommand("speedup", "Encoder passes saved by single-pass scoring");
  AddCommonFlags(speedup, f);
  speedup->add_option("--salient", f.salient, "Salient entities per document")->required();
  speedup->add_option("--nonsalient", f.nonsalient, "Non-salient entities per document")
      ->required();
  commands.push_back({speedup, cli::Speedup});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return Fail(kExitConfig, "config", e.what());
  }

  try {
    for (const auto& c : commands) {
      if (c.app->parsed()) {
        c.run(Resolve(*c.app, f, c.app->get_name()));
        return 0;
      }
    }
    return Fail(kExitConfig, "config", "no command given");
  } catch (const salience::ConfigError& e) {
    return Fail(kExitConfig, "config", e.what());
  } catch (const salience::NumericalError& e) {
    return Fail(kExitNumerical, "numerical", e.what());
  } catch (const salience::Error& e) {
    return Fail(kExitData, "data", e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return Fail(kExitData, "data", e.what());
  } catch (const std::exception& e) {
    return Fail(kExitData, "data", e.what());
  }
}
