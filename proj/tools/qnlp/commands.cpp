// Copyright 2026 The qnlp-finance Authors
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

#include "commands.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>

#include <nlohmann/json.hpp>

#include "plot.h"
#include "qnlp/data/dataset.h"
#include "qnlp/data/generator.h"
#include "qnlp/data/llm.h"
#include "qnlp/discocat/compile.h"
#include "qnlp/discocat/diagram.h"
#include "qnlp/grammar/lexicon.h"
#include "qnlp/grammar/reduce.h"
#include "qnlp/grammar/tokenize.h"
#include "qnlp/qsim/circuit_json.h"
#include "qnlp/train/pipeline.h"
#include "run_record.h"

namespace qnlp::cli {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kInvalidConfig:
      return kExitUsage;
    case ErrorCode::kIoError:
    case ErrorCode::kNetworkError:
    case ErrorCode::kAuthError:
      return kExitEnvironment;
    case ErrorCode::kSyntaxError:
    case ErrorCode::kUnknownWord:
    case ErrorCode::kNotASentence:
    case ErrorCode::kMissingAnsatz:
    case ErrorCode::kInvalidLabel:
    case ErrorCode::kTooSmall:
    case ErrorCode::kEmptySplit:
    case ErrorCode::kEmptySequence:
    case ErrorCode::kUnknownToken:
    case ErrorCode::kAllRecordsInvalid:
    case ErrorCode::kEmptyDataset:
    case ErrorCode::kNoParsableLines:
    case ErrorCode::kFormatError:
      return kExitData;
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kInvalidTarget:
    case ErrorCode::kUnresolvedParam:
    case ErrorCode::kDegeneratePostselection:
    case ErrorCode::kNonFiniteGradient:
      return kExitNumeric;
  }
  return kExitData;
}

namespace {

data::Complexity parse_complexity(const std::string& name) {
  const auto c = data::complexity_from_string(name);
  if (!c) fail(ErrorCode::kInvalidConfig, "unknown complexity '" + name + "' (low|moderate)");
  return *c;
}

grammar::Lexicon lexicon_from(const std::string& path) {
  return path.empty() ? data::finance_lexicon() : grammar::Lexicon::load_tsv(path);
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << contents) || !out.flush()) fail(ErrorCode::kIoError, "cannot write " + path.string());
}

json issues_json(const std::vector<data::LineIssue>& issues) {
  json out = json::array();
  for (const auto& i : issues) out.push_back({{"line", i.line}, {"message", i.message}});
  return out;
}

data::Dataset load_dataset(const fs::path& path, RunRecord& run) {
  data::LoadReport report;
  data::Dataset dataset = data::load_jsonl(path, &report);
  for (const auto& i : report.malformed) {
    std::cerr << "warning: " << path.string() << ":" << i.line << ": " << i.message << "\n";
  }
  run.extra()["load_report"] = {{"loaded", report.loaded},
                                {"malformed", issues_json(report.malformed)},
                                {"empty", issues_json(report.empty)}};
  return dataset;
}

void print_stats_table(const data::DistributionStats& s, data::Complexity c) {
  std::printf("%-11s %10s %9s %9s %9s %11s %6s\n", "complexity", "sentences", "negative", "neutral",
              "positive", "mean words", "vocab");
  std::printf("%-11s %10zu %8.1f%% %8.1f%% %8.1f%% %11.2f %6zu\n", std::string(to_string(c)).c_str(),
              s.n_sentences, 100 * s.class_shares[0], 100 * s.class_shares[1], 100 * s.class_shares[2],
              s.mean_word_count, s.vocab_size);
}

// Runs body with the manifest bracketing it; failures are recorded and rethrown.
int recorded(RunRecord& run, const std::function<void()>& body) {
  run.start();
  try {
    body();
  } catch (const Error& e) {
    run.finish(exit_code_for(e.code()), e.what());
    throw;
  } catch (const std::exception& e) {
    run.finish(1, e.what());
    throw;
  }
  run.finish(kExitOk);
  std::cerr << "run directory: " << run.dir().string() << "\n";
  return kExitOk;
}

}  // namespace

int run_gen_data(const Common& common, const GenDataOptions& o) {
  data::GenConfig config;
  config.complexity = parse_complexity(o.complexity);
  config.n_sentences = o.n;
  config.seed = o.seed;
  if (!o.shares.empty()) {
    if (o.shares.size() != 3) fail(ErrorCode::kInvalidConfig, "--shares takes three values");
    config.target_shares = {o.shares[0], o.shares[1], o.shares[2]};
  } else {
    config.target_shares = data::reference_shares(config.complexity);
  }
  if (!o.llm) config.validate();

  // Credentials are checked before any run directory is created.
  std::optional<data::EndpointConfig> endpoint;
  if (o.llm) endpoint = data::EndpointConfig::from_env();

  RunRecord run(common.runs_dir, "gen-data", common.argv, o.seed);
  json cfg = {{"complexity", to_string(config.complexity)},
              {"n", o.n},
              {"seed", o.seed},
              {"source", o.llm ? "llm" : "synthetic"}};
  if (o.llm) {
    cfg["endpoint"] = endpoint->base_url + endpoint->path;
    cfg["model"] = endpoint->model;
    cfg["max_requests"] = o.max_requests;
    cfg["prompt"] = data::llm_prompt(config.complexity);
  } else {
    cfg["shares"] = config.target_shares;
  }
  run.set_config(cfg);

  return recorded(run, [&] {
    data::Dataset dataset;
    if (o.llm) {
      data::HttpChatClient client(*endpoint);
      data::LlmResult result =
          data::llm_generate(client, {config.complexity, o.n, o.max_requests});
      write_file(run.path("llm_replies.json"), json(result.raw_replies).dump(2) + "\n");
      run.add_output("llm_replies", run.path("llm_replies.json"));
      run.extra()["unparseable"] = issues_json(result.unparseable);
      if (result.dataset.size() < o.n) {
        std::cerr << "warning: collected " << result.dataset.size() << " of " << o.n << " sentences\n";
      }
      dataset = std::move(result.dataset);
    } else {
      dataset = data::generate_synthetic(config);
    }

    const fs::path data_path = run.path("data.jsonl");
    data::save_jsonl(dataset, data_path);
    run.add_output("data", data_path);
    if (!o.out.empty()) {
      data::save_jsonl(dataset, o.out);
      run.add_output("data_copy", o.out);
    }

    const data::DistributionStats s = data::stats(dataset);
    const json stats_json = {{"n_sentences", s.n_sentences},
                             {"class_counts", s.class_counts},
                             {"class_shares", s.class_shares},
                             {"mean_word_count", s.mean_word_count},
                             {"vocab_size", s.vocab_size}};
    write_file(run.path("stats.json"), stats_json.dump(2) + "\n");
    run.add_output("stats", run.path("stats.json"));
    run.extra()["stats"] = stats_json;
    print_stats_table(s, config.complexity);
  });
}

int run_parse(const Common&, const ParseOptions& o) {
  static const std::vector<std::string> kStages{"types", "derivation", "diagram", "circuit"};
  if (std::find(kStages.begin(), kStages.end(), o.stage) == kStages.end()) {
    fail(ErrorCode::kInvalidConfig, "unknown stage '" + o.stage + "'");
  }
  const grammar::Lexicon lexicon = lexicon_from(o.lexicon);
  const std::vector<std::string> tokens = grammar::tokenize(o.sentence);
  if (tokens.empty()) fail(ErrorCode::kEmptySequence, "sentence has no tokens");
  const auto typed = grammar::assign_types(tokens, lexicon);

  if (o.stage == "types") {
    for (std::size_t k = 0; k < typed.size(); ++k) {
      std::cout << (k ? " | " : "") << grammar::to_string(typed[k].type);
    }
    std::cout << "\n";
    return kExitOk;
  }

  grammar::Derivation derivation;
  try {
    derivation = grammar::reduce(typed);
  } catch (const grammar::NotASentence& e) {
    std::cerr << "residue:";
    for (std::size_t k = 0; k < e.residue().size(); ++k) {
      std::cerr << " " << grammar::to_string(e.residue_types()[k]) << "@" << e.residue()[k];
    }
    std::cerr << "\n";
    throw;
  }
  if (o.stage == "derivation") {
    std::cout << grammar::to_json(derivation).dump(2) << "\n";
    return kExitOk;
  }

  discocat::Diagram diagram = discocat::build_diagram(derivation);
  if (!o.no_bend) diagram = discocat::bend_rewrite(std::move(diagram));
  if (o.stage == "diagram") {
    std::cout << discocat::to_json(diagram).dump(2) << "\n";
    return kExitOk;
  }

  discocat::AnsatzConfig ansatz;
  ansatz.qubits_per_atom = {{grammar::Atom::kNoun, o.qubits_n}, {grammar::Atom::kSentence, o.qubits_s}};
  const discocat::CompiledSentence compiled = discocat::compile(diagram, ansatz);
  const json circuit = qsim::to_json(compiled.circuit);
  const json sidecar = discocat::sidecar_json(compiled);
  if (o.out.empty()) {
    json combined = circuit;
    combined.update(sidecar);
    std::cout << combined.dump(2) << "\n";
    return kExitOk;
  }
  fs::path sidecar_path = o.out;
  sidecar_path.replace_extension(".sidecar.json");
  write_file(o.out, circuit.dump(2) + "\n");
  write_file(sidecar_path, sidecar.dump(2) + "\n");
  std::cout << "wrote " << o.out << " and " << sidecar_path.string() << "\n";
  return kExitOk;
}

int run_train(const Common& common, const TrainOptions& o) {
  const auto kind = train::model_kind_from_string(o.model);
  if (!kind) fail(ErrorCode::kInvalidConfig, "unknown model '" + o.model + "' (lstm|qlstm|discocat)");
  train::PipelineConfig config = train::default_pipeline_config(*kind, parse_complexity(o.complexity));
  config.train.epochs = o.epochs;
  config.train.seed = o.seed;
  config.train.threads = o.threads;
  if (o.batch_size) config.train.batch_size = *o.batch_size;
  if (o.lr) config.train.learning_rate = *o.lr;
  config.train.early_stop_patience = o.early_stop;
  config.bend = !o.no_bend;
  config.lexicon = lexicon_from(o.lexicon);
  config.train.validate();

  RunRecord run(common.runs_dir, "train", common.argv, o.seed);
  config.curve_csv = run.path("curve.csv");
  json cfg = train::to_json(config);
  cfg["complexity"] = o.complexity;
  run.set_config(cfg);
  run.add_input("data", o.data);
  if (!o.lexicon.empty()) run.add_input("lexicon", o.lexicon);

  return recorded(run, [&] {
    const data::Dataset dataset = load_dataset(o.data, run);
    const train::TrainResult result = train::train_model(dataset, config);
    run.add_output("curve", run.path("curve.csv"));
    run.extra()["data"] = train::to_json(result.data);

    train::save_checkpoint(result.checkpoint, run.path("checkpoint.json"));
    run.add_output("checkpoint", run.path("checkpoint.json"));

    json metrics = {{"model", o.model}, {"test", train::to_json(result.test)}, {"data", train::to_json(result.data)}};
    if (!result.records.empty()) metrics["final_epoch"] = train::to_json(result.records.back());
    write_file(run.path("metrics.json"), metrics.dump(2) + "\n");
    run.add_output("metrics", run.path("metrics.json"));

    if (o.plot) {
      write_file(run.path("curve.svg"), curve_svg(result.records, o.model + " (seed " + std::to_string(o.seed) + ")"));
      run.add_output("plot", run.path("curve.svg"));
    }

    std::printf("%5s %10s %10s %9s %9s\n", "epoch", "train_loss", "val_loss", "train_acc", "val_acc");
    for (const auto& r : result.records) {
      std::printf("%5zu %10.4f %10.4f %9.3f %9.3f\n", r.epoch, r.train_loss, r.val_loss, r.train_acc, r.val_acc);
    }
    std::printf("test: loss %.4f accuracy %.3f (n=%zu)\n", result.test.loss, result.test.accuracy, result.test.n);
    if (result.data.dropped_neutral || result.data.unparseable) {
      std::printf("dropped: %zu neutral, %zu unparseable\n", result.data.dropped_neutral, result.data.unparseable);
    }
  });
}

int run_eval(const Common& common, const EvalOptions& o) {
  const json checkpoint = train::load_checkpoint(o.checkpoint);
  const std::uint64_t seed = checkpoint.value("/config/seed"_json_pointer, std::uint64_t{0});
  RunRecord run(common.runs_dir, "eval", common.argv, seed);
  run.set_config({{"threads", o.threads}});
  run.add_input("checkpoint", o.checkpoint);
  run.add_input("data", o.data);

  return recorded(run, [&] {
    const data::Dataset dataset = load_dataset(o.data, run);
    const train::CheckpointEval result = train::evaluate_checkpoint(checkpoint, dataset, o.threads);
    const json metrics = {{"metrics", train::to_json(result.metrics)}, {"skipped", result.skipped}};
    write_file(run.path("metrics.json"), metrics.dump(2) + "\n");
    run.add_output("metrics", run.path("metrics.json"));
    std::cout << metrics.dump(2) << "\n";
  });
}

}  // namespace qnlp::cli
