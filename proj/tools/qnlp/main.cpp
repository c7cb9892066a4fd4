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

#include <algorithm>
#include <exception>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "commands.h"

int main(int argc, char** argv) {
  using namespace qnlp::cli;

  CLI::App app{"Sentiment classification of financial text with quantum NLP models"};
  app.require_subcommand(1);
  Common common;
  common.argv.assign(argv, argv + argc);
  app.add_option("--runs-dir", common.runs_dir, "Root for run directories")->capture_default_str();

  GenDataOptions gen;
  auto* gen_cmd = app.add_subcommand("gen-data", "Generate a labelled sentence corpus");
  gen_cmd->add_option("--complexity", gen.complexity, "low|moderate")
      ->check(CLI::IsMember({"low", "moderate"}))
      ->capture_default_str();
  gen_cmd->add_option("--n", gen.n, "Number of sentences")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  gen_cmd->add_option("--shares", gen.shares, "Negative, neutral, positive shares")->expected(3);
  gen_cmd->add_flag("--llm", gen.llm, "Query the LLM endpoint from QNLP_LLM_ENDPOINT/QNLP_LLM_TOKEN");
  gen_cmd->add_option("--max-requests", gen.max_requests, "LLM round-trip limit")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Also write the JSONL corpus here");

  ParseOptions parse;
  auto* parse_cmd = app.add_subcommand("parse", "Show a sentence at one stage of the compiler");
  parse_cmd->add_option("sentence", parse.sentence, "Sentence text")->required();
  parse_cmd->add_option("--stage", parse.stage, "types|derivation|diagram|circuit")
      ->check(CLI::IsMember({"types", "derivation", "diagram", "circuit"}))
      ->capture_default_str();
  parse_cmd->add_flag("--no-bend", parse.no_bend, "Keep effects instead of bending them into cups");
  parse_cmd->add_option("--qubits-n", parse.qubits_n, "Qubits per noun wire")->capture_default_str();
  parse_cmd->add_option("--qubits-s", parse.qubits_s, "Qubits per sentence wire")->capture_default_str();
  parse_cmd->add_option("--lexicon", parse.lexicon, "Lexicon TSV (default: built-in finance lexicon)");
  parse_cmd->add_option("--out", parse.out, "Write circuit JSON here and the sidecar next to it");

  TrainOptions tr;
  tr.threads = std::max(1u, std::thread::hardware_concurrency());
  auto* train_cmd = app.add_subcommand("train", "Train a model and write curve, checkpoint and metrics");
  train_cmd->add_option("--model", tr.model, "lstm|qlstm|discocat")
      ->required()
      ->check(CLI::IsMember({"lstm", "qlstm", "discocat"}));
  train_cmd->add_option("--data", tr.data, "JSONL corpus")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--complexity", tr.complexity, "Selects model size defaults")
      ->check(CLI::IsMember({"low", "moderate"}))
      ->capture_default_str();
  train_cmd->add_option("--epochs", tr.epochs)->capture_default_str();
  train_cmd->add_option("--seed", tr.seed)->capture_default_str();
  train_cmd->add_option("--threads", tr.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  train_cmd->add_option("--batch-size", tr.batch_size);
  train_cmd->add_option("--lr", tr.lr, "Adam learning rate");
  train_cmd->add_option("--early-stop", tr.early_stop, "Patience in epochs on validation loss");
  train_cmd->add_flag("--plot", tr.plot, "Write curve.svg");
  train_cmd->add_flag("--no-bend", tr.no_bend, "DisCoCat: keep effects");
  train_cmd->add_option("--lexicon", tr.lexicon, "DisCoCat lexicon TSV");

  EvalOptions ev;
  ev.threads = tr.threads;
  auto* eval_cmd = app.add_subcommand("eval", "Score a corpus with a checkpoint");
  eval_cmd->add_option("--checkpoint", ev.checkpoint)->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--data", ev.data)->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--threads", ev.threads)->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen_data(common, gen);
    if (*parse_cmd) return run_parse(common, parse);
    if (*train_cmd) return run_train(common, tr);
    return run_eval(common, ev);
  } catch (const qnlp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
