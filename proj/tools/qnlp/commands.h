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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qnlp/error.h"

namespace qnlp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitEnvironment = 3;
inline constexpr int kExitData = 4;
inline constexpr int kExitNumeric = 5;

int exit_code_for(ErrorCode code);

struct Common {
  std::vector<std::string> argv;
  std::string runs_dir = "runs";
};

struct GenDataOptions {
  std::string complexity = "low";
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<double> shares;
  bool llm = false;
  std::size_t max_requests = 20;
  std::string out;
};

struct ParseOptions {
  std::string sentence;
  std::string stage = "circuit";
  bool no_bend = false;
  int qubits_n = 1;
  int qubits_s = 1;
  std::string lexicon;
  std::string out;
};

struct TrainOptions {
  std::string model;
  std::string data;
  std::string complexity = "low";
  std::size_t epochs = 20;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::optional<std::size_t> batch_size;
  std::optional<double> lr;
  std::optional<std::size_t> early_stop;
  bool plot = false;
  bool no_bend = false;
  std::string lexicon;
};

struct EvalOptions {
  std::string checkpoint;
  std::string data;
  unsigned threads = 1;
};

int run_gen_data(const Common& common, const GenDataOptions& options);
int run_parse(const Common& common, const ParseOptions& options);
int run_train(const Common& common, const TrainOptions& options);
int run_eval(const Common& common, const EvalOptions& options);

}  // namespace qnlp::cli
