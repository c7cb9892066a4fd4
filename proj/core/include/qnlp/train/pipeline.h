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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qnlp/data/dataset.h"
#include "qnlp/data/generator.h"
#include "qnlp/discocat/compile.h"
#include "qnlp/grammar/lexicon.h"
#include "qnlp/qlstm/lstm.h"
#include "qnlp/qlstm/qlstm.h"
#include "qnlp/train/metrics.h"
#include "qnlp/train/split.h"

namespace qnlp::train {

enum class ModelKind { kLstm, kQlstm, kDiscocat };

std::string_view to_string(ModelKind kind);
std::optional<ModelKind> model_kind_from_string(std::string_view name);

inline constexpr int kCheckpointVersion = 1;

struct PipelineConfig {
  ModelKind kind = ModelKind::kLstm;
  TrainConfig train;
  SplitFractions split = kDefaultSplit;
  /// vocab_size is filled in from the training split.
  qlstm::LstmConfig lstm;
  qlstm::QlstmConfig qlstm;
  discocat::AnsatzConfig ansatz;
  bool bend = true;
  grammar::Lexicon lexicon = data::finance_lexicon();
  std::size_t min_count = 1;
  /// Written one row per epoch when set.
  std::optional<std::filesystem::path> curve_csv;
};

/// Learning rate 0.005 for the classical LSTM and 0.01 otherwise; embedding
/// and hidden sizes for the given complexity (5/8 low, 10/16 with dropout 0.1
/// moderate).
PipelineConfig default_pipeline_config(ModelKind kind,
                                       data::Complexity complexity = data::Complexity::kLow);

nlohmann::json to_json(const PipelineConfig& config);

struct DataSummary {
  std::size_t input = 0;
  /// Neutral records removed by binarize (DisCoCat only).
  std::size_t dropped_neutral = 0;
  /// Sentences outside the grammar fragment (DisCoCat only).
  std::size_t unparseable = 0;
  std::size_t train = 0, val = 0, test = 0;
};

nlohmann::json to_json(const DataSummary& s);

struct TrainResult {
  std::vector<EpochRecord> records;
  Metrics test;
  nlohmann::json checkpoint;
  DataSummary data;
};

/// Split, build the model, fit, score the test split and package a
/// checkpoint. DisCoCat binarizes first and skips unparseable sentences.
TrainResult train_model(const data::Dataset& dataset, const PipelineConfig& config);

struct CheckpointEval {
  Metrics metrics;
  /// Sentences the checkpoint cannot score (unparseable or unseen words).
  std::size_t skipped = 0;
};

/// Scores a dataset with a checkpoint produced by train_model. Throws
/// FormatError for unknown formats and EmptySplit when nothing is scorable.
CheckpointEval evaluate_checkpoint(const nlohmann::json& checkpoint, const data::Dataset& dataset,
                                   unsigned threads = 1);

void save_checkpoint(const nlohmann::json& checkpoint, const std::filesystem::path& path);
nlohmann::json load_checkpoint(const std::filesystem::path& path);

}  // namespace qnlp::train
