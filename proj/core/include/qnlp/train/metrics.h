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
#include <fstream>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace qnlp::train {

struct TrainConfig {
  std::size_t epochs = 20;
  std::size_t batch_size = 16;
  double learning_rate = 0.01;
  std::uint64_t seed = 0;
  /// Stop when validation loss has not improved for this many epochs.
  std::optional<std::size_t> early_stop_patience;
  unsigned threads = 1;

  /// Throws InvalidConfig.
  void validate() const;
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double val_loss = 0.0;
  double train_acc = 0.0;
  double val_acc = 0.0;
  double wallclock_s = 0.0;
};

struct Metrics {
  double loss = 0.0;
  double accuracy = 0.0;
  /// confusion[true][predicted].
  std::vector<std::vector<std::size_t>> confusion;
  /// Predictions that could not be formed (counted as wrong).
  std::size_t degenerate = 0;
  std::size_t n = 0;
};

nlohmann::json to_json(const Metrics& m);
nlohmann::json to_json(const EpochRecord& r);

inline constexpr const char* kCurveHeader = "epoch,train_loss,val_loss,train_acc,val_acc,wallclock_s";

/// One CSV line without newline; reals printed with 17 significant digits.
std::string curve_row(const EpochRecord& r);

/// Training-curve CSV written one flushed row at a time.
class CurveWriter {
 public:
  /// Throws IoError.
  explicit CurveWriter(const std::filesystem::path& path);
  void append(const EpochRecord& r);

 private:
  std::ofstream out_;
  std::filesystem::path path_;
};

void write_curve_csv(std::span<const EpochRecord> records, std::ostream& out);

}  // namespace qnlp::train
