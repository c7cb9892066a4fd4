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

#include "qnlp/train/metrics.h"

#include <cstdio>
#include <ostream>

#include <nlohmann/json.hpp>

#include "qnlp/error.h"

namespace qnlp::train {

void TrainConfig::validate() const {
  if (batch_size == 0) fail(ErrorCode::kInvalidConfig, "batch size must be positive");
  if (!(learning_rate > 0.0)) fail(ErrorCode::kInvalidConfig, "learning rate must be positive");
  if (early_stop_patience && *early_stop_patience == 0) {
    fail(ErrorCode::kInvalidConfig, "early-stop patience must be positive");
  }
}

nlohmann::json to_json(const Metrics& m) {
  return {{"loss", m.loss},           {"accuracy", m.accuracy}, {"confusion", m.confusion},
          {"degenerate", m.degenerate}, {"n", m.n}};
}

nlohmann::json to_json(const EpochRecord& r) {
  return {{"epoch", r.epoch},         {"train_loss", r.train_loss}, {"val_loss", r.val_loss},
          {"train_acc", r.train_acc}, {"val_acc", r.val_acc},       {"wallclock_s", r.wallclock_s}};
}

std::string curve_row(const EpochRecord& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%.6f", r.epoch, r.train_loss,
                r.val_loss, r.train_acc, r.val_acc, r.wallclock_s);
  return buf;
}

CurveWriter::CurveWriter(const std::filesystem::path& path) : path_(path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) fail(ErrorCode::kIoError, "cannot write " + path.string());
  out_ << kCurveHeader << '\n' << std::flush;
}

void CurveWriter::append(const EpochRecord& r) {
  out_ << curve_row(r) << '\n' << std::flush;
  if (!out_) fail(ErrorCode::kIoError, "write failed for " + path_.string());
}

void write_curve_csv(std::span<const EpochRecord> records, std::ostream& out) {
  out << kCurveHeader << '\n';
  for (const auto& r : records) out << curve_row(r) << '\n';
}

}  // namespace qnlp::train
