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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "oracle.h"
#include "qnlp/data/generator.h"
#include "qnlp/train/adam.h"
#include "qnlp/train/loss.h"
#include "qnlp/train/metrics.h"
#include "qnlp/train/models.h"
#include "qnlp/train/pipeline.h"
#include "qnlp/train/split.h"
#include "qnlp/train/trainer.h"

namespace qnlp::train {
namespace {

using testing::error_code_of;

struct LabelOnly {
  int id = 0;
  int label = 0;
};

// Predicts one fixed class.
class ConstantModel {
 public:
  using Example = LabelOnly;
  explicit ConstantModel(int cls) : cls_(cls) {}
  std::span<double> parameters() { return {}; }
  int num_classes() const { return 3; }
  Prediction evaluate(const Example& ex) const { return {ex.label == cls_ ? 0.0 : 1.0, cls_, false}; }
  double accumulate_gradient(const Example&, std::span<double>, Rng&) const { return 0.0; }

 private:
  int cls_;
};

// Recalls the label stored for each example id.
class MemorizingModel {
 public:
  using Example = LabelOnly;
  explicit MemorizingModel(std::vector<int> labels) : labels_(std::move(labels)) {}
  std::span<double> parameters() { return {}; }
  int num_classes() const { return 3; }
  Prediction evaluate(const Example& ex) const {
    return {0.0, labels_[static_cast<std::size_t>(ex.id)], false};
  }
  double accumulate_gradient(const Example&, std::span<double>, Rng&) const { return 0.0; }

 private:
  std::vector<int> labels_;
};

// Three free logits shared by every example.
class LogitModel {
 public:
  using Example = LabelOnly;
  LogitModel() : logits_(3, 0.0) {}
  std::span<double> parameters() { return logits_; }
  int num_classes() const { return 3; }
  Prediction evaluate(const Example& ex) const { return predict_from_logits(logits_, ex.label); }
  double accumulate_gradient(const Example& ex, std::span<double> grad, Rng&) const {
    const auto g = categorical_cross_entropy_grad(logits_, ex.label);
    for (std::size_t k = 0; k < 3; ++k) grad[k] += g[k];
    return categorical_cross_entropy(logits_, ex.label);
  }

 private:
  std::vector<double> logits_;
};

static_assert(Trainable<ConstantModel>);
static_assert(Trainable<LogitModel>);

std::vector<LabelOnly> labelled(const std::vector<int>& labels) {
  std::vector<LabelOnly> out;
  for (std::size_t k = 0; k < labels.size(); ++k) out.push_back({static_cast<int>(k), labels[k]});
  return out;
}

TEST(Loss, BinaryCrossEntropy) {
  EXPECT_NEAR(binary_cross_entropy(0.5, 1), std::log(2.0), 1e-15);
  EXPECT_NEAR(binary_cross_entropy(0.0, 1), -std::log(kProbabilityClamp), 1e-9);
  EXPECT_NEAR(binary_cross_entropy(0.2, 0), -std::log(0.8), 1e-15);
  EXPECT_EQ(binary_cross_entropy_grad(0.0, 1), 0.0);
  const double fd = testing::central_difference([](double p) { return binary_cross_entropy(p, 1); }, 0.3, 1e-6);
  EXPECT_NEAR(binary_cross_entropy_grad(0.3, 1), fd, 1e-8);
  EXPECT_EQ(error_code_of([] { binary_cross_entropy(0.5, 2); }), ErrorCode::kInvalidLabel);
}

TEST(Loss, CategoricalCrossEntropy) {
  const std::vector<double> equal{0.3, 0.3, 0.3};
  EXPECT_NEAR(categorical_cross_entropy(equal, 1), std::log(3.0), 1e-15);
  const std::vector<double> big{1000.0, 0.0, -1000.0};
  EXPECT_NEAR(categorical_cross_entropy(big, 0), 0.0, 1e-12);
  EXPECT_TRUE(std::isfinite(categorical_cross_entropy(big, 2)));
  EXPECT_EQ(error_code_of([&] { categorical_cross_entropy(equal, 3); }), ErrorCode::kInvalidLabel);
  EXPECT_EQ(error_code_of([&] { categorical_cross_entropy(equal, -1); }), ErrorCode::kInvalidLabel);
}

TEST(Loss, CategoricalGradientIsSoftmaxMinusOneHot) {
  Rng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> z{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const int label = static_cast<int>(rng.index(3));
    const auto g = categorical_cross_entropy_grad(z, label);
    const auto p = softmax(z);
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_NEAR(g[k], p[k] - (static_cast<int>(k) == label ? 1.0 : 0.0), 1e-15);
      const double fd = testing::central_difference(
          [&](double v) {
            auto zz = z;
            zz[k] = v;
            return categorical_cross_entropy(zz, label);
          },
          z[k], 1e-5);
      EXPECT_NEAR(g[k], fd, 1e-8);
    }
  }
}

TEST(Adam, ZeroGradientLeavesParameters) {
  AdamState s(2);
  std::vector<double> p{1.0, -2.0};
  for (int k = 0; k < 5; ++k) adam_step(s, p, std::vector<double>{0.0, 0.0}, 0.01);
  EXPECT_EQ(p, (std::vector<double>{1.0, -2.0}));
}

TEST(Adam, FirstStepIsLearningRateTimesSign) {
  AdamState s(2);
  std::vector<double> p{0.0, 0.0};
  adam_step(s, p, std::vector<double>{0.5, -2.0}, 0.01);
  // m_hat = g and v_hat = g^2 after bias correction.
  EXPECT_NEAR(p[0], -0.01 * 0.5 / (0.5 + 1e-8), 1e-15);
  EXPECT_NEAR(p[1], 0.01 * 2.0 / (2.0 + 1e-8), 1e-15);
  EXPECT_EQ(s.t, 1u);
}

TEST(Adam, ConstantGradientStepApproachesLearningRate) {
  AdamState s(1);
  std::vector<double> p{0.0};
  double prev = 0.0, step = 0.0;
  for (int k = 0; k < 1000; ++k) {
    adam_step(s, p, std::vector<double>{0.3}, 0.01);
    step = p[0] - prev;
    prev = p[0];
  }
  EXPECT_NEAR(step, -0.01, 1e-9);
}

TEST(Adam, RejectsNonFiniteBeforeUpdating) {
  AdamState s(2);
  std::vector<double> p{1.0, 1.0};
  EXPECT_EQ(error_code_of([&] { adam_step(s, p, std::vector<double>{0.1, NAN}, 0.01); }),
            ErrorCode::kNonFiniteGradient);
  EXPECT_EQ(error_code_of([&] { adam_step(s, p, std::vector<double>{INFINITY, 0.0}, 0.01); }),
            ErrorCode::kNonFiniteGradient);
  EXPECT_EQ(p, (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(s.t, 0u);
  EXPECT_EQ(error_code_of([&] { adam_step(s, p, std::vector<double>{0.1}, 0.01); }),
            ErrorCode::kDimensionMismatch);
}

TEST(Adam, ConvexLogitProblemConverges) {
  AdamState s(3);
  std::vector<double> z(3, 0.0);
  for (int k = 0; k < 500; ++k) adam_step(s, z, categorical_cross_entropy_grad(z, 1), 0.1);
  EXPECT_LT(categorical_cross_entropy(z, 1), 1e-3);
}

TEST(Split, ThousandItemsEightyTenTen) {
  const SplitIndices s = split_indices(1000, kDefaultSplit, 3);
  EXPECT_EQ(s.train.size(), 800u);
  EXPECT_EQ(s.val.size(), 100u);
  EXPECT_EQ(s.test.size(), 100u);
  const SplitIndices again = split_indices(1000, kDefaultSplit, 3);
  EXPECT_EQ(again.train, s.train);
  EXPECT_EQ(again.test, s.test);
  EXPECT_NE(split_indices(1000, kDefaultSplit, 4).train, s.train);
}

TEST(Split, PartitionForAllSizes) {
  for (std::size_t n = 10; n <= 300; n += 7) {
    const SplitIndices s = split_indices(n, kDefaultSplit, n);
    std::multiset<std::size_t> all(s.train.begin(), s.train.end());
    all.insert(s.val.begin(), s.val.end());
    all.insert(s.test.begin(), s.test.end());
    EXPECT_EQ(all.size(), n);
    EXPECT_EQ(std::set<std::size_t>(all.begin(), all.end()).size(), n);
    EXPECT_EQ(*all.rbegin(), n - 1);
  }
}

TEST(Split, Errors) {
  EXPECT_EQ(error_code_of([] { split_indices(9, kDefaultSplit, 0); }), ErrorCode::kTooSmall);
  EXPECT_EQ(error_code_of([] { split_indices(100, {0.5, 0.5, 0.5}, 0); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(error_code_of([] { split_indices(100, {1.0, 0.0, 0.0}, 0); }), ErrorCode::kInvalidConfig);
}

TEST(Split, DatasetSplitKeepsSentences) {
  data::GenConfig cfg;
  cfg.n_sentences = 50;
  const data::Dataset d = data::generate_synthetic(cfg);
  const Splits s = split_dataset(d, kDefaultSplit, 1);
  EXPECT_EQ(s.train.size() + s.val.size() + s.test.size(), 50u);
  std::multiset<std::string> texts, back;
  for (const auto& x : d.sentences) texts.insert(x.text);
  for (const auto* part : {&s.train, &s.val, &s.test}) {
    for (const auto& x : part->sentences) back.insert(x.text);
  }
  EXPECT_EQ(texts, back);
}

TEST(Evaluate, ConstantPredictorAccuracyIsClassShare) {
  std::vector<int> labels;
  for (int k = 0; k < 34; ++k) labels.push_back(0);
  for (int k = 0; k < 18; ++k) labels.push_back(1);
  for (int k = 0; k < 48; ++k) labels.push_back(2);
  const auto ex = labelled(labels);
  const Metrics m = evaluate(ConstantModel(2), std::span<const LabelOnly>(ex));
  EXPECT_DOUBLE_EQ(m.accuracy, 0.48);
  EXPECT_EQ(m.n, 100u);
  const std::size_t counts[] = {34, 18, 48};
  for (std::size_t r = 0; r < 3; ++r) {
    std::size_t row = 0;
    for (std::size_t c = 0; c < 3; ++c) row += m.confusion[r][c];
    EXPECT_EQ(row, counts[r]);
    EXPECT_EQ(m.confusion[r][2], counts[r]);
  }
}

TEST(Evaluate, MemorizerIsPerfectAndOrderInvariant) {
  Rng rng(72);
  std::vector<int> labels(60);
  for (int& l : labels) l = static_cast<int>(rng.index(3));
  auto ex = labelled(labels);
  const MemorizingModel model(labels);
  EXPECT_DOUBLE_EQ(evaluate(model, std::span<const LabelOnly>(ex)).accuracy, 1.0);

  const ConstantModel constant(1);
  const double before = evaluate(constant, std::span<const LabelOnly>(ex)).accuracy;
  rng.shuffle(std::span<LabelOnly>(ex));
  EXPECT_EQ(evaluate(constant, std::span<const LabelOnly>(ex), 3).accuracy, before);
}

TEST(Evaluate, EmptySplit) {
  EXPECT_EQ(error_code_of([] { evaluate(ConstantModel(0), std::span<const LabelOnly>{}); }),
            ErrorCode::kEmptySplit);
}

TEST(Fit, LearnsMajorityClassAndRecordsEpochs) {
  std::vector<int> labels(40, 2);
  for (int k = 0; k < 10; ++k) labels[static_cast<std::size_t>(k)] = 0;
  const auto ex = labelled(labels);
  LogitModel model;
  TrainConfig cfg;
  cfg.epochs = 60;
  cfg.batch_size = 8;
  cfg.learning_rate = 0.05;
  std::vector<EpochRecord> seen;
  const auto records = fit(model, std::span<const LabelOnly>(ex), std::span<const LabelOnly>(ex), cfg,
                           [&](const EpochRecord& r) { seen.push_back(r); });
  ASSERT_EQ(records.size(), 60u);
  EXPECT_EQ(seen.size(), 60u);
  EXPECT_EQ(records.front().epoch, 1u);
  EXPECT_LT(records.back().train_loss, records.front().train_loss);
  EXPECT_DOUBLE_EQ(records.back().train_acc, 0.75);
  for (std::size_t k = 1; k < records.size(); ++k) EXPECT_GE(records[k].wallclock_s, records[k - 1].wallclock_s);
  // The loss floor for a 25/75 split is its entropy.
  const double entropy = -(0.25 * std::log(0.25) + 0.75 * std::log(0.75));
  EXPECT_NEAR(records.back().train_loss, entropy, 1e-2);
}

TEST(Fit, ZeroEpochsIsNoOp) {
  const auto ex = labelled({0, 1, 2});
  LogitModel model;
  TrainConfig cfg;
  cfg.epochs = 0;
  EXPECT_TRUE(fit(model, std::span<const LabelOnly>(ex), std::span<const LabelOnly>{}, cfg).empty());
  EXPECT_EQ(model.parameters()[0], 0.0);
}

TEST(Fit, EarlyStopping) {
  const auto train_ex = labelled(std::vector<int>(20, 0));
  const auto val_ex = labelled(std::vector<int>(5, 1));
  LogitModel model;
  TrainConfig cfg;
  cfg.epochs = 50;
  cfg.early_stop_patience = 3;
  const auto records = fit(model, std::span<const LabelOnly>(train_ex), std::span<const LabelOnly>(val_ex), cfg);
  EXPECT_EQ(records.size(), 4u);
}

TEST(Fit, InvalidConfig) {
  TrainConfig cfg;
  cfg.batch_size = 0;
  EXPECT_EQ(error_code_of([&] { cfg.validate(); }), ErrorCode::kInvalidConfig);
  cfg.batch_size = 4;
  cfg.learning_rate = -1.0;
  EXPECT_EQ(error_code_of([&] { cfg.validate(); }), ErrorCode::kInvalidConfig);
}

TEST(Curve, CsvLayout) {
  EpochRecord r{3, 0.5, 0.25, 0.75, 1.0, 1.5};
  EXPECT_EQ(curve_row(r), "3,0.5,0.25,0.75,1,1.500000");
  std::ostringstream out;
  const std::vector<EpochRecord> rows{r};
  write_curve_csv(rows, out);
  EXPECT_EQ(out.str(), std::string(kCurveHeader) + "\n3,0.5,0.25,0.75,1,1.500000\n");

  const auto path = std::filesystem::temp_directory_path() / "qnlp_curve_test.csv";
  {
    CurveWriter writer(path);
    writer.append(r);
    std::ifstream in(path);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    EXPECT_EQ(header, kCurveHeader);
    EXPECT_EQ(row, curve_row(r));
  }
  std::filesystem::remove(path);
  EXPECT_EQ(error_code_of([] { CurveWriter("/dev/null/curve.csv"); }), ErrorCode::kIoError);
}

TEST(Models, PredictFromLogitsTiesGoLow) {
  const std::vector<double> z{1.0, 1.0, 0.0};
  const Prediction p = predict_from_logits(z, 1);
  EXPECT_EQ(p.predicted, 0);
  EXPECT_NEAR(p.loss, categorical_cross_entropy(z, 1), 1e-15);
}

TEST(Models, DiscocatDegenerateCountsAsWrong) {
  auto c = std::make_shared<discocat::CompiledSentence>();
  c->circuit = {2, {qsim::Gate::rx(0, M_PI)}};
  c->postselect = {{0, 0}};
  c->s_qubits = {1};
  const DiscocatModel model{qsim::ParamStore{}};
  const std::vector<CircuitExample> ex{{c, 0}, {c, 1}};
  const Metrics m = evaluate(model, std::span<const CircuitExample>(ex));
  EXPECT_EQ(m.degenerate, 2u);
  EXPECT_EQ(m.accuracy, 0.0);
  EXPECT_NEAR(m.loss, std::log(2.0), 1e-15);
}

data::Dataset small_corpus(std::size_t n, std::uint64_t seed) {
  data::GenConfig cfg;
  cfg.n_sentences = n;
  cfg.seed = seed;
  return data::generate_synthetic(cfg);
}

TEST(Pipeline, ZeroEpochsGivesUntrainedCheckpoint) {
  const data::Dataset d = small_corpus(40, 1);
  for (ModelKind kind : {ModelKind::kLstm, ModelKind::kQlstm, ModelKind::kDiscocat}) {
    PipelineConfig cfg = default_pipeline_config(kind);
    cfg.train.epochs = 0;
    const TrainResult r = train_model(d, cfg);
    EXPECT_TRUE(r.records.empty());
    EXPECT_EQ(r.checkpoint["format"], "qnlp-checkpoint");
    EXPECT_EQ(r.checkpoint["kind"], to_string(kind));
    EXPECT_EQ(r.data.input, 40u);
    EXPECT_EQ(r.data.train + r.data.val + r.data.test + r.data.unparseable + r.data.dropped_neutral, 40u);
  }
}

TEST(Pipeline, DiscocatDropsNeutralAndReportsIt) {
  const data::Dataset d = small_corpus(50, 2);
  std::size_t neutral = 0;
  for (const auto& s : d.sentences) neutral += s.label == data::kNeutral;
  PipelineConfig cfg = default_pipeline_config(ModelKind::kDiscocat);
  cfg.train.epochs = 0;
  const TrainResult r = train_model(d, cfg);
  EXPECT_EQ(r.data.dropped_neutral, neutral);
  EXPECT_EQ(r.data.unparseable, 0u);
}

TEST(Pipeline, SequenceModelsRejectBinaryData) {
  const data::Dataset d = data::binarize(small_corpus(40, 3));
  EXPECT_EQ(error_code_of([&] { train_model(d, default_pipeline_config(ModelKind::kLstm)); }),
            ErrorCode::kInvalidConfig);
}

TEST(Pipeline, ReproducibleAndCheckpointScoresTheSameModel) {
  const data::Dataset d = small_corpus(60, 4);
  const auto dir = std::filesystem::temp_directory_path();
  for (ModelKind kind : {ModelKind::kLstm, ModelKind::kQlstm, ModelKind::kDiscocat}) {
    PipelineConfig cfg = default_pipeline_config(kind);
    cfg.train.epochs = 2;
    cfg.train.seed = 9;
    const auto curve = dir / "qnlp_pipeline_curve.csv";
    cfg.curve_csv = curve;
    const TrainResult a = train_model(d, cfg);
    cfg.curve_csv.reset();
    cfg.train.threads = 2;
    const TrainResult b = train_model(d, cfg);
    ASSERT_EQ(a.records.size(), 2u);
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_EQ(a.records[k].train_loss, b.records[k].train_loss);
      EXPECT_EQ(a.records[k].val_acc, b.records[k].val_acc);
    }
    EXPECT_EQ(a.checkpoint.value("model", nlohmann::json()), b.checkpoint.value("model", nlohmann::json()));
    EXPECT_EQ(a.checkpoint.value("params", nlohmann::json()), b.checkpoint.value("params", nlohmann::json()));

    std::ifstream in(curve);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) ++lines;
    EXPECT_EQ(lines, 3u);
    std::filesystem::remove(curve);

    const auto path = dir / "qnlp_pipeline_checkpoint.json";
    save_checkpoint(a.checkpoint, path);
    const auto loaded = load_checkpoint(path);
    std::filesystem::remove(path);
    const CheckpointEval e1 = evaluate_checkpoint(loaded, d);
    const CheckpointEval e2 = evaluate_checkpoint(a.checkpoint, d, 2);
    EXPECT_EQ(e1.metrics.accuracy, e2.metrics.accuracy);
    EXPECT_EQ(e1.metrics.loss, e2.metrics.loss);
    EXPECT_EQ(e1.metrics.n + e1.skipped, kind == ModelKind::kDiscocat ? a.data.input - a.data.dropped_neutral
                                                                      : a.data.input);
  }
}

TEST(Pipeline, CheckpointSkipsUnseenWords) {
  const data::Dataset d = small_corpus(40, 5);
  PipelineConfig cfg = default_pipeline_config(ModelKind::kDiscocat);
  cfg.train.epochs = 0;
  const TrainResult r = train_model(d, cfg);
  data::Dataset other;
  other.sentences = {data::make_sentence("alice loves bob", data::kPositive),
                     data::make_sentence("banks banks banks", data::kNegative)};
  EXPECT_EQ(error_code_of([&] { evaluate_checkpoint(r.checkpoint, other); }), ErrorCode::kEmptySplit);
  data::Dataset mixed = other;
  mixed.sentences.push_back(d.sentences[0].label == data::kNeutral ? d.sentences[1] : d.sentences[0]);
  const CheckpointEval e = evaluate_checkpoint(r.checkpoint, mixed);
  EXPECT_EQ(e.skipped, 2u);
  EXPECT_EQ(e.metrics.n, 1u);
}

TEST(Pipeline, CheckpointFormatErrors) {
  const data::Dataset d = small_corpus(20, 6);
  EXPECT_EQ(error_code_of([&] { evaluate_checkpoint(nlohmann::json{{"format", "other"}}, d); }),
            ErrorCode::kFormatError);
  EXPECT_EQ(error_code_of([&] {
              evaluate_checkpoint(nlohmann::json{{"format", "qnlp-checkpoint"}, {"version", 99}, {"kind", "lstm"}}, d);
            }),
            ErrorCode::kFormatError);
  EXPECT_EQ(error_code_of([] { load_checkpoint("/nonexistent/ckpt.json"); }), ErrorCode::kIoError);
}

TEST(Pipeline, DefaultsAndNames) {
  EXPECT_EQ(default_pipeline_config(ModelKind::kLstm).train.learning_rate, 0.005);
  EXPECT_EQ(default_pipeline_config(ModelKind::kQlstm).train.learning_rate, 0.01);
  EXPECT_EQ(default_pipeline_config(ModelKind::kDiscocat).train.batch_size, 16u);
  const auto moderate = default_pipeline_config(ModelKind::kLstm, data::Complexity::kModerate);
  EXPECT_EQ(moderate.lstm.embed_dim, 10);
  EXPECT_EQ(moderate.lstm.fc, 16);
  EXPECT_EQ(moderate.lstm.dropout, 0.1);
  EXPECT_EQ(model_kind_from_string("qlstm"), ModelKind::kQlstm);
  EXPECT_FALSE(model_kind_from_string("gru").has_value());
}

}  // namespace
}  // namespace qnlp::train
