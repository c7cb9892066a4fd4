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

#include "qnlp/train/pipeline.h"

#include <fstream>
#include <memory>
#include <sstream>

#include "qnlp/error.h"
#include "qnlp/rng.h"
#include "qnlp/train/models.h"
#include "qnlp/train/trainer.h"

namespace qnlp::train {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "qnlp-checkpoint";

// Independent streams derived from the run seed.
constexpr std::uint64_t kSplitStream = 1;
constexpr std::uint64_t kInitStream = 2;
constexpr std::uint64_t kShuffleStream = 3;

json ansatz_to_json(const discocat::AnsatzConfig& a) {
  json j = json::object();
  for (const auto& [atom, q] : a.qubits_per_atom) j[std::string(grammar::to_string(atom))] = q;
  return j;
}

discocat::AnsatzConfig ansatz_from_json(const json& j) {
  discocat::AnsatzConfig a;
  a.qubits_per_atom.clear();
  for (const auto& [name, q] : j.items()) {
    if (name == "n") {
      a.qubits_per_atom[grammar::Atom::kNoun] = q.get<int>();
    } else if (name == "s") {
      a.qubits_per_atom[grammar::Atom::kSentence] = q.get<int>();
    } else {
      fail(ErrorCode::kFormatError, "unknown atom '" + name + "' in ansatz");
    }
  }
  return a;
}

json lexicon_to_json(const grammar::Lexicon& lex) {
  json j = json::array();
  for (const auto& [word, type] : lex.entries()) j.push_back({word, grammar::to_string(type)});
  return j;
}

grammar::Lexicon lexicon_from_json(const json& j) {
  grammar::Lexicon lex;
  for (const auto& e : j) lex.add(e.at(0).get<std::string>(), grammar::parse_type(e.at(1).get<std::string>()));
  return lex;
}

template <class T>
std::vector<T> pick(const std::vector<T>& items, const std::vector<std::size_t>& idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(items[i]);
  return out;
}

json base_checkpoint(const PipelineConfig& config) {
  return {{"format", kFormat},
          {"version", kCheckpointVersion},
          {"kind", to_string(config.kind)},
          {"config", to_json(config)}};
}

template <class Model>
TrainResult fit_token_model(Model model, const data::Dataset& dataset, const PipelineConfig& config,
                            const SplitIndices& idx, const data::Vocab& vocab, DataSummary summary) {
  const auto examples = encode(dataset, vocab);
  const auto train = pick(examples, idx.train);
  const auto val = pick(examples, idx.val);
  const auto test = pick(examples, idx.test);

  TrainConfig tc = config.train;
  tc.seed = Rng::derive(config.train.seed, kShuffleStream);
  std::unique_ptr<CurveWriter> curve;
  if (config.curve_csv) curve = std::make_unique<CurveWriter>(*config.curve_csv);

  TrainResult result;
  result.records = fit(model, std::span<const TokenExample>(train), std::span<const TokenExample>(val), tc,
                       [&](const EpochRecord& r) {
                         if (curve) curve->append(r);
                       });
  if (!test.empty()) result.test = evaluate(model, std::span<const TokenExample>(test), tc.threads);
  result.data = summary;
  result.checkpoint = base_checkpoint(config);
  result.checkpoint["vocab"] = vocab.tokens();
  result.checkpoint["model"] = model.net().to_json();
  result.checkpoint["data"] = to_json(summary);
  return result;
}

TrainResult train_discocat(const data::Dataset& input, const PipelineConfig& config) {
  DataSummary summary;
  summary.input = input.size();
  const data::Dataset binary = data::binarize(input);
  if (!input.binary) summary.dropped_neutral = input.size() - binary.size();

  std::vector<CircuitExample> examples;
  for (const auto& s : binary.sentences) {
    try {
      auto compiled = std::make_shared<const discocat::CompiledSentence>(
          discocat::compile_tokens(s.tokens, config.lexicon, config.ansatz, config.bend));
      examples.push_back({std::move(compiled), s.label});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUnknownWord && e.code() != ErrorCode::kNotASentence) throw;
      ++summary.unparseable;
    }
  }
  const SplitIndices idx = split_indices(examples.size(), config.split,
                                         Rng::derive(config.train.seed, kSplitStream));
  summary.train = idx.train.size();
  summary.val = idx.val.size();
  summary.test = idx.test.size();

  qsim::ParamStore params;
  Rng init(Rng::derive(config.train.seed, kInitStream));
  for (const auto& ex : examples) discocat::init_params(*ex.circuit, params, init);
  DiscocatModel model(std::move(params));

  const auto train = pick(examples, idx.train);
  const auto val = pick(examples, idx.val);
  const auto test = pick(examples, idx.test);
  TrainConfig tc = config.train;
  tc.seed = Rng::derive(config.train.seed, kShuffleStream);
  std::unique_ptr<CurveWriter> curve;
  if (config.curve_csv) curve = std::make_unique<CurveWriter>(*config.curve_csv);

  TrainResult result;
  result.records = fit(model, std::span<const CircuitExample>(train), std::span<const CircuitExample>(val),
                       tc, [&](const EpochRecord& r) {
                         if (curve) curve->append(r);
                       });
  if (!test.empty()) result.test = evaluate(model, std::span<const CircuitExample>(test), tc.threads);
  result.data = summary;
  result.checkpoint = base_checkpoint(config);
  json p = json::array();
  const auto& names = model.params().names();
  const auto values = model.params().values();
  for (std::size_t k = 0; k < names.size(); ++k) p.push_back({names[k], values[k]});
  result.checkpoint["params"] = std::move(p);
  result.checkpoint["ansatz"] = ansatz_to_json(config.ansatz);
  result.checkpoint["bend"] = config.bend;
  result.checkpoint["lexicon"] = lexicon_to_json(config.lexicon);
  result.checkpoint["data"] = to_json(summary);
  return result;
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kLstm: return "lstm";
    case ModelKind::kQlstm: return "qlstm";
    case ModelKind::kDiscocat: return "discocat";
  }
  return "unknown";
}

std::optional<ModelKind> model_kind_from_string(std::string_view name) {
  if (name == "lstm") return ModelKind::kLstm;
  if (name == "qlstm") return ModelKind::kQlstm;
  if (name == "discocat") return ModelKind::kDiscocat;
  return std::nullopt;
}

PipelineConfig default_pipeline_config(ModelKind kind, data::Complexity complexity) {
  PipelineConfig c;
  c.kind = kind;
  c.train.learning_rate = kind == ModelKind::kLstm ? 0.005 : 0.01;
  const bool moderate = complexity == data::Complexity::kModerate;
  c.lstm.embed_dim = moderate ? 10 : 5;
  c.lstm.fc = moderate ? 16 : 8;
  c.lstm.dropout = moderate ? 0.1 : 0.0;
  c.qlstm.embed_dim = moderate ? 10 : 5;
  return c;
}

json to_json(const PipelineConfig& c) {
  json j = {{"kind", to_string(c.kind)},
            {"epochs", c.train.epochs},
            {"batch_size", c.train.batch_size},
            {"learning_rate", c.train.learning_rate},
            {"seed", c.train.seed},
            {"threads", c.train.threads},
            {"split", c.split},
            {"min_count", c.min_count}};
  j["early_stop_patience"] = c.train.early_stop_patience ? json(*c.train.early_stop_patience) : json(nullptr);
  switch (c.kind) {
    case ModelKind::kLstm: j["model"] = qlstm::to_json(c.lstm); break;
    case ModelKind::kQlstm: j["model"] = qlstm::to_json(c.qlstm); break;
    case ModelKind::kDiscocat:
      j["model"] = {{"ansatz", ansatz_to_json(c.ansatz)}, {"bend", c.bend}, {"lexicon_size", c.lexicon.size()}};
      break;
  }
  return j;
}

json to_json(const DataSummary& s) {
  return {{"input", s.input}, {"dropped_neutral", s.dropped_neutral}, {"unparseable", s.unparseable},
          {"train", s.train}, {"val", s.val},                         {"test", s.test}};
}

TrainResult train_model(const data::Dataset& dataset, const PipelineConfig& config) {
  config.train.validate();
  if (config.kind == ModelKind::kDiscocat) return train_discocat(dataset, config);

  if (dataset.binary) {
    fail(ErrorCode::kInvalidConfig, "sequence models expect the three-class dataset");
  }
  DataSummary summary;
  summary.input = dataset.size();
  const SplitIndices idx = split_indices(dataset.size(), config.split,
                                         Rng::derive(config.train.seed, kSplitStream));
  summary.train = idx.train.size();
  summary.val = idx.val.size();
  summary.test = idx.test.size();
  const auto train_sentences = pick(dataset.sentences, idx.train);
  const data::Vocab vocab = data::build_vocab(train_sentences, config.min_count);
  const std::uint64_t init_seed = Rng::derive(config.train.seed, kInitStream);

  if (config.kind == ModelKind::kLstm) {
    qlstm::LstmConfig lc = config.lstm;
    lc.vocab_size = vocab.size();
    lc.n_classes = dataset.num_classes();
    return fit_token_model(LstmModel(qlstm::Lstm(lc, init_seed)), dataset, config, idx, vocab, summary);
  }
  qlstm::QlstmConfig qc = config.qlstm;
  qc.vocab_size = vocab.size();
  qc.n_classes = dataset.num_classes();
  return fit_token_model(QlstmModel(qlstm::Qlstm(qc, init_seed)), dataset, config, idx, vocab, summary);
}

CheckpointEval evaluate_checkpoint(const json& checkpoint, const data::Dataset& dataset,
                                   unsigned threads) {
  try {
    if (checkpoint.at("format") != kFormat) fail(ErrorCode::kFormatError, "not a qnlp checkpoint");
    const int version = checkpoint.at("version").get<int>();
    if (version != kCheckpointVersion) {
      fail(ErrorCode::kFormatError, "unsupported checkpoint version " + std::to_string(version));
    }
    const auto kind = model_kind_from_string(checkpoint.at("kind").get<std::string>());
    if (!kind) fail(ErrorCode::kFormatError, "unknown model kind");

    CheckpointEval out;
    if (*kind == ModelKind::kDiscocat) {
      qsim::ParamStore params;
      for (const auto& e : checkpoint.at("params")) params.set(e.at(0).get<std::string>(), e.at(1).get<double>());
      const auto ansatz = ansatz_from_json(checkpoint.at("ansatz"));
      const bool bend = checkpoint.at("bend").get<bool>();
      const auto lexicon = lexicon_from_json(checkpoint.at("lexicon"));
      const data::Dataset binary = data::binarize(dataset);
      std::vector<CircuitExample> examples;
      for (const auto& s : binary.sentences) {
        try {
          auto compiled = std::make_shared<const discocat::CompiledSentence>(
              discocat::compile_tokens(s.tokens, lexicon, ansatz, bend));
          bool known = true;
          for (const auto& name : compiled->param_names) known = known && params.contains(name);
          if (!known) {
            ++out.skipped;
            continue;
          }
          examples.push_back({std::move(compiled), s.label});
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kUnknownWord && e.code() != ErrorCode::kNotASentence) throw;
          ++out.skipped;
        }
      }
      DiscocatModel model(std::move(params));
      out.metrics = evaluate(model, std::span<const CircuitExample>(examples), threads);
      return out;
    }

    if (dataset.binary) fail(ErrorCode::kInvalidConfig, "sequence models expect the three-class dataset");
    const data::Vocab vocab(checkpoint.at("vocab").get<std::vector<std::string>>());
    const auto examples = encode(dataset, vocab);
    if (*kind == ModelKind::kLstm) {
      const LstmModel model(qlstm::Lstm::from_json(checkpoint.at("model")));
      out.metrics = evaluate(model, std::span<const TokenExample>(examples), threads);
    } else {
      const QlstmModel model(qlstm::Qlstm::from_json(checkpoint.at("model")));
      out.metrics = evaluate(model, std::span<const TokenExample>(examples), threads);
    }
    return out;
  } catch (const json::exception& e) {
    fail(ErrorCode::kFormatError, std::string("malformed checkpoint: ") + e.what());
  }
}

void save_checkpoint(const json& checkpoint, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIoError, "cannot write " + path.string());
  out << checkpoint.dump(1) << '\n';
  if (!out) fail(ErrorCode::kIoError, "write failed for " + path.string());
}

json load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kFormatError, path.string() + ": " + e.what());
  }
}

}  // namespace qnlp::train
