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
#include <filesystem>
#include <set>
#include <sstream>

#include "oracle.h"
#include "qnlp/data/dataset.h"
#include "qnlp/data/generator.h"
#include "qnlp/grammar/lexicon.h"
#include "qnlp/grammar/reduce.h"

namespace qnlp::data {
namespace {

using testing::error_code_of;

Dataset parse(const std::string& text, LoadReport* report = nullptr) {
  std::istringstream in(text);
  return parse_jsonl(in, report);
}

TEST(LoadJsonl, ParsesRecord) {
  const Dataset d = parse(R"({"text":"Apple reports record profits","label":2})" "\n");
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.sentences[0].tokens.size(), 4u);
  EXPECT_EQ(d.sentences[0].label, kPositive);
  EXPECT_FALSE(d.binary);
}

TEST(LoadJsonl, EmptyInputHasNoRecords) {
  EXPECT_EQ(error_code_of([] { parse(""); }), ErrorCode::kAllRecordsInvalid);
  EXPECT_EQ(error_code_of([] { parse("\n  \n"); }), ErrorCode::kAllRecordsInvalid);
}

TEST(LoadJsonl, MalformedAndEmptyRecordsAreReported) {
  LoadReport report;
  const Dataset d = parse(
      "{\"text\":\"Stocks soar\",\"label\":2}\n"
      "{\"text\":\"Stocks crash\",\"label\":7}\n"
      "not json\n"
      "{\"text\":\"...\",\"label\":1}\n"
      "{\"label\":1}\n",
      &report);
  EXPECT_EQ(d.size(), 1u);
  EXPECT_EQ(report.loaded, 1u);
  ASSERT_EQ(report.malformed.size(), 3u);
  EXPECT_EQ(report.malformed[0].line, 2u);
  EXPECT_EQ(report.malformed[1].line, 3u);
  EXPECT_EQ(report.malformed[2].line, 5u);
  ASSERT_EQ(report.empty.size(), 1u);
  EXPECT_EQ(report.empty[0].line, 4u);
}

TEST(LoadJsonl, MissingFileIsIoError) {
  EXPECT_EQ(error_code_of([] { load_jsonl("/nonexistent/data.jsonl"); }), ErrorCode::kIoError);
}

TEST(LoadJsonl, SaveLoadRoundTrip) {
  GenConfig cfg;
  cfg.n_sentences = 60;
  cfg.seed = 3;
  for (const Dataset& d : {generate_synthetic(cfg), binarize(generate_synthetic(cfg))}) {
    const auto path = std::filesystem::temp_directory_path() / "qnlp_data_test.jsonl";
    save_jsonl(d, path);
    const Dataset back = load_jsonl(path);
    std::filesystem::remove(path);
    EXPECT_EQ(back.binary, d.binary);
    EXPECT_EQ(back.sentences, d.sentences);
  }
}

TEST(Stats, HandCountable) {
  Dataset d;
  d.sentences = {make_sentence("a b c", 0), make_sentence("d e f g", 1),
                 make_sentence("h i j k l", 2)};
  const auto s = stats(d);
  for (double share : s.class_shares) EXPECT_NEAR(share, 1.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(s.mean_word_count, 4.0);
  EXPECT_EQ(s.vocab_size, 12u);

  Dataset twice = d;
  twice.sentences.insert(twice.sentences.end(), d.sentences.begin(), d.sentences.end());
  const auto s2 = stats(twice);
  EXPECT_EQ(s2.class_shares, s.class_shares);
  EXPECT_DOUBLE_EQ(s2.mean_word_count, s.mean_word_count);
  EXPECT_EQ(s2.vocab_size, s.vocab_size);
  EXPECT_EQ(s2.n_sentences, 6u);
}

TEST(Stats, EmptyDataset) {
  EXPECT_EQ(error_code_of([] { stats(Dataset{}); }), ErrorCode::kEmptyDataset);
}

TEST(Binarize, DropsNeutralAndRemaps) {
  Dataset d;
  for (int k = 0; k < 34; ++k) d.sentences.push_back(make_sentence("down", kNegative));
  for (int k = 0; k < 18; ++k) d.sentences.push_back(make_sentence("flat", kNeutral));
  for (int k = 0; k < 48; ++k) d.sentences.push_back(make_sentence("up", kPositive));
  const Dataset b = binarize(d);
  EXPECT_TRUE(b.binary);
  EXPECT_EQ(b.size(), 82u);
  const auto s = stats(b);
  ASSERT_EQ(s.class_shares.size(), 2u);
  EXPECT_NEAR(s.class_shares[0], 34.0 / 82.0, 1e-15);
  EXPECT_NEAR(s.class_shares[1], 48.0 / 82.0, 1e-15);
  for (const auto& x : b.sentences) EXPECT_EQ(x.original_label, x.label == 0 ? kNegative : kPositive);
  const Dataset bb = binarize(b);
  EXPECT_EQ(bb.sentences, b.sentences);
  EXPECT_TRUE(bb.binary);
}

TEST(Binarize, AllNeutralGivesEmpty) {
  Dataset d;
  d.sentences = {make_sentence("flat", kNeutral), make_sentence("calm", kNeutral)};
  EXPECT_TRUE(binarize(d).empty());
}

TEST(Binarize, SharesAreRenormalizedOriginals) {
  GenConfig cfg;
  cfg.n_sentences = 500;
  cfg.seed = 4;
  const Dataset d = generate_synthetic(cfg);
  const auto s = stats(d);
  const auto b = stats(binarize(d));
  const double kept = s.class_shares[0] + s.class_shares[2];
  EXPECT_NEAR(b.class_shares[0], s.class_shares[0] / kept, 1e-9);
  EXPECT_NEAR(b.class_shares[1], s.class_shares[2] / kept, 1e-9);
}

TEST(Vocab, FrequencyThenLexicographic) {
  Dataset d;
  d.sentences = {make_sentence("b a c", 0), make_sentence("a b", 0), make_sentence("b a", 0)};
  const Vocab v = build_vocab(d.sentences, 2);
  EXPECT_EQ(v.id("a"), 1);
  EXPECT_EQ(v.id("b"), 2);
  EXPECT_EQ(v.id("c"), Vocab::kUnk);
  EXPECT_EQ(v.id("never"), Vocab::kUnk);
  EXPECT_EQ(v.size(), 3u);
  const std::vector<std::string> tokens{"a", "zzz", "b"};
  EXPECT_EQ(v.encode(tokens), (std::vector<int>{1, 0, 2}));
  EXPECT_EQ(build_vocab(d.sentences, 2).tokens(), v.tokens());
  EXPECT_EQ(error_code_of([] { build_vocab(std::vector<Sentence>{}); }), ErrorCode::kEmptyDataset);
}

TEST(Generator, SharesWithinThreePoints) {
  GenConfig cfg;
  cfg.n_sentences = 1000;
  cfg.seed = 1;
  const auto s = stats(generate_synthetic(cfg));
  EXPECT_NEAR(s.class_shares[0], 0.34, 0.03);
  EXPECT_NEAR(s.class_shares[1], 0.18, 0.03);
  EXPECT_NEAR(s.class_shares[2], 0.48, 0.03);
}

TEST(Generator, ZeroSentences) {
  GenConfig cfg;
  cfg.n_sentences = 0;
  EXPECT_TRUE(generate_synthetic(cfg).empty());
}

TEST(Generator, Deterministic) {
  GenConfig cfg;
  cfg.n_sentences = 200;
  cfg.seed = 77;
  std::ostringstream a, b;
  write_jsonl(generate_synthetic(cfg), a);
  write_jsonl(generate_synthetic(cfg), b);
  EXPECT_EQ(a.str(), b.str());
  cfg.seed = 78;
  std::ostringstream c;
  write_jsonl(generate_synthetic(cfg), c);
  EXPECT_NE(a.str(), c.str());
}

TEST(Generator, LowComplexityIsShortAndParseable) {
  GenConfig cfg;
  cfg.n_sentences = 500;
  cfg.seed = 5;
  const auto lex = finance_lexicon();
  for (const auto& s : generate_synthetic(cfg).sentences) {
    EXPECT_LE(s.tokens.size(), 5u) << s.text;
    try {
      EXPECT_EQ(testing::check_derivation(grammar::reduce(grammar::assign_types(s.tokens, lex))), "");
    } catch (const Error& e) {
      ADD_FAILURE() << s.text << ": " << e.what();
    }
  }
}

TEST(Generator, ModerateComplexityIsLonger) {
  GenConfig cfg;
  cfg.n_sentences = 300;
  cfg.complexity = Complexity::kModerate;
  cfg.target_shares = reference_shares(Complexity::kModerate);
  const auto s = stats(generate_synthetic(cfg));
  EXPECT_GT(s.mean_word_count, 12.0);
  EXPECT_NEAR(s.class_shares[1], cfg.target_shares[1], 0.03);
}

TEST(Generator, InvalidShares) {
  GenConfig cfg;
  cfg.target_shares = {0.5, 0.5, 0.5};
  EXPECT_EQ(error_code_of([&] { generate_synthetic(cfg); }), ErrorCode::kInvalidConfig);
  cfg.target_shares = {-0.1, 0.6, 0.5};
  EXPECT_EQ(error_code_of([&] { cfg.validate(); }), ErrorCode::kInvalidConfig);
}

TEST(Generator, ComplexityNames) {
  EXPECT_EQ(complexity_from_string("low"), Complexity::kLow);
  EXPECT_EQ(complexity_from_string("moderate"), Complexity::kModerate);
  EXPECT_FALSE(complexity_from_string("high").has_value());
  EXPECT_EQ(to_string(Complexity::kModerate), "moderate");
}

}  // namespace
}  // namespace qnlp::data
