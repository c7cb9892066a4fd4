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

#include "qnlp/data/generator.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "qnlp/error.h"
#include "qnlp/rng.h"

namespace qnlp::data {

namespace {

enum class NounKind { kCommon, kMass, kProper };

struct Noun {
  const char* word;
  bool plural;
  NounKind kind;
};

struct Verb {
  const char* third;  // agrees with singular subjects
  const char* base;   // agrees with plural subjects
};

constexpr Noun kNouns[] = {
    {"stocks", true, NounKind::kCommon},      {"shares", true, NounKind::kCommon},
    {"markets", true, NounKind::kCommon},     {"investors", true, NounKind::kCommon},
    {"bonds", true, NounKind::kCommon},       {"profits", true, NounKind::kCommon},
    {"earnings", true, NounKind::kCommon},    {"sales", true, NounKind::kCommon},
    {"prices", true, NounKind::kCommon},      {"banks", true, NounKind::kCommon},
    {"traders", true, NounKind::kCommon},     {"analysts", true, NounKind::kCommon},
    {"exports", true, NounKind::kCommon},     {"dividends", true, NounKind::kCommon},
    {"yields", true, NounKind::kCommon},      {"wages", true, NounKind::kCommon},
    {"funds", true, NounKind::kCommon},       {"lenders", true, NounKind::kCommon},
    {"consumers", true, NounKind::kCommon},   {"estimates", true, NounKind::kCommon},
    {"forecasts", true, NounKind::kCommon},   {"economy", false, NounKind::kCommon},
    {"dollar", false, NounKind::kCommon},     {"index", false, NounKind::kCommon},
    {"sector", false, NounKind::kCommon},     {"company", false, NounKind::kCommon},
    {"currency", false, NounKind::kCommon},   {"outlook", false, NounKind::kCommon},
    {"inflation", false, NounKind::kMass},    {"unemployment", false, NounKind::kMass},
    {"gold", false, NounKind::kMass},         {"oil", false, NounKind::kMass},
    {"bitcoin", false, NounKind::kMass},      {"revenue", false, NounKind::kMass},
    {"growth", false, NounKind::kMass},       {"demand", false, NounKind::kMass},
    {"apple", false, NounKind::kProper},      {"tesla", false, NounKind::kProper},
    {"amazon", false, NounKind::kProper},     {"google", false, NounKind::kProper},
    {"microsoft", false, NounKind::kProper},  {"nvidia", false, NounKind::kProper},
    {"netflix", false, NounKind::kProper},    {"boeing", false, NounKind::kProper},
};

constexpr const char* kAdjectives[] = {
    "tech",    "global",   "quarterly", "major",    "local",      "european",
    "asian",   "retail",   "energy",    "annual",   "regional",   "corporate",
    "federal", "emerging", "record",    "industrial",
};

constexpr const char* kDeterminers[] = {"the"};

constexpr const char* kAdverbs[] = {"today",    "again",   "sharply", "overnight",
                                    "slightly", "quietly", "now",     "yesterday"};

// [label][lemma]. Kept small so each sentiment word recurs in desk-scale corpora.
constexpr Verb kTransitive[3][3] = {
    {{"hurts", "hurt"}, {"slashes", "slash"}, {"weakens", "weaken"}},
    {{"tracks", "track"}, {"reviews", "review"}, {"reports", "report"}},
    {{"boosts", "boost"}, {"lifts", "lift"}, {"strengthens", "strengthen"}},
};

constexpr Verb kIntransitive[3][3] = {
    {{"plunges", "plunge"}, {"slumps", "slump"}, {"crashes", "crash"}},
    {{"stabilizes", "stabilize"}, {"pauses", "pause"}, {"hovers", "hover"}},
    {{"soars", "soar"}, {"rallies", "rally"}, {"surges", "surge"}},
};

// Multi-clause material for moderate complexity.
constexpr const char* kLeadIns[] = {
    "according to several analysts",  "in a recent market report",
    "market observers say that",      "many economists now believe that",
    "investors were told today that", "a new industry survey suggests that",
};
constexpr const char* kConnectors[] = {"as", "while", "after", "because", "even though"};
constexpr const char* kTails[] = {
    "amid rising interest rates and persistent inflation concerns",
    "despite ongoing volatility in global financial markets",
    "following the latest round of quarterly earnings reports",
    "in the coming months according to the latest forecasts",
    "across most major stock exchanges in europe and asia",
    "ahead of the next central bank policy meeting",
    "for both retail investors and large institutional funds",
};

template <class T, std::size_t N>
const T& pick(Rng& rng, const T (&items)[N]) {
  return items[rng.index(N)];
}

const Noun& pick_noun(Rng& rng, bool allow_proper, bool need_det) {
  while (true) {
    const Noun& n = pick(rng, kNouns);
    if (need_det && n.kind != NounKind::kCommon) continue;
    if (!allow_proper && n.kind == NounKind::kProper) continue;
    return n;
  }
}

/// Noun phrase of exactly `len` words (1..3). Returns the head noun.
const Noun& noun_phrase(Rng& rng, int len, std::vector<std::string>& words) {
  if (len == 1) {
    const Noun& n = pick_noun(rng, true, false);
    words.emplace_back(n.word);
    return n;
  }
  if (len == 2) {
    const bool det = rng.uniform() < 0.35;
    const Noun& n = pick_noun(rng, false, det);
    words.emplace_back(det ? pick(rng, kDeterminers) : pick(rng, kAdjectives));
    words.emplace_back(n.word);
    return n;
  }
  const Noun& n = pick_noun(rng, false, true);
  words.emplace_back(pick(rng, kDeterminers));
  words.emplace_back(pick(rng, kAdjectives));
  words.emplace_back(n.word);
  return n;
}

struct Shape {
  int subject;
  bool transitive;
  int object;
  bool adverb;
  int weight;
};

// Every shape has at most five words; weights favour longer sentences.
constexpr Shape kShapes[] = {
    {1, false, 0, true, 1},  {2, false, 0, false, 1}, {1, true, 1, false, 1},
    {2, false, 0, true, 2},  {3, false, 0, false, 2}, {1, true, 2, false, 2},
    {2, true, 1, false, 2},  {1, true, 1, true, 2},   {3, false, 0, true, 3},
    {2, true, 2, false, 3},  {3, true, 1, false, 3},  {2, true, 1, true, 3},
    {1, true, 2, true, 3},
};

const Shape& pick_shape(Rng& rng) {
  int total = 0;
  for (const Shape& s : kShapes) total += s.weight;
  auto r = static_cast<int>(rng.index(static_cast<std::size_t>(total)));
  for (const Shape& s : kShapes) {
    if (r < s.weight) return s;
    r -= s.weight;
  }
  return kShapes[0];
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ' ';
    out += words[i];
  }
  return out;
}

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::string low_sentence(Rng& rng, int label) {
  const Shape& shape = pick_shape(rng);
  std::vector<std::string> words;
  const Noun& subject = noun_phrase(rng, shape.subject, words);
  const auto& lemmas = shape.transitive ? kTransitive[label] : kIntransitive[label];
  const Verb& verb = lemmas[rng.index(3)];
  words.emplace_back(subject.plural ? verb.base : verb.third);
  if (shape.transitive) noun_phrase(rng, shape.object, words);
  if (shape.adverb) words.emplace_back(pick(rng, kAdverbs));
  return capitalize(join(words));
}

void clause(Rng& rng, int label, std::vector<std::string>& words) {
  const Noun& subject = noun_phrase(rng, 1 + static_cast<int>(rng.index(3)), words);
  const bool transitive = rng.uniform() < 0.7;
  const auto& lemmas = transitive ? kTransitive[label] : kIntransitive[label];
  const Verb& verb = lemmas[rng.index(3)];
  words.emplace_back(subject.plural ? verb.base : verb.third);
  if (transitive) noun_phrase(rng, 1 + static_cast<int>(rng.index(3)), words);
}

std::string moderate_sentence(Rng& rng, int label) {
  std::vector<std::string> words;
  if (rng.uniform() < 0.5) words.emplace_back(pick(rng, kLeadIns));
  clause(rng, label, words);
  words.emplace_back(pick(rng, kConnectors));
  clause(rng, rng.uniform() < 0.5 ? label : kNeutral, words);
  words.emplace_back(pick(rng, kTails));
  return capitalize(join(words)) + ".";
}

std::array<std::size_t, 3> class_counts(std::size_t n, const std::array<double, 3>& shares) {
  std::array<std::size_t, 3> counts{};
  std::array<double, 3> remainder{};
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < 3; ++c) {
    const double exact = shares[c] * static_cast<double>(n);
    counts[c] = static_cast<std::size_t>(std::floor(exact));
    remainder[c] = exact - static_cast<double>(counts[c]);
    assigned += counts[c];
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; assigned < n; ++k, ++assigned) ++counts[order[k % 3]];
  return counts;
}

}  // namespace

std::string_view to_string(Complexity c) { return c == Complexity::kLow ? "low" : "moderate"; }

std::optional<Complexity> complexity_from_string(std::string_view name) {
  if (name == "low") return Complexity::kLow;
  if (name == "moderate") return Complexity::kModerate;
  return std::nullopt;
}

std::array<double, 3> reference_shares(Complexity c) {
  if (c == Complexity::kLow) return {0.34, 0.18, 0.48};
  return {0.37, 0.17, 0.46};
}

void GenConfig::validate() const {
  double total = 0.0;
  for (double s : target_shares) {
    if (!(s >= 0.0) || s > 1.0) fail(ErrorCode::kInvalidConfig, "class share outside [0, 1]");
    total += s;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    fail(ErrorCode::kInvalidConfig, "class shares sum to " + std::to_string(total));
  }
}

Dataset generate_synthetic(const GenConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const auto counts = class_counts(config.n_sentences, config.target_shares);
  std::vector<int> labels;
  labels.reserve(config.n_sentences);
  for (int c = 0; c < 3; ++c) labels.insert(labels.end(), counts[static_cast<std::size_t>(c)], c);
  rng.shuffle(std::span<int>(labels));

  Dataset out;
  out.sentences.reserve(labels.size());
  for (int label : labels) {
    std::string text = config.complexity == Complexity::kLow ? low_sentence(rng, label)
                                                             : moderate_sentence(rng, label);
    out.sentences.push_back(make_sentence(std::move(text), label));
  }
  return out;
}

grammar::Lexicon finance_lexicon() {
  using namespace grammar;
  Lexicon lex = standard_lexicon();
  for (const Noun& n : kNouns) lex.add(n.word, types::noun());
  for (const char* a : kAdjectives) lex.add(a, types::adjective());
  for (const char* d : kDeterminers) lex.add(d, types::determiner());
  for (const char* a : kAdverbs) lex.add(a, types::adverb());
  for (const auto& per_label : kTransitive) {
    for (const Verb& v : per_label) {
      lex.add(v.third, types::transitive_verb());
      lex.add(v.base, types::transitive_verb());
    }
  }
  for (const auto& per_label : kIntransitive) {
    for (const Verb& v : per_label) {
      lex.add(v.third, types::intransitive_verb());
      lex.add(v.base, types::intransitive_verb());
    }
  }
  return lex;
}

}  // namespace qnlp::data
