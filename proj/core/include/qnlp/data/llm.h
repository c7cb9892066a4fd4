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
#include <string>
#include <string_view>
#include <vector>

#include "qnlp/data/dataset.h"
#include "qnlp/data/generator.h"

namespace qnlp::data {

inline constexpr const char* kEndpointEnv = "QNLP_LLM_ENDPOINT";
inline constexpr const char* kTokenEnv = "QNLP_LLM_TOKEN";
inline constexpr const char* kModelEnv = "QNLP_LLM_MODEL";

/// The generation prompt sent for each complexity level.
std::string_view llm_prompt(Complexity c);

struct EndpointConfig {
  /// scheme://host[:port], e.g. https://api.openai.com
  std::string base_url;
  std::string path = "/v1/chat/completions";
  std::string model = "gpt-3.5-turbo";
  std::string token;
  int timeout_seconds = 120;

  /// Reads QNLP_LLM_ENDPOINT, QNLP_LLM_TOKEN and optionally QNLP_LLM_MODEL.
  /// Throws AuthError when endpoint or token is missing.
  static EndpointConfig from_env();
};

/// One-shot chat completion: prompt in, assistant text out.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual std::string complete(const std::string& prompt) = 0;
};

/// OpenAI-style chat-completions client. Throws NetworkError for transport
/// failures and unexpected replies, AuthError for 401/403.
class HttpChatClient : public ChatClient {
 public:
  explicit HttpChatClient(EndpointConfig config);
  std::string complete(const std::string& prompt) override;

 private:
  EndpointConfig config_;
};

struct ParsedReply {
  std::vector<Sentence> sentences;
  std::vector<LineIssue> unparseable;
};

/// Accepts lines "<sentence> (<Word> - <digit>)", optionally numbered or
/// bulleted, case-insensitive. Lines whose word and digit disagree are
/// unparseable. Blank lines are ignored.
ParsedReply parse_llm_reply(std::string_view reply);

struct GenRequest {
  Complexity complexity = Complexity::kLow;
  std::size_t n_sentences = 100;
  /// Upper bound on round trips while collecting n_sentences.
  std::size_t max_requests = 20;
};

struct LlmResult {
  /// Every reply verbatim, in request order.
  std::vector<std::string> raw_replies;
  Dataset dataset;
  std::vector<LineIssue> unparseable;
};

/// Queries until n_sentences are collected (or max_requests is hit) and
/// truncates to n_sentences. Throws NoParsableLines when nothing parsed.
LlmResult llm_generate(ChatClient& client, const GenRequest& request);

}  // namespace qnlp::data
