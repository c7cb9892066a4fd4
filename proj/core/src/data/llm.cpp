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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "qnlp/data/llm.h"

#include <cctype>
#include <cstdlib>
#include <regex>
#include <sstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "qnlp/error.h"

namespace qnlp::data {

using nlohmann::json;

std::string_view llm_prompt(Complexity c) {
  if (c == Complexity::kLow) {
    return "Generate sentences with a maximum length of five words discussing financial topics "
           "or stocks in a positive, neutral or negative way. At the end of each sentence, "
           "mention its respective label with negative being 0, neutral being 1 and positive "
           "being 2.";
  }
  return "Generate detailed sentences discussing financial topics or stocks in a positive, "
         "neutral or negative way. At the end of each sentence, mention its respective label "
         "with negative being 0, neutral being 1 and positive being 2.";
}

EndpointConfig EndpointConfig::from_env() {
  const char* endpoint = std::getenv(kEndpointEnv);
  const char* token = std::getenv(kTokenEnv);
  if (!endpoint || !*endpoint) fail(ErrorCode::kAuthError, std::string(kEndpointEnv) + " is not set");
  if (!token || !*token) fail(ErrorCode::kAuthError, std::string(kTokenEnv) + " is not set");
  EndpointConfig c;
  c.base_url = endpoint;
  c.token = token;
  if (const char* model = std::getenv(kModelEnv); model && *model) c.model = model;
  return c;
}

HttpChatClient::HttpChatClient(EndpointConfig config) : config_(std::move(config)) {
  if (config_.base_url.empty()) fail(ErrorCode::kInvalidConfig, "empty endpoint URL");
}

std::string HttpChatClient::complete(const std::string& prompt) {
  httplib::Client client(config_.base_url);
  if (!client.is_valid()) fail(ErrorCode::kInvalidConfig, "bad endpoint URL " + config_.base_url);
  client.set_connection_timeout(config_.timeout_seconds);
  client.set_read_timeout(config_.timeout_seconds);
  client.set_bearer_token_auth(config_.token);

  const json body = {{"model", config_.model},
                     {"messages", json::array({{{"role", "user"}, {"content", prompt}}})}};
  auto res = client.Post(config_.path, body.dump(), "application/json");
  if (!res) fail(ErrorCode::kNetworkError, "request failed: " + httplib::to_string(res.error()));
  if (res->status == 401 || res->status == 403) {
    fail(ErrorCode::kAuthError, "endpoint rejected credentials (HTTP " + std::to_string(res->status) + ")");
  }
  if (res->status != 200) {
    fail(ErrorCode::kNetworkError, "HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
  }
  try {
    const json reply = json::parse(res->body);
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    fail(ErrorCode::kNetworkError, std::string("unexpected reply: ") + e.what());
  }
}

ParsedReply parse_llm_reply(std::string_view reply) {
  static const std::regex kLine(
      R"(^\s*(?:(?:\d+\s*[.):]|(?:[-*]|\xE2\x80\xA2))\s*)?(.*?)\s*\(\s*(negative|neutral|positive)\s*(?:-|\xE2\x80\x93|\xE2\x80\x94|:)\s*([0-2])\s*\)\s*[.!]?\s*$)",
      std::regex::ECMAScript | std::regex::icase);
  ParsedReply out;
  std::istringstream in{std::string(reply)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::smatch m;
    if (!std::regex_match(line, m, kLine)) {
      out.unparseable.push_back({line_no, "no trailing (Label - digit): " + line});
      continue;
    }
    std::string word = m[2].str();
    for (char& ch : word) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    const int digit = m[3].str()[0] - '0';
    const int expected = word == "negative" ? kNegative : word == "neutral" ? kNeutral : kPositive;
    if (digit != expected) {
      out.unparseable.push_back({line_no, "label word and digit disagree: " + line});
      continue;
    }
    Sentence s = make_sentence(m[1].str(), digit);
    if (s.tokens.empty()) {
      out.unparseable.push_back({line_no, "empty sentence: " + line});
      continue;
    }
    out.sentences.push_back(std::move(s));
  }
  return out;
}

LlmResult llm_generate(ChatClient& client, const GenRequest& request) {
  LlmResult result;
  const std::string prompt(llm_prompt(request.complexity));
  for (std::size_t k = 0; k < request.max_requests && result.dataset.size() < request.n_sentences; ++k) {
    result.raw_replies.push_back(client.complete(prompt));
    ParsedReply parsed = parse_llm_reply(result.raw_replies.back());
    for (auto& issue : parsed.unparseable) {
      issue.message = "reply " + std::to_string(k + 1) + ": " + issue.message;
      result.unparseable.push_back(std::move(issue));
    }
    for (auto& s : parsed.sentences) result.dataset.sentences.push_back(std::move(s));
  }
  if (result.dataset.empty()) {
    fail(ErrorCode::kNoParsableLines,
         "no labelled sentences in " + std::to_string(result.raw_replies.size()) + " replies");
  }
  if (result.dataset.size() > request.n_sentences) result.dataset.sentences.resize(request.n_sentences);
  return result;
}

}  // namespace qnlp::data
