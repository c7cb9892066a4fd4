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

#include <cstdlib>
#include <deque>
#include <string>
#include <thread>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "oracle.h"
#include "qnlp/data/llm.h"

namespace qnlp::data {
namespace {

using testing::error_code_of;

class ScriptedClient : public ChatClient {
 public:
  explicit ScriptedClient(std::deque<std::string> replies) : replies_(std::move(replies)) {}
  std::string complete(const std::string& prompt) override {
    prompts.push_back(prompt);
    if (replies_.empty()) return "";
    std::string r = replies_.front();
    replies_.pop_front();
    return r;
  }
  std::vector<std::string> prompts;

 private:
  std::deque<std::string> replies_;
};

TEST(ParseReply, LabelledLines) {
  const auto r = parse_llm_reply(
      "Interest rates stay steady (Neutral - 1)\n"
      "Inflation fears rattle markets (Negative - 0)\n");
  ASSERT_EQ(r.sentences.size(), 2u);
  EXPECT_EQ(r.sentences[0].label, 1);
  EXPECT_EQ(r.sentences[0].text, "Interest rates stay steady");
  EXPECT_EQ(r.sentences[1].label, 0);
  EXPECT_TRUE(r.unparseable.empty());
}

TEST(ParseReply, ToleratesNumberingCaseAndDashes) {
  const auto r = parse_llm_reply(
      "1. Apple reports record profits (Positive - 2)\n"
      "2) Oil slips ( negative \xE2\x80\x93 0 ).\n"
      "- Banks hold rates (NEUTRAL:1)\r\n"
      "\n");
  ASSERT_EQ(r.sentences.size(), 3u);
  EXPECT_EQ(r.sentences[0].text, "Apple reports record profits");
  EXPECT_EQ(r.sentences[1].label, 0);
  EXPECT_EQ(r.sentences[2].text, "Banks hold rates");
}

TEST(ParseReply, UnlabelledAndInconsistentLinesAreReported) {
  const auto r = parse_llm_reply(
      "Here are some sentences:\n"
      "Stocks rise (Positive - 0)\n"
      "Stocks rise (Positive - 2)\n");
  ASSERT_EQ(r.sentences.size(), 1u);
  ASSERT_EQ(r.unparseable.size(), 2u);
  EXPECT_EQ(r.unparseable[0].line, 1u);
  EXPECT_EQ(r.unparseable[1].line, 2u);
}

TEST(Prompt, VariantsDifferByComplexity) {
  EXPECT_NE(llm_prompt(Complexity::kLow).find("maximum length of five words"), std::string::npos);
  EXPECT_EQ(llm_prompt(Complexity::kModerate).find("five words"), std::string::npos);
  EXPECT_NE(llm_prompt(Complexity::kModerate).find("detailed"), std::string::npos);
}

TEST(Generate, CollectsArchivesAndTruncates) {
  ScriptedClient client({"A (Positive - 2)\nB (Negative - 0)\njunk\n", "C (Neutral - 1)\nD (Positive - 2)\n"});
  GenRequest req;
  req.n_sentences = 3;
  const LlmResult r = llm_generate(client, req);
  EXPECT_EQ(r.raw_replies.size(), 2u);
  EXPECT_EQ(r.dataset.size(), 3u);
  EXPECT_EQ(r.dataset.sentences[2].text, "C");
  ASSERT_EQ(r.unparseable.size(), 1u);
  EXPECT_NE(r.unparseable[0].message.find("reply 1"), std::string::npos);
  EXPECT_EQ(client.prompts[0], llm_prompt(Complexity::kLow));
}

TEST(Generate, StopsAtMaxRequests) {
  ScriptedClient client({"A (Positive - 2)\n", "B (Positive - 2)\n", "C (Positive - 2)\n"});
  GenRequest req;
  req.n_sentences = 10;
  req.max_requests = 2;
  EXPECT_EQ(llm_generate(client, req).dataset.size(), 2u);
}

TEST(Generate, NothingParsable) {
  ScriptedClient client({"no labels here", "still none"});
  GenRequest req;
  req.max_requests = 2;
  EXPECT_EQ(error_code_of([&] { llm_generate(client, req); }), ErrorCode::kNoParsableLines);
}

TEST(EndpointConfig, MissingEnvironmentIsAuthError) {
  ::unsetenv(kEndpointEnv);
  ::unsetenv(kTokenEnv);
  EXPECT_EQ(error_code_of([] { EndpointConfig::from_env(); }), ErrorCode::kAuthError);
  ::setenv(kEndpointEnv, "http://127.0.0.1:1", 1);
  EXPECT_EQ(error_code_of([] { EndpointConfig::from_env(); }), ErrorCode::kAuthError);
  ::setenv(kTokenEnv, "secret", 1);
  ::setenv(kModelEnv, "test-model", 1);
  const EndpointConfig c = EndpointConfig::from_env();
  EXPECT_EQ(c.base_url, "http://127.0.0.1:1");
  EXPECT_EQ(c.token, "secret");
  EXPECT_EQ(c.model, "test-model");
  ::unsetenv(kEndpointEnv);
  ::unsetenv(kTokenEnv);
  ::unsetenv(kModelEnv);
}

class LoopbackServer : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      last_auth_ = req.get_header_value("Authorization");
      last_body_ = nlohmann::json::parse(req.body);
      if (last_auth_ != "Bearer good") {
        res.status = 401;
        return;
      }
      const nlohmann::json reply = {
          {"choices", {{{"message", {{"role", "assistant"}, {"content", "Markets rally (Positive - 2)"}}}}}}};
      res.set_content(reply.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }
  EndpointConfig config(const std::string& token) const {
    EndpointConfig c;
    c.base_url = "http://127.0.0.1:" + std::to_string(port_);
    c.token = token;
    c.timeout_seconds = 5;
    return c;
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::string last_auth_;
  nlohmann::json last_body_;
};

TEST_F(LoopbackServer, CompletesChat) {
  HttpChatClient client(config("good"));
  const std::string reply = client.complete("hello");
  EXPECT_EQ(reply, "Markets rally (Positive - 2)");
  EXPECT_EQ(last_body_["model"], "gpt-3.5-turbo");
  EXPECT_EQ(last_body_["messages"][0]["content"], "hello");
  GenRequest req;
  req.n_sentences = 1;
  EXPECT_EQ(llm_generate(client, req).dataset.sentences[0].label, 2);
}

TEST_F(LoopbackServer, RejectedTokenIsAuthError) {
  HttpChatClient client(config("bad"));
  EXPECT_EQ(error_code_of([&] { client.complete("hello"); }), ErrorCode::kAuthError);
}

TEST_F(LoopbackServer, WrongPathIsNetworkError) {
  EndpointConfig c = config("good");
  c.path = "/missing";
  HttpChatClient client(c);
  EXPECT_EQ(error_code_of([&] { client.complete("hello"); }), ErrorCode::kNetworkError);
}

TEST(HttpChatClient, UnreachableHostIsNetworkError) {
  EndpointConfig c;
  c.base_url = "http://127.0.0.1:1";
  c.token = "x";
  c.timeout_seconds = 2;
  HttpChatClient client(c);
  EXPECT_EQ(error_code_of([&] { client.complete("hello"); }), ErrorCode::kNetworkError);
}

}  // namespace
}  // namespace qnlp::data
