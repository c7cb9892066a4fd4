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

#include "run_record.h"

#include <array>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iterator>

#include <openssl/evp.h>

#include "qnlp/error.h"

namespace qnlp::cli {

namespace fs = std::filesystem;

namespace {

std::string format_time(const char* pattern) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), pattern, &utc);
  return buf.data();
}

}  // namespace

std::string git_blob_sha1(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoError, "cannot read " + path.string());
  const std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::string blob = "blob " + std::to_string(content.size());
  blob.push_back('\0');
  blob += content;

  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(blob.data(), blob.size(), digest.data(), &len, EVP_sha1(), nullptr) != 1) {
    fail(ErrorCode::kIoError, "SHA-1 failed for " + path.string());
  }
  std::string hex;
  for (unsigned int k = 0; k < len; ++k) {
    char byte[3];
    std::snprintf(byte, sizeof byte, "%02x", digest[k]);
    hex += byte;
  }
  return hex;
}

std::string utc_timestamp() { return format_time("%Y-%m-%dT%H:%M:%SZ"); }

void write_atomically(const fs::path& path, const std::string& contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::kIoError, "cannot write " + tmp.string());
    out << contents;
    if (!out.flush()) fail(ErrorCode::kIoError, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) fail(ErrorCode::kIoError, "cannot move " + tmp.string() + " into place: " + ec.message());
}

RunRecord::RunRecord(const fs::path& root, std::string command, std::vector<std::string> argv,
                     std::uint64_t seed) {
  const std::string base = format_time("%Y%m%dT%H%M%SZ") + "-seed" + std::to_string(seed);
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) fail(ErrorCode::kIoError, "cannot create " + root.string() + ": " + ec.message());
  for (int k = 0;; ++k) {
    dir_ = root / (k == 0 ? base : base + "-" + std::to_string(k));
    if (fs::create_directory(dir_, ec)) break;
    if (ec) fail(ErrorCode::kIoError, "cannot create " + dir_.string() + ": " + ec.message());
  }
  manifest_ = {{"command", std::move(command)},
               {"argv", std::move(argv)},
               {"seed", seed},
               {"config", nlohmann::json::object()},
               {"inputs", nlohmann::json::array()},
               {"outputs", nlohmann::json::object()},
               {"details", nlohmann::json::object()},
               {"run_dir", dir_.string()}};
}

void RunRecord::add_input(const std::string& role, const fs::path& file) {
  manifest_["inputs"].push_back(
      {{"role", role}, {"path", file.string()}, {"git_sha1", git_blob_sha1(file)}});
}

void RunRecord::add_output(const std::string& role, const fs::path& file) {
  manifest_["outputs"][role] = file.string();
}

void RunRecord::start() {
  manifest_["started_at"] = utc_timestamp();
  manifest_["status"] = "running";
  write();
}

void RunRecord::finish(int exit_code, const std::string& error) {
  manifest_["finished_at"] = utc_timestamp();
  manifest_["exit_code"] = exit_code;
  manifest_["status"] = exit_code == 0 ? "ok" : "failed";
  if (!error.empty()) manifest_["error"] = error;
  write();
}

void RunRecord::write() const { write_atomically(dir_ / "manifest.json", manifest_.dump(2) + "\n"); }

}  // namespace qnlp::cli
