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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace qnlp::cli {

/// Git blob id of a file: SHA-1 over "blob <size>\0<content>". Throws IoError.
std::string git_blob_sha1(const std::filesystem::path& path);

/// ISO-8601 UTC timestamp with second resolution.
std::string utc_timestamp();

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomically(const std::filesystem::path& path, const std::string& contents);

/// Run directory plus its manifest. The manifest is written when the run
/// starts (status "running") and rewritten when it finishes.
class RunRecord {
 public:
  /// Creates <root>/<timestamp>-seed<seed>[-k]. Throws IoError.
  RunRecord(const std::filesystem::path& root, std::string command, std::vector<std::string> argv,
            std::uint64_t seed);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path(std::string_view name) const { return dir_ / name; }

  void set_config(nlohmann::json config) { manifest_["config"] = std::move(config); }
  /// Records the input with its content hash.
  void add_input(const std::string& role, const std::filesystem::path& file);
  void add_output(const std::string& role, const std::filesystem::path& file);
  nlohmann::json& extra() { return manifest_["details"]; }

  void start();
  void finish(int exit_code, const std::string& error = {});

 private:
  void write() const;

  std::filesystem::path dir_;
  nlohmann::json manifest_;
};

}  // namespace qnlp::cli
