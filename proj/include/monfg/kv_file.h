// Copyright 2026 The MONFG Opponent Modelling Authors
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

#ifndef MONFG_KV_FILE_H_
#define MONFG_KV_FILE_H_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace monfg {

// `key = value` lines; '#' starts a comment; blank lines ignored. Keys may
// repeat, in which case Get returns the last one and All returns every value
// in file order.
class KvFile {
 public:
  static KvFile Parse(const std::string& text);
  static KvFile Load(const std::filesystem::path& path);

  bool Has(const std::string& key) const;
  std::string Get(const std::string& key) const;
  std::string Get(const std::string& key, const std::string& fallback) const;
  int GetInt(const std::string& key) const;
  int GetInt(const std::string& key, int fallback) const;
  double GetDouble(const std::string& key, double fallback) const;
  std::vector<std::string> All(const std::string& key) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

std::vector<std::string> SplitWords(const std::string& text);

}  // namespace monfg

#endif  // MONFG_KV_FILE_H_
