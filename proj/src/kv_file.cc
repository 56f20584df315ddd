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

#include "monfg/kv_file.h"

#include <fstream>
#include <sstream>

#include "monfg/errors.h"

namespace monfg {
namespace {

std::string Trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

std::vector<std::string> SplitWords(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

KvFile KvFile::Parse(const std::string& text) {
  KvFile kv;
  std::istringstream in(text);
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("line " + std::to_string(line_no) +
                            ": expected 'key = value'");
    }
    auto key = Trim(line.substr(0, eq));
    // Collapse internal whitespace so "payoff  L L" matches "payoff L L".
    std::string normalized;
    for (const auto& w : SplitWords(key)) {
      if (!normalized.empty()) normalized += ' ';
      normalized += w;
    }
    if (normalized.empty()) {
      throw InvalidArgument("line " + std::to_string(line_no) + ": empty key");
    }
    kv.entries_.emplace_back(normalized, Trim(line.substr(eq + 1)));
  }
  return kv;
}

KvFile KvFile::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Parse(buffer.str());
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

bool KvFile::Has(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return true;
  }
  return false;
}

std::string KvFile::Get(const std::string& key) const {
  const std::string* found = nullptr;
  for (const auto& [k, v] : entries_) {
    if (k == key) found = &v;
  }
  if (!found) throw InvalidArgument("missing key '" + key + "'");
  return *found;
}

std::string KvFile::Get(const std::string& key,
                        const std::string& fallback) const {
  return Has(key) ? Get(key) : fallback;
}

int KvFile::GetInt(const std::string& key) const {
  const auto value = Get(key);
  try {
    std::size_t used = 0;
    const int out = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return out;
  } catch (const std::exception&) {
    throw InvalidArgument("key '" + key + "' is not an integer: " + value);
  }
}

int KvFile::GetInt(const std::string& key, int fallback) const {
  return Has(key) ? GetInt(key) : fallback;
}

double KvFile::GetDouble(const std::string& key, double fallback) const {
  if (!Has(key)) return fallback;
  const auto value = Get(key);
  try {
    return std::stod(value);
  } catch (const std::exception&) {
    throw InvalidArgument("key '" + key + "' is not a number: " + value);
  }
}

std::vector<std::string> KvFile::All(const std::string& key) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) {
    if (k == key) out.push_back(v);
  }
  return out;
}

}  // namespace monfg
