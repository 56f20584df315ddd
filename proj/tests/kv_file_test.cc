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

#include "doctest.h"
#include "monfg/kv_file.h"

namespace monfg {
namespace {

TEST_CASE("key-value parsing") {
  const auto kv = KvFile::Parse(R"(
# comment
game = 1 2   # trailing comment
matchup = ac acom
matchup = lola lola

episodes = 30
rate = 0.25
)");
  CHECK(kv.Has("game"));
  CHECK_FALSE(kv.Has("agent1"));
  CHECK(kv.Get("game") == "1 2");
  CHECK(kv.Get("matchup") == "lola lola");
  CHECK(kv.All("matchup") == std::vector<std::string>{"ac acom", "lola lola"});
  CHECK(kv.GetInt("episodes") == 30);
  CHECK(kv.GetInt("trials", 7) == 7);
  CHECK(kv.GetDouble("rate", 0.0) == 0.25);
  CHECK(kv.Get("missing", "x") == "x");
  CHECK_THROWS(kv.Get("missing"));
  CHECK_THROWS(kv.GetInt("game"));
  CHECK_THROWS(KvFile::Parse("no equals sign here\n"));
  CHECK(SplitWords("  a  b\tc ") == std::vector<std::string>{"a", "b", "c"});
}

}  // namespace
}  // namespace monfg
