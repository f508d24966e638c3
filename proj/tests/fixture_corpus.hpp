// Copyright 2026 The cvnet Authors
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

// Loads the circuit fixture corpus. Invalid fixtures carry their expected
// error line in a leading "# expect-error-line: N" comment.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace cvnet::test_support {

struct Fixture {
  std::string name;
  std::string text;
  std::size_t expected_line = 0;  // 0 for valid fixtures
};

inline std::vector<Fixture> load_fixtures(const std::filesystem::path& dir) {
  std::vector<Fixture> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".circ") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    Fixture f{entry.path().filename().string(), ss.str(), 0};
    const std::string tag = "# expect-error-line:";
    if (f.text.rfind(tag, 0) == 0) f.expected_line = std::stoul(f.text.substr(tag.size()));
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(),
            [](const Fixture& a, const Fixture& b) { return a.name < b.name; });
  return out;
}

inline std::filesystem::path fixture_dir(const char* sub) {
  return std::filesystem::path(CVNET_FIXTURE_DIR) / sub;
}

}  // namespace cvnet::test_support
