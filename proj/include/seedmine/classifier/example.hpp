// Copyright 2026 The Seedmine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <string>
#include <vector>

namespace seedmine::classifier {

// One supervised record. An empty label set marks a negative ("none").
struct Example {
  std::string id;
  std::string text;
  std::vector<std::string> labels;  // sorted, distinct

  friend bool operator==(const Example&, const Example&) = default;
};

}  // namespace seedmine::classifier
