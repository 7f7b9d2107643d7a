// Copyright 2026 The minival Authors
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

#ifndef MINIVAL_TEXT_HPP
#define MINIVAL_TEXT_HPP

#include <string>
#include <string_view>
#include <vector>

namespace minival {

/// A normalized word sequence. Tokens never contain whitespace; the empty
/// transcript is valid.
using Transcript = std::vector<std::string>;

/// Canonical normalizer: trim, ASCII-lowercase, split on runs of whitespace.
/// Idempotent: normalize(join(normalize(s))) == normalize(s).
Transcript normalize(std::string_view raw);

/// Joins tokens with single spaces.
std::string join(const Transcript& tokens);

}  // namespace minival

#endif  // MINIVAL_TEXT_HPP
