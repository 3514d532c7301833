// Copyright 2026 The Pragsynth Authors
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

#ifndef PRAGSYNTH_IDS_H_
#define PRAGSYNTH_IDS_H_

#include <cstddef>
#include <cstdint>

namespace pragsynth {

// Dense ids into a game's hypothesis and utterance lists, contiguous from 0.
enum class HypothesisId : std::uint32_t {};
enum class UtteranceId : std::uint32_t {};

constexpr std::size_t Index(HypothesisId id) { return static_cast<std::size_t>(id); }
constexpr std::size_t Index(UtteranceId id) { return static_cast<std::size_t>(id); }

constexpr HypothesisId HypothesisAt(std::size_t i) {
  return static_cast<HypothesisId>(i);
}
constexpr UtteranceId UtteranceAt(std::size_t i) {
  return static_cast<UtteranceId>(i);
}

}  // namespace pragsynth

#endif  // PRAGSYNTH_IDS_H_
