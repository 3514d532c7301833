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

#ifndef PRAGSYNTH_EXAMPLE_SEQUENCE_H_
#define PRAGSYNTH_EXAMPLE_SEQUENCE_H_

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "pragsynth/errors.h"
#include "pragsynth/ids.h"

namespace pragsynth {

// Ordered, duplicate-free list of utterances (a specification D).
class ExampleSequence {
 public:
  ExampleSequence() = default;
  ExampleSequence(std::initializer_list<UtteranceId> ids) {
    for (UtteranceId u : ids) Append(u);
  }
  explicit ExampleSequence(std::span<const UtteranceId> ids) {
    for (UtteranceId u : ids) Append(u);
  }

  // Throws DuplicateExampleError if `u` is already present.
  void Append(UtteranceId u) {
    if (Contains(u)) {
      throw DuplicateExampleError("utterance " + std::to_string(Index(u)) +
                                  " already in example sequence");
    }
    ids_.push_back(u);
  }
  void PopBack() { ids_.pop_back(); }

  bool Contains(UtteranceId u) const {
    return std::find(ids_.begin(), ids_.end(), u) != ids_.end();
  }

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  UtteranceId operator[](std::size_t i) const { return ids_[i]; }
  UtteranceId back() const { return ids_.back(); }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  std::span<const UtteranceId> ids() const { return ids_; }
  // First `n` utterances.
  std::span<const UtteranceId> Prefix(std::size_t n) const {
    return std::span<const UtteranceId>(ids_).first(n);
  }

  friend bool operator==(const ExampleSequence&, const ExampleSequence&) = default;

 private:
  std::vector<UtteranceId> ids_;
};

}  // namespace pragsynth

#endif  // PRAGSYNTH_EXAMPLE_SEQUENCE_H_
