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

#ifndef PRAGSYNTH_ERRORS_H_
#define PRAGSYNTH_ERRORS_H_

#include <stdexcept>
#include <string>

namespace pragsynth {

// No hypothesis is consistent with the given examples.
class InconsistentSpecError : public std::runtime_error {
 public:
  explicit InconsistentSpecError(const std::string& what)
      : std::runtime_error(what) {}
};

// The speaker has no unused consistent utterance left for its target.
class ExhaustedSpeakerError : public std::runtime_error {
 public:
  explicit ExhaustedSpeakerError(const std::string& what)
      : std::runtime_error(what) {}
};

// An utterance was added to an example sequence that already contains it.
class DuplicateExampleError : public std::invalid_argument {
 public:
  explicit DuplicateExampleError(const std::string& what)
      : std::invalid_argument(what) {}
};

// Malformed binary or text input (cache files, pattern text, programs).
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pragsynth

#endif  // PRAGSYNTH_ERRORS_H_
