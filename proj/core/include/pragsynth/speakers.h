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

#ifndef PRAGSYNTH_SPEAKERS_H_
#define PRAGSYNTH_SPEAKERS_H_

#include <string>
#include <string_view>

#include "pragsynth/consistent_set.h"
#include "pragsynth/example_sequence.h"
#include "pragsynth/ids.h"
#include "pragsynth/meaning_matrix.h"
#include "pragsynth/rng.h"

namespace pragsynth {

enum class SpeakerKind { kS0, kS1Sample, kS1Greedy };

std::string_view SpeakerName(SpeakerKind kind);
// Accepts "s0", "s1" (= sampling), "s1-sample", "s1-greedy".
SpeakerKind ParseSpeaker(std::string_view name);

// One speaker's view of an episode. `used` only ever holds utterances the
// target satisfies.
struct SpeakerState {
  SpeakerState(HypothesisId target, CounterRng rng) : target(target), rng(rng) {}

  HypothesisId target;
  ExampleSequence used;
  CounterRng rng;
};

// Uniform draw from M_S[target] \ used, appended to `used`.
// Throws ExhaustedSpeakerError when nothing is left.
UtteranceId S0Next(const MeaningMatrix& m, SpeakerState& state);

// Draw (or argmax, ties to lowest id) from the incremental pragmatic
// speaker's next-utterance distribution, appended to `used`.
// Throws ExhaustedSpeakerError when nothing is left.
UtteranceId S1Next(const MeaningMatrix& m, SpeakerState& state, bool greedy,
                   ConsistentSetCache& cache);

UtteranceId SpeakerNext(SpeakerKind kind, const MeaningMatrix& m,
                        SpeakerState& state, ConsistentSetCache& cache);

}  // namespace pragsynth

#endif  // PRAGSYNTH_SPEAKERS_H_
