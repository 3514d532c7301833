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

#include "pragsynth/speakers.h"

#include <stdexcept>
#include <vector>

#include "pragsynth/errors.h"
#include "pragsynth/pragmatics.h"

namespace pragsynth {
namespace {

[[noreturn]] void ThrowExhausted(const SpeakerState& state) {
  throw ExhaustedSpeakerError("speaker for hypothesis " +
                              std::to_string(Index(state.target)) +
                              " has no unused consistent utterance");
}

}  // namespace

std::string_view SpeakerName(SpeakerKind kind) {
  switch (kind) {
    case SpeakerKind::kS0: return "s0";
    case SpeakerKind::kS1Sample: return "s1-sample";
    case SpeakerKind::kS1Greedy: return "s1-greedy";
  }
  return "?";
}

SpeakerKind ParseSpeaker(std::string_view name) {
  if (name == "s0") return SpeakerKind::kS0;
  if (name == "s1" || name == "s1-sample") return SpeakerKind::kS1Sample;
  if (name == "s1-greedy") return SpeakerKind::kS1Greedy;
  throw std::invalid_argument("unknown speaker '" + std::string(name) + "'");
}

UtteranceId S0Next(const MeaningMatrix& m, SpeakerState& state) {
  std::vector<UtteranceId> candidates;
  for (UtteranceId u : m.SpeakerList(state.target)) {
    if (!state.used.Contains(u)) candidates.push_back(u);
  }
  if (candidates.empty()) ThrowExhausted(state);
  const UtteranceId u = candidates[state.rng.Below(candidates.size())];
  state.used.Append(u);
  return u;
}

UtteranceId S1Next(const MeaningMatrix& m, SpeakerState& state, bool greedy,
                   ConsistentSetCache& cache) {
  const auto dist = S1StepDistribution(m, state.target, state.used, cache);
  if (dist.empty()) ThrowExhausted(state);
  std::size_t pick = 0;
  if (greedy) {
    // Strict > keeps the lowest id among ties.
    for (std::size_t i = 1; i < dist.size(); ++i) {
      if (dist[i].second > dist[pick].second * (1.0 + 1e-12)) pick = i;
    }
  } else {
    const double draw = state.rng.Uniform();
    double cumulative = 0.0;
    pick = dist.size() - 1;
    for (std::size_t i = 0; i < dist.size(); ++i) {
      cumulative += dist[i].second;
      if (draw < cumulative) {
        pick = i;
        break;
      }
    }
  }
  state.used.Append(dist[pick].first);
  return dist[pick].first;
}

UtteranceId SpeakerNext(SpeakerKind kind, const MeaningMatrix& m,
                        SpeakerState& state, ConsistentSetCache& cache) {
  switch (kind) {
    case SpeakerKind::kS0: return S0Next(m, state);
    case SpeakerKind::kS1Sample: return S1Next(m, state, false, cache);
    case SpeakerKind::kS1Greedy: return S1Next(m, state, true, cache);
  }
  throw std::invalid_argument("unknown speaker kind");
}

}  // namespace pragsynth
