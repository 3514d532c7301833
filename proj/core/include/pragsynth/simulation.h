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

#ifndef PRAGSYNTH_SIMULATION_H_
#define PRAGSYNTH_SIMULATION_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pragsynth/example_sequence.h"
#include "pragsynth/ids.h"
#include "pragsynth/meaning_matrix.h"
#include "pragsynth/pragmatics.h"
#include "pragsynth/rng.h"
#include "pragsynth/speakers.h"

namespace pragsynth {

// Non-owning view of a game; `scores` may be null when no listener needs it.
struct GameView {
  const MeaningMatrix* matrix = nullptr;
  const PriorScores* scores = nullptr;
};

enum class GuessMode {
  kTop1,    // listener answers its most probable hypothesis
  kSample,  // listener samples from its posterior
};

struct ExperimentConfig {
  SpeakerKind speaker = SpeakerKind::kS1Sample;
  ListenerKind listener = ListenerKind::kL1;
  std::size_t trials = 500;
  std::size_t max_rounds = 40;
  std::uint64_t seed = 7;
  // Targets are drawn uniformly from this list, or from every hypothesis
  // when it is empty.
  std::vector<HypothesisId> targets;
  // Worker threads; 0 picks the hardware concurrency. Results do not depend
  // on it.
  std::size_t threads = 0;
};

struct EpisodeResult {
  HypothesisId target{};
  std::size_t rounds_used = 0;
  bool success = false;
  bool speaker_exhausted = false;
  ExampleSequence transcript;
  std::vector<HypothesisId> guesses;  // one per round
};

// Speaker and listener alternate until the listener's guess equals the
// target or max_rounds utterances have been spoken. Randomness comes from
// `rng` split into independent speaker and listener streams.
EpisodeResult RunEpisode(const GameView& game, const ExperimentConfig& config,
                         HypothesisId target, const CounterRng& rng,
                         GuessMode mode = GuessMode::kTop1);

// RNG for trial `trial` of an experiment with `seed`.
inline CounterRng TrialRng(std::uint64_t seed, std::size_t trial) {
  return CounterRng(seed, trial);
}

// Target of trial `trial`: uniform over config.targets (or all hypotheses).
HypothesisId TrialTarget(const GameView& game, const ExperimentConfig& config,
                         std::size_t trial);

struct CurveRow {
  std::size_t n_symbols = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
  }
};

// Monte-Carlo P(L(S(h)) = h) per symbol budget in [first_budget, max_budget],
// with sampled listener guesses. Each trial draws one speaker sequence and
// evaluates every budget on its prefixes; once the speaker runs out of
// utterances the sequence stays at full length.
std::vector<CurveRow> SuccessCurve(const GameView& game,
                                   const ExperimentConfig& config,
                                   std::size_t max_budget,
                                   std::size_t first_budget = 1);

struct TargetStats {
  HypothesisId target{};
  std::size_t trials = 0;
  double mean_rounds = 0.0;
};

struct MeanSymbolsResult {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation
  std::size_t trials = 0;
  std::size_t failures = 0;  // counted as max_rounds in mean/std
  std::vector<double> rounds;  // per trial, in trial order
  std::vector<TargetStats> per_target;  // ascending target id
};

// Mean number of utterances to success with a top-1 listener.
MeanSymbolsResult MeanSymbols(const GameView& game, const ExperimentConfig& config);

// CSV writers. Rates and statistics use fixed 6-decimal formatting so that a
// given config and seed produce byte-identical files.
void WriteCurveCsv(std::ostream& out, const ExperimentConfig& config,
                   const std::vector<CurveRow>& rows, bool header = true);
void WriteMeansCsv(std::ostream& out, const ExperimentConfig& config,
                   const MeanSymbolsResult& result, bool header = true);

}  // namespace pragsynth

#endif  // PRAGSYNTH_SIMULATION_H_
