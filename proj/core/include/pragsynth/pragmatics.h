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

// Recursive pragmatics over a meaning matrix.
//
//   L0(h | D)          = 1[h |- D] / |D[H]|
//   S(u_i | h, u_<i)   = L0(h | u_<i, u_i) / sum_{u' in M_S[h] \ u_<i} L0(h | u_<i, u')
//   S1(D | h)          = prod_i S(u_i | h, u_<i)
//   L1(h | D)          = S1(D | h) / sum_{h' in D[H]} S1(D | h')
//
// The speaker normalizer only ranges over utterances the speaker has not used
// yet. Every L0 term inside a normalizer reduces to 1 / |prefix[H] ∩ M_L[u']|,
// which the ConsistentSetCache memoizes per prefix, so a full L1 query costs
// |D[H]| * |D| * |M_S| cached lookups plus at most |U| popcounts per prefix.

#ifndef PRAGSYNTH_PRAGMATICS_H_
#define PRAGSYNTH_PRAGMATICS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "pragsynth/consistent_set.h"
#include "pragsynth/example_sequence.h"
#include "pragsynth/ids.h"
#include "pragsynth/meaning_matrix.h"

namespace pragsynth {

struct ScoredHypothesis {
  HypothesisId id;
  double probability;
};

// Dense distribution over the hypothesis id space.
class Posterior {
 public:
  Posterior() = default;
  explicit Posterior(std::vector<double> probabilities)
      : probabilities_(std::move(probabilities)) {}

  double operator[](HypothesisId h) const { return probabilities_.at(Index(h)); }
  std::span<const double> probabilities() const { return probabilities_; }
  std::size_t size() const { return probabilities_.size(); }
  std::size_t SupportSize() const;

  // Highest-probability hypotheses, ties broken by lowest id. Probabilities
  // are compared at 1e-12 resolution so that mathematically equal entries
  // computed along different summation orders rank by id.
  std::vector<ScoredHypothesis> TopK(std::size_t k) const;
  HypothesisId Top1() const;

  // Inverse-CDF draw in ascending id order; `uniform` in [0, 1).
  HypothesisId Sample(double uniform) const;

 private:
  std::vector<double> probabilities_;
};

// Operation counters for checking the support-restricted sums.
struct InferenceCounters {
  // L0 terms evaluated inside speaker normalizers.
  std::uint64_t l0_terms = 0;
  // Largest single normalizer (terms), and its bound max_h |M_S[h]|.
  std::uint64_t max_inner_terms = 0;
  // Speaker sequence evaluations summed in L1 normalizers.
  std::uint64_t speaker_sequences = 0;
  // Largest L1 outer sum (hypotheses).
  std::uint64_t max_outer_terms = 0;
};

// Throws InconsistentSpecError when D[H] is empty.
Posterior L0Posterior(const MeaningMatrix& m, const ExampleSequence& d,
                      ConsistentSetCache& cache);

// S(u | h, prefix). Requires h |- prefix (std::domain_error otherwise) and
// u not in prefix (std::invalid_argument otherwise). Returns 0 when h does
// not satisfy u.
double S1StepProb(const MeaningMatrix& m, HypothesisId h,
                  const ExampleSequence& prefix, UtteranceId u,
                  ConsistentSetCache& cache, InferenceCounters* counters = nullptr);
double S1StepProb(const MeaningMatrix& m, HypothesisId h,
                  const ExampleSequence& prefix, UtteranceId u);

// Full next-utterance distribution for speaker target h after `prefix`, as
// (utterance, probability) pairs over M_S[h] \ prefix in id order. Empty when
// the speaker has nothing left to say.
std::vector<std::pair<UtteranceId, double>> S1StepDistribution(
    const MeaningMatrix& m, HypothesisId h, const ExampleSequence& prefix,
    ConsistentSetCache& cache, InferenceCounters* counters = nullptr);

// log S1(D | h); -infinity when h does not satisfy D.
double S1SequenceLogProb(const MeaningMatrix& m, HypothesisId h,
                         const ExampleSequence& d, ConsistentSetCache& cache,
                         InferenceCounters* counters = nullptr);
double S1SequenceProb(const MeaningMatrix& m, HypothesisId h,
                      const ExampleSequence& d, ConsistentSetCache& cache,
                      InferenceCounters* counters = nullptr);
double S1SequenceProb(const MeaningMatrix& m, HypothesisId h,
                      const ExampleSequence& d);

// Throws InconsistentSpecError when D[H] is empty.
Posterior L1Posterior(const MeaningMatrix& m, const ExampleSequence& d,
                      ConsistentSetCache& cache,
                      InferenceCounters* counters = nullptr);

// Crafted prior score per hypothesis: 100 * sym + kinds.
struct PriorScores {
  std::vector<std::uint32_t> scores;
};

enum class LpWeighting {
  // Weight 1 / (1 + dense rank of the score) among consistent hypotheses:
  // lower score is preferred and equal scores share weight.
  kRank,
  // Weight proportional to the score itself, literally; kept for comparison.
  // Falls back to uniform when every consistent score is zero.
  kProportional,
};

// Throws InconsistentSpecError when D[H] is empty and std::invalid_argument
// when the score table does not cover every hypothesis.
Posterior LpPosterior(const MeaningMatrix& m, const ExampleSequence& d,
                      const PriorScores& scores, ConsistentSetCache& cache,
                      LpWeighting weighting = LpWeighting::kRank);

enum class ListenerKind { kL0, kL1, kLp };

std::string_view ListenerName(ListenerKind kind);
// "l0", "l1" or "lp"; throws std::invalid_argument otherwise.
ListenerKind ParseListener(std::string_view name);

// Dispatches to the listener of `kind`. `scores` is required for kLp.
Posterior ListenerPosterior(ListenerKind kind, const MeaningMatrix& m,
                            const ExampleSequence& d, ConsistentSetCache& cache,
                            const PriorScores* scores = nullptr,
                            InferenceCounters* counters = nullptr);

}  // namespace pragsynth

#endif  // PRAGSYNTH_PRAGMATICS_H_
