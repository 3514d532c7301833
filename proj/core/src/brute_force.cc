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

#include "pragsynth/brute_force.h"

#include <stdexcept>
#include <vector>

#include "pragsynth/errors.h"

namespace pragsynth {
namespace {

bool Satisfies(const MeaningMatrix& m, std::size_t h, const ExampleSequence& d) {
  for (UtteranceId u : d) {
    if (!m.Consistent(HypothesisAt(h), u)) return false;
  }
  return true;
}

// L0(h | d) by scanning every hypothesis.
double L0Prob(const MeaningMatrix& m, std::size_t h, const ExampleSequence& d) {
  std::size_t consistent = 0;
  for (std::size_t g = 0; g < m.n_hypotheses(); ++g) consistent += Satisfies(m, g, d);
  if (consistent == 0 || !Satisfies(m, h, d)) return 0.0;
  return 1.0 / static_cast<double>(consistent);
}

}  // namespace

Posterior BruteForceL0(const MeaningMatrix& m, const ExampleSequence& d) {
  std::vector<double> probs(m.n_hypotheses(), 0.0);
  double total = 0.0;
  for (std::size_t h = 0; h < m.n_hypotheses(); ++h) {
    probs[h] = Satisfies(m, h, d) ? 1.0 : 0.0;
    total += probs[h];
  }
  if (total == 0.0) throw InconsistentSpecError("no hypothesis is consistent");
  for (double& p : probs) p /= total;
  return Posterior(std::move(probs));
}

double BruteForceS1Step(const MeaningMatrix& m, HypothesisId h,
                        const ExampleSequence& prefix, UtteranceId u) {
  if (prefix.Contains(u)) throw std::invalid_argument("utterance already used");
  if (!Satisfies(m, Index(h), prefix)) {
    throw std::domain_error("hypothesis is inconsistent with the prefix");
  }
  ExampleSequence extended = prefix;
  extended.Append(u);
  const double numerator = L0Prob(m, Index(h), extended);
  // An unspeakable utterance has probability zero even when h has nothing
  // left to say (the normalizer would be zero too).
  if (numerator == 0.0) return 0.0;
  double normalizer = 0.0;
  for (std::size_t v = 0; v < m.n_utterances(); ++v) {
    if (prefix.Contains(UtteranceAt(v))) continue;
    ExampleSequence alt = prefix;
    alt.Append(UtteranceAt(v));
    normalizer += L0Prob(m, Index(h), alt);
  }
  return numerator / normalizer;
}

double BruteForceS1Sequence(const MeaningMatrix& m, HypothesisId h,
                            const ExampleSequence& d) {
  double prob = 1.0;
  ExampleSequence prefix;
  for (UtteranceId u : d) {
    prob *= BruteForceS1Step(m, h, prefix, u);
    if (prob == 0.0) return 0.0;
    prefix.Append(u);
  }
  return prob;
}

Posterior BruteForceL1(const MeaningMatrix& m, const ExampleSequence& d) {
  std::vector<double> probs(m.n_hypotheses(), 0.0);
  double total = 0.0;
  for (std::size_t h = 0; h < m.n_hypotheses(); ++h) {
    probs[h] = BruteForceS1Sequence(m, HypothesisAt(h), d);
    total += probs[h];
  }
  if (total == 0.0) throw InconsistentSpecError("no hypothesis is consistent");
  for (double& p : probs) p /= total;
  return Posterior(std::move(probs));
}

}  // namespace pragsynth
