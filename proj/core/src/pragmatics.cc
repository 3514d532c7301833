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

#include "pragsynth/pragmatics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "pragsynth/errors.h"

namespace pragsynth {
namespace {

constexpr double kRankResolution = 1e12;

std::int64_t RankKey(double p) { return std::llround(p * kRankResolution); }

void CheckConsistent(const Bitset& set, const ExampleSequence& d) {
  if (set.none()) {
    throw InconsistentSpecError("no hypothesis is consistent with the " +
                                std::to_string(d.size()) + " given examples");
  }
}

// Marks the utterances of a prefix for O(1) exclusion tests.
std::vector<char> UsedMask(const MeaningMatrix& m,
                           std::span<const UtteranceId> prefix) {
  std::vector<char> used(m.n_utterances(), 0);
  for (UtteranceId u : prefix) used[Index(u)] = 1;
  return used;
}

// sum_{u' in M_S[h] \ prefix} L0(h | prefix, u'); requires h |- prefix.
double SpeakerNormalizer(const MeaningMatrix& m, HypothesisId h,
                         const std::vector<char>& used,
                         ConsistentSetCache::Entry& entry,
                         InferenceCounters* counters) {
  double sum = 0.0;
  std::uint64_t terms = 0;
  for (UtteranceId u : m.SpeakerList(h)) {
    if (used[Index(u)]) continue;
    sum += 1.0 / static_cast<double>(entry.ExtensionSize(u));
    ++terms;
  }
  if (counters != nullptr) {
    counters->l0_terms += terms;
    counters->max_inner_terms = std::max(counters->max_inner_terms, terms);
  }
  return sum;
}

Posterior FromLogWeights(std::size_t n, const Bitset& support,
                         const std::vector<double>& log_weights) {
  double max_log = -std::numeric_limits<double>::infinity();
  support.ForEach([&](std::size_t h) { max_log = std::max(max_log, log_weights[h]); });
  std::vector<double> probs(n, 0.0);
  double total = 0.0;
  support.ForEach([&](std::size_t h) {
    probs[h] = std::exp(log_weights[h] - max_log);
    total += probs[h];
  });
  support.ForEach([&](std::size_t h) { probs[h] /= total; });
  return Posterior(std::move(probs));
}

}  // namespace

std::size_t Posterior::SupportSize() const {
  return static_cast<std::size_t>(std::count_if(
      probabilities_.begin(), probabilities_.end(), [](double p) { return p > 0.0; }));
}

std::vector<ScoredHypothesis> Posterior::TopK(std::size_t k) const {
  std::vector<ScoredHypothesis> support;
  for (std::size_t h = 0; h < probabilities_.size(); ++h) {
    if (probabilities_[h] > 0.0) support.push_back({HypothesisAt(h), probabilities_[h]});
  }
  auto better = [](const ScoredHypothesis& a, const ScoredHypothesis& b) {
    const std::int64_t ka = RankKey(a.probability);
    const std::int64_t kb = RankKey(b.probability);
    if (ka != kb) return ka > kb;
    return Index(a.id) < Index(b.id);
  };
  const std::size_t n = std::min(k, support.size());
  std::partial_sort(support.begin(), support.begin() + static_cast<std::ptrdiff_t>(n),
                    support.end(), better);
  support.resize(n);
  return support;
}

HypothesisId Posterior::Top1() const {
  const auto top = TopK(1);
  if (top.empty()) throw std::logic_error("empty posterior");
  return top.front().id;
}

HypothesisId Posterior::Sample(double uniform) const {
  double cumulative = 0.0;
  std::size_t last = probabilities_.size();
  for (std::size_t h = 0; h < probabilities_.size(); ++h) {
    if (probabilities_[h] <= 0.0) continue;
    cumulative += probabilities_[h];
    last = h;
    if (uniform < cumulative) return HypothesisAt(h);
  }
  if (last == probabilities_.size()) throw std::logic_error("empty posterior");
  return HypothesisAt(last);
}

Posterior L0Posterior(const MeaningMatrix& m, const ExampleSequence& d,
                      ConsistentSetCache& cache) {
  const Bitset& set = ConsistentSet(m, d, cache);
  CheckConsistent(set, d);
  const double p = 1.0 / static_cast<double>(set.count());
  std::vector<double> probs(m.n_hypotheses(), 0.0);
  set.ForEach([&](std::size_t h) { probs[h] = p; });
  return Posterior(std::move(probs));
}

double S1StepProb(const MeaningMatrix& m, HypothesisId h,
                  const ExampleSequence& prefix, UtteranceId u,
                  ConsistentSetCache& cache, InferenceCounters* counters) {
  if (prefix.Contains(u)) {
    throw std::invalid_argument("utterance already used in the prefix");
  }
  ConsistentSetCache::Entry entry = cache.Lookup(m, prefix.ids());
  if (Index(h) >= m.n_hypotheses() || !entry.set().test(Index(h))) {
    throw std::domain_error("hypothesis is inconsistent with the prefix");
  }
  if (!m.Consistent(h, u)) return 0.0;
  const std::vector<char> used = UsedMask(m, prefix.ids());
  const double numerator = 1.0 / static_cast<double>(entry.ExtensionSize(u));
  return numerator / SpeakerNormalizer(m, h, used, entry, counters);
}

double S1StepProb(const MeaningMatrix& m, HypothesisId h,
                  const ExampleSequence& prefix, UtteranceId u) {
  ConsistentSetCache cache;
  return S1StepProb(m, h, prefix, u, cache);
}

std::vector<std::pair<UtteranceId, double>> S1StepDistribution(
    const MeaningMatrix& m, HypothesisId h, const ExampleSequence& prefix,
    ConsistentSetCache& cache, InferenceCounters* counters) {
  ConsistentSetCache::Entry entry = cache.Lookup(m, prefix.ids());
  if (Index(h) >= m.n_hypotheses() || !entry.set().test(Index(h))) {
    throw std::domain_error("hypothesis is inconsistent with the prefix");
  }
  const std::vector<char> used = UsedMask(m, prefix.ids());
  std::vector<std::pair<UtteranceId, double>> out;
  for (UtteranceId u : m.SpeakerList(h)) {
    if (used[Index(u)]) continue;
    out.emplace_back(u, 1.0 / static_cast<double>(entry.ExtensionSize(u)));
  }
  if (counters != nullptr) {
    counters->l0_terms += out.size();
    counters->max_inner_terms =
        std::max<std::uint64_t>(counters->max_inner_terms, out.size());
  }
  double total = 0.0;
  for (const auto& [u, w] : out) total += w;
  for (auto& [u, w] : out) w /= total;
  return out;
}

double S1SequenceLogProb(const MeaningMatrix& m, HypothesisId h,
                         const ExampleSequence& d, ConsistentSetCache& cache,
                         InferenceCounters* counters) {
  if (Index(h) >= m.n_hypotheses()) throw std::out_of_range("hypothesis id out of range");
  double log_prob = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!m.Consistent(h, d[i])) return -std::numeric_limits<double>::infinity();
    const std::span<const UtteranceId> prefix = d.Prefix(i);
    ConsistentSetCache::Entry entry = cache.Lookup(m, prefix);
    const std::vector<char> used = UsedMask(m, prefix);
    const double n = static_cast<double>(entry.ExtensionSize(d[i]));
    log_prob -= std::log(n) + std::log(SpeakerNormalizer(m, h, used, entry, counters));
  }
  return log_prob;
}

double S1SequenceProb(const MeaningMatrix& m, HypothesisId h,
                      const ExampleSequence& d, ConsistentSetCache& cache,
                      InferenceCounters* counters) {
  return std::exp(S1SequenceLogProb(m, h, d, cache, counters));
}

double S1SequenceProb(const MeaningMatrix& m, HypothesisId h,
                      const ExampleSequence& d) {
  ConsistentSetCache cache;
  return S1SequenceProb(m, h, d, cache);
}

Posterior L1Posterior(const MeaningMatrix& m, const ExampleSequence& d,
                      ConsistentSetCache& cache, InferenceCounters* counters) {
  // Copy: later lookups may grow the trie, but the set itself is stable.
  const Bitset consistent = ConsistentSet(m, d, cache);
  CheckConsistent(consistent, d);
  std::vector<double> log_weights(m.n_hypotheses(), 0.0);
  // Prefix-major so each prefix's memo and used-mask are built once. The
  // per-hypothesis accumulation order matches S1SequenceLogProb exactly.
  for (std::size_t i = 0; i < d.size(); ++i) {
    const std::span<const UtteranceId> prefix = d.Prefix(i);
    ConsistentSetCache::Entry entry = cache.Lookup(m, prefix);
    const std::vector<char> used = UsedMask(m, prefix);
    const double n = static_cast<double>(entry.ExtensionSize(d[i]));
    consistent.ForEach([&](std::size_t h) {
      log_weights[h] -= std::log(n) + std::log(SpeakerNormalizer(
                                          m, HypothesisAt(h), used, entry, counters));
    });
  }
  if (counters != nullptr) {
    const std::uint64_t outer = consistent.count();
    counters->speaker_sequences += outer;
    counters->max_outer_terms = std::max(counters->max_outer_terms, outer);
  }
  return FromLogWeights(m.n_hypotheses(), consistent, log_weights);
}

Posterior LpPosterior(const MeaningMatrix& m, const ExampleSequence& d,
                      const PriorScores& scores, ConsistentSetCache& cache,
                      LpWeighting weighting) {
  if (scores.scores.size() != m.n_hypotheses()) {
    throw std::invalid_argument("prior score table does not match hypothesis count");
  }
  const Bitset& set = ConsistentSet(m, d, cache);
  CheckConsistent(set, d);
  std::vector<double> weights(m.n_hypotheses(), 0.0);
  if (weighting == LpWeighting::kRank) {
    std::map<std::uint32_t, std::size_t> dense_rank;
    set.ForEach([&](std::size_t h) { dense_rank.emplace(scores.scores[h], 0); });
    std::size_t rank = 0;
    for (auto& [score, r] : dense_rank) r = rank++;
    set.ForEach([&](std::size_t h) {
      weights[h] = 1.0 / static_cast<double>(1 + dense_rank[scores.scores[h]]);
    });
  } else {
    bool any_positive = false;
    set.ForEach([&](std::size_t h) {
      weights[h] = static_cast<double>(scores.scores[h]);
      any_positive = any_positive || weights[h] > 0.0;
    });
    if (!any_positive) set.ForEach([&](std::size_t h) { weights[h] = 1.0; });
  }
  double total = 0.0;
  for (double w : weights) total += w;
  for (double& w : weights) w /= total;
  return Posterior(std::move(weights));
}

std::string_view ListenerName(ListenerKind kind) {
  switch (kind) {
    case ListenerKind::kL0: return "l0";
    case ListenerKind::kL1: return "l1";
    case ListenerKind::kLp: return "lp";
  }
  return "?";
}

ListenerKind ParseListener(std::string_view name) {
  if (name == "l0") return ListenerKind::kL0;
  if (name == "l1") return ListenerKind::kL1;
  if (name == "lp") return ListenerKind::kLp;
  throw std::invalid_argument("unknown listener '" + std::string(name) + "'");
}

Posterior ListenerPosterior(ListenerKind kind, const MeaningMatrix& m,
                            const ExampleSequence& d, ConsistentSetCache& cache,
                            const PriorScores* scores, InferenceCounters* counters) {
  switch (kind) {
    case ListenerKind::kL0: return L0Posterior(m, d, cache);
    case ListenerKind::kL1: return L1Posterior(m, d, cache, counters);
    case ListenerKind::kLp:
      if (scores == nullptr) {
        throw std::invalid_argument("the lp listener needs prior scores for this game");
      }
      return LpPosterior(m, d, *scores, cache);
  }
  throw std::invalid_argument("unknown listener kind");
}

}  // namespace pragsynth
