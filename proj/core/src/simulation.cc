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

#include "pragsynth/simulation.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "pragsynth/errors.h"

namespace pragsynth {
namespace {

constexpr std::uint64_t kTargetStream = 0;
constexpr std::uint64_t kSpeakerStream = 1;
constexpr std::uint64_t kListenerStream = 2;

// Runs fn(i) for i in [0, n) on a small pool. fn must only touch slot i of
// any shared output.
template <typename Fn>
void ParallelFor(std::size_t n, std::size_t threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

void Validate(const GameView& game, const ExperimentConfig& config) {
  if (game.matrix == nullptr) throw std::invalid_argument("game has no meaning matrix");
  if (config.trials == 0) throw std::invalid_argument("trials must be at least 1");
  for (HypothesisId t : config.targets) {
    if (Index(t) >= game.matrix->n_hypotheses()) {
      throw std::out_of_range("target hypothesis out of range");
    }
  }
  if (config.listener == ListenerKind::kLp && game.scores == nullptr) {
    throw std::invalid_argument("the lp listener needs prior scores for this game");
  }
}

std::string Fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

HypothesisId TrialTarget(const GameView& game, const ExperimentConfig& config,
                         std::size_t trial) {
  CounterRng rng = TrialRng(config.seed, trial).Split(kTargetStream);
  if (!config.targets.empty()) return config.targets[rng.Below(config.targets.size())];
  return HypothesisAt(rng.Below(game.matrix->n_hypotheses()));
}

EpisodeResult RunEpisode(const GameView& game, const ExperimentConfig& config,
                         HypothesisId target, const CounterRng& rng, GuessMode mode) {
  const MeaningMatrix& m = *game.matrix;
  if (Index(target) >= m.n_hypotheses()) throw std::out_of_range("target out of range");
  EpisodeResult result;
  result.target = target;
  SpeakerState speaker(target, rng.Split(kSpeakerStream));
  CounterRng listener_rng = rng.Split(kListenerStream);
  ConsistentSetCache cache;
  for (std::size_t round = 1; round <= config.max_rounds; ++round) {
    try {
      SpeakerNext(config.speaker, m, speaker, cache);
    } catch (const ExhaustedSpeakerError&) {
      result.speaker_exhausted = true;
      break;
    }
    const Posterior posterior =
        ListenerPosterior(config.listener, m, speaker.used, cache, game.scores);
    const HypothesisId guess = mode == GuessMode::kTop1
                                   ? posterior.Top1()
                                   : posterior.Sample(listener_rng.Uniform());
    result.guesses.push_back(guess);
    result.rounds_used = round;
    if (guess == target) {
      result.success = true;
      break;
    }
  }
  result.transcript = speaker.used;
  return result;
}

std::vector<CurveRow> SuccessCurve(const GameView& game, const ExperimentConfig& config,
                                   std::size_t max_budget, std::size_t first_budget) {
  Validate(game, config);
  if (first_budget > max_budget) throw std::invalid_argument("empty budget range");
  const MeaningMatrix& m = *game.matrix;
  const std::size_t n_budgets = max_budget - first_budget + 1;
  std::vector<std::vector<char>> hits(config.trials);
  ParallelFor(config.trials, config.threads, [&](std::size_t trial) {
    const CounterRng rng = TrialRng(config.seed, trial);
    const HypothesisId target = TrialTarget(game, config, trial);
    SpeakerState speaker(target, rng.Split(kSpeakerStream));
    CounterRng listener_rng = rng.Split(kListenerStream);
    ConsistentSetCache cache;
    for (std::size_t i = 0; i < max_budget; ++i) {
      try {
        SpeakerNext(config.speaker, m, speaker, cache);
      } catch (const ExhaustedSpeakerError&) {
        break;
      }
    }
    std::vector<char>& row = hits[trial];
    row.resize(n_budgets);
    for (std::size_t b = 0; b < n_budgets; ++b) {
      const std::size_t n = std::min(first_budget + b, speaker.used.size());
      const ExampleSequence d(speaker.used.Prefix(n));
      const Posterior posterior =
          ListenerPosterior(config.listener, m, d, cache, game.scores);
      row[b] = posterior.Sample(listener_rng.Uniform()) == target;
    }
  });
  std::vector<CurveRow> rows(n_budgets);
  for (std::size_t b = 0; b < n_budgets; ++b) {
    rows[b].n_symbols = first_budget + b;
    rows[b].trials = config.trials;
    for (const auto& row : hits) rows[b].successes += row[b];
  }
  return rows;
}

MeanSymbolsResult MeanSymbols(const GameView& game, const ExperimentConfig& config) {
  Validate(game, config);
  std::vector<EpisodeResult> episodes(config.trials);
  ParallelFor(config.trials, config.threads, [&](std::size_t trial) {
    episodes[trial] = RunEpisode(game, config, TrialTarget(game, config, trial),
                                 TrialRng(config.seed, trial), GuessMode::kTop1);
  });
  MeanSymbolsResult result;
  result.trials = config.trials;
  std::map<std::size_t, std::pair<std::size_t, double>> by_target;
  double sum = 0.0;
  for (const EpisodeResult& e : episodes) {
    const double rounds =
        e.success ? static_cast<double>(e.rounds_used) : static_cast<double>(config.max_rounds);
    if (!e.success) ++result.failures;
    result.rounds.push_back(rounds);
    sum += rounds;
    auto& [count, total] = by_target[Index(e.target)];
    ++count;
    total += rounds;
  }
  const double n = static_cast<double>(result.trials);
  result.mean = sum / n;
  double sq = 0.0;
  for (double r : result.rounds) sq += (r - result.mean) * (r - result.mean);
  result.std = result.trials > 1 ? std::sqrt(sq / (n - 1.0)) : 0.0;
  for (const auto& [target, stats] : by_target) {
    result.per_target.push_back(
        {HypothesisAt(target), stats.first, stats.second / static_cast<double>(stats.first)});
  }
  return result;
}

void WriteCurveCsv(std::ostream& out, const ExperimentConfig& config,
                   const std::vector<CurveRow>& rows, bool header) {
  if (header) out << "speaker,listener,n_symbols,trials,successes,rate,seed\n";
  for (const CurveRow& row : rows) {
    out << SpeakerName(config.speaker) << ',' << ListenerName(config.listener) << ','
        << row.n_symbols << ',' << row.trials << ',' << row.successes << ','
        << Fixed6(row.rate()) << ',' << config.seed << '\n';
  }
}

void WriteMeansCsv(std::ostream& out, const ExperimentConfig& config,
                   const MeanSymbolsResult& result, bool header) {
  if (header) out << "speaker,listener,trials,mean,std,failures,seed\n";
  out << SpeakerName(config.speaker) << ',' << ListenerName(config.listener) << ','
      << result.trials << ',' << Fixed6(result.mean) << ',' << Fixed6(result.std) << ','
      << result.failures << ',' << config.seed << '\n';
}

}  // namespace pragsynth
