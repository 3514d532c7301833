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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "pragsynth/segment_game.h"
#include "test_util.h"

namespace pragsynth {
namespace {

class SegmentSimulation : public ::testing::Test {
 protected:
  segment::SegmentGame game_ = segment::BuildSegmentGame();
  GameView view() const { return {&game_.matrix, nullptr}; }
};

TEST_F(SegmentSimulation, GreedyPragmaticPairSolvesQuickly) {
  ExperimentConfig config;
  config.speaker = SpeakerKind::kS1Greedy;
  config.listener = ListenerKind::kL1;
  double total = 0.0;
  for (std::size_t h = 0; h < 10; ++h) {
    const EpisodeResult r = RunEpisode(view(), config, HypothesisAt(h), TrialRng(1, h));
    ASSERT_TRUE(r.success) << h;
    ASSERT_EQ(r.guesses.size(), r.rounds_used);
    ASSERT_EQ(r.transcript.size(), r.rounds_used);
    if (h == 5) EXPECT_LE(r.rounds_used, 3u);
    total += static_cast<double>(r.rounds_used);
  }
  EXPECT_LE(total / 10.0, 2.5);
}

TEST_F(SegmentSimulation, MeanSymbolsOverAllTargets) {
  ExperimentConfig config;
  config.speaker = SpeakerKind::kS1Greedy;
  config.trials = 200;
  for (std::size_t h = 0; h < 10; ++h) config.targets.push_back(HypothesisAt(h));
  const MeanSymbolsResult r = MeanSymbols(view(), config);
  EXPECT_LE(r.mean, 2.5);
  EXPECT_EQ(r.failures, 0u);
  EXPECT_EQ(r.per_target.size(), 10u);
  EXPECT_EQ(r.rounds.size(), 200u);
}

TEST_F(SegmentSimulation, ZeroRoundsFails) {
  ExperimentConfig config;
  config.max_rounds = 0;
  const EpisodeResult r = RunEpisode(view(), config, HypothesisAt(5), TrialRng(1, 0));
  EXPECT_FALSE(r.success);
  EXPECT_EQ(r.rounds_used, 0u);
}

TEST(Simulation, UniquelyIdentifyingExampleSolvesInOneRound) {
  // Every hypothesis owns one private utterance.
  const MeaningMatrix m = MeaningMatrix::Build(
      6, 6, [](HypothesisId h, UtteranceId u) { return Index(h) == Index(u); });
  for (ListenerKind listener : {ListenerKind::kL0, ListenerKind::kL1}) {
    ExperimentConfig config;
    config.speaker = SpeakerKind::kS0;
    config.listener = listener;
    const EpisodeResult r = RunEpisode({&m, nullptr}, config, HypothesisAt(3), TrialRng(5, 0));
    EXPECT_TRUE(r.success);
    EXPECT_EQ(r.rounds_used, 1u);
  }
}

TEST_F(SegmentSimulation, CurveReachesOneWhenEverythingIsSaid) {
  ExperimentConfig config;
  config.trials = 500;
  const auto rows = SuccessCurve(view(), config, 6);
  ASSERT_EQ(rows.size(), 6u);
  // Each segment satisfies four examples, one per cell.
  for (std::size_t b = 3; b < 6; ++b) EXPECT_EQ(rows[b].rate(), 1.0) << b + 1;
}

TEST_F(SegmentSimulation, CurveWithoutSymbolsIsChance) {
  ExperimentConfig config;
  config.trials = 20000;
  const auto rows = SuccessCurve(view(), config, 0, 0);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].n_symbols, 0u);
  const double sigma = std::sqrt(0.1 * 0.9 / 20000.0);
  EXPECT_NEAR(rows[0].rate(), 0.1, 3 * sigma);
}

TEST_F(SegmentSimulation, Validation) {
  ExperimentConfig config;
  config.trials = 0;
  EXPECT_THROW(MeanSymbols(view(), config), std::invalid_argument);
  config.trials = 3;
  config.listener = ListenerKind::kLp;
  EXPECT_THROW(MeanSymbols(view(), config), std::invalid_argument);
  config.listener = ListenerKind::kL1;
  config.targets = {HypothesisAt(10)};
  EXPECT_THROW(MeanSymbols(view(), config), std::out_of_range);
  config.targets.clear();
  EXPECT_THROW(SuccessCurve(view(), config, 2, 3), std::invalid_argument);
}

TEST(SimulationDeterminism, ByteIdenticalCsvAcrossRunsAndThreads) {
  const grid::GridGame& game = testing::SharedGridGame();
  const GameView view{&game.matrix, &game.scores};
  auto run = [&](std::size_t threads) {
    ExperimentConfig config;
    config.trials = 60;
    config.seed = 1234;
    config.threads = threads;
    std::ostringstream out;
    WriteMeansCsv(out, config, MeanSymbols(view, config));
    config.listener = ListenerKind::kLp;
    WriteCurveCsv(out, config, SuccessCurve(view, config, 5));
    return out.str();
  };
  const std::string a = run(1);
  EXPECT_EQ(a, run(1));
  EXPECT_EQ(a, run(4));
  EXPECT_EQ(a.rfind("speaker,listener,trials,mean,std,failures,seed\n", 0), 0u);
  EXPECT_NE(a.find("speaker,listener,n_symbols,trials,successes,rate,seed\n"), std::string::npos);
}

TEST(SimulationCsv, Format) {
  ExperimentConfig config;
  config.speaker = SpeakerKind::kS0;
  config.listener = ListenerKind::kL0;
  config.seed = 9;
  std::ostringstream out;
  WriteCurveCsv(out, config, {{1, 4, 1}, {2, 4, 3}});
  EXPECT_EQ(out.str(),
            "speaker,listener,n_symbols,trials,successes,rate,seed\n"
            "s0,l0,1,4,1,0.250000,9\n"
            "s0,l0,2,4,3,0.750000,9\n");
  MeanSymbolsResult r;
  r.trials = 3;
  r.mean = 2.5;
  r.std = 1.0 / 3.0;
  r.failures = 1;
  std::ostringstream means;
  WriteMeansCsv(means, config, r, false);
  EXPECT_EQ(means.str(), "s0,l0,3,2.500000,0.333333,1,9\n");
}

TEST(SimulationDominance, PragmaticPairNeedsFewerSymbols) {
  const grid::GridGame& game = testing::SharedGridGame();
  const GameView view{&game.matrix, &game.scores};
  auto mean = [&](SpeakerKind s, ListenerKind l) {
    ExperimentConfig config;
    config.speaker = s;
    config.listener = l;
    config.trials = 500;
    return MeanSymbols(view, config).mean;
  };
  const double s1_l1 = mean(SpeakerKind::kS1Sample, ListenerKind::kL1);
  const double s1_l0 = mean(SpeakerKind::kS1Sample, ListenerKind::kL0);
  const double s0_l0 = mean(SpeakerKind::kS0, ListenerKind::kL0);
  EXPECT_LT(s1_l1, s1_l0);
  EXPECT_LT(s1_l1, s0_l0);
}

}  // namespace
}  // namespace pragsynth
