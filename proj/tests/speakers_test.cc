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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "oracle.h"
#include "pragsynth/errors.h"
#include "pragsynth/grid_dsl.h"
#include "pragsynth/segment_game.h"
#include "test_util.h"

namespace pragsynth {
namespace {

using testing::Seq;

const HypothesisId kH5 = HypothesisAt(5);

testing::Table SegmentTable() {
  testing::Table t(10, std::vector<bool>(8));
  const segment::SegmentGame game = segment::BuildSegmentGame();
  for (int h = 0; h < 10; ++h) {
    for (int u = 0; u < 8; ++u) {
      const int cell = u / 2;
      const bool covered = game.hypotheses[h].start <= cell && cell <= game.hypotheses[h].end;
      t[h][u] = covered == (u % 2 == 0);
    }
  }
  return t;
}

// Draws `n` next utterances from fresh states that share `used` and checks
// each frequency against `expected` within three standard deviations.
void ExpectFrequencies(SpeakerKind kind, const MeaningMatrix& m, HypothesisId target,
                       const ExampleSequence& used, const std::map<std::size_t, double>& expected,
                       int n) {
  std::map<std::size_t, int> counts;
  ConsistentSetCache cache;
  for (int i = 0; i < n; ++i) {
    SpeakerState state(target, CounterRng(99, static_cast<std::uint64_t>(i)));
    state.used = used;
    ++counts[Index(SpeakerNext(kind, m, state, cache))];
  }
  for (const auto& [u, count] : counts) ASSERT_TRUE(expected.count(u)) << "unexpected " << u;
  for (const auto& [u, p] : expected) {
    const double sigma = std::sqrt(n * p * (1 - p));
    EXPECT_LE(std::abs(counts[u] - n * p), 3 * sigma) << "utterance " << u;
  }
}

TEST(Speakers, ParseAndName) {
  EXPECT_EQ(ParseSpeaker("s0"), SpeakerKind::kS0);
  EXPECT_EQ(ParseSpeaker("s1"), SpeakerKind::kS1Sample);
  EXPECT_EQ(ParseSpeaker("s1-greedy"), SpeakerKind::kS1Greedy);
  for (SpeakerKind k : {SpeakerKind::kS0, SpeakerKind::kS1Sample, SpeakerKind::kS1Greedy}) {
    EXPECT_EQ(ParseSpeaker(SpeakerName(k)), k);
  }
  EXPECT_THROW(ParseSpeaker("s2"), std::invalid_argument);
}

TEST(Speakers, S0IsUniformOverTrueExamples) {
  const segment::SegmentGame game = segment::BuildSegmentGame();
  ExpectFrequencies(SpeakerKind::kS0, game.matrix, kH5, {},
                    {{1, 0.25}, {2, 0.25}, {4, 0.25}, {7, 0.25}}, 100000);
}

TEST(Speakers, S1FirstStepIsUniformOnSegment) {
  const auto t = SegmentTable();
  const segment::SegmentGame game = segment::BuildSegmentGame();
  std::map<std::size_t, double> expected;
  for (std::size_t u : {1, 2, 4, 7}) {
    expected[u] = testing::OracleS1Step(t, 5, {}, u);
    EXPECT_NEAR(expected[u], 0.25, 1e-12);
  }
  ExpectFrequencies(SpeakerKind::kS1Sample, game.matrix, kH5, {}, expected, 100000);
}

TEST(Speakers, S1SecondStepFrequencies) {
  const auto t = SegmentTable();
  const segment::SegmentGame game = segment::BuildSegmentGame();
  std::map<std::size_t, double> expected;
  for (std::size_t u : {1, 4, 7}) expected[u] = testing::OracleS1Step(t, 5, {2}, u);
  EXPECT_NEAR(expected[1], 0.4, 1e-12);
  EXPECT_NEAR(expected[4], 0.3, 1e-12);
  ExpectFrequencies(SpeakerKind::kS1Sample, game.matrix, kH5, Seq({2}), expected, 100000);
}

TEST(Speakers, S1FrequenciesOnRandomGame) {
  std::mt19937_64 rng(41);
  const auto t = testing::RandomTable(rng, 25, 8, 0.6);
  const MeaningMatrix m = testing::MatrixFromTable(t);
  std::size_t target = 0;
  while (m.AtomicSpeaker(HypothesisAt(target)).count() < 5) ++target;
  std::map<std::size_t, double> expected;
  for (UtteranceId u : m.SpeakerList(HypothesisAt(target))) {
    expected[Index(u)] = testing::OracleS1Step(t, target, {}, Index(u));
  }
  ExpectFrequencies(SpeakerKind::kS1Sample, m, HypothesisAt(target), {}, expected, 100000);
}

TEST(Speakers, GreedyTakesArgmax) {
  const segment::SegmentGame game = segment::BuildSegmentGame();
  ConsistentSetCache cache;
  SpeakerState state(kH5, CounterRng(1, 0));
  state.used = Seq({2});
  EXPECT_EQ(S1Next(game.matrix, state, true, cache), UtteranceAt(1));
  EXPECT_EQ(state.used, Seq({2, 1}));
}

TEST(Speakers, GreedyTiesGoToLowestId) {
  const segment::SegmentGame game = segment::BuildSegmentGame();
  ConsistentSetCache cache;
  SpeakerState state(kH5, CounterRng(1, 0));
  // First step is uniform over {1, 2, 4, 7}.
  EXPECT_EQ(S1Next(game.matrix, state, true, cache), UtteranceAt(1));
}

TEST(Speakers, ExhaustionThrows) {
  const segment::SegmentGame game = segment::BuildSegmentGame();
  ConsistentSetCache cache;
  for (SpeakerKind kind : {SpeakerKind::kS0, SpeakerKind::kS1Sample, SpeakerKind::kS1Greedy}) {
    SpeakerState state(kH5, CounterRng(2, 0));
    state.used = Seq({1, 2, 4, 7});
    EXPECT_THROW(SpeakerNext(kind, game.matrix, state, cache), ExhaustedSpeakerError);
    EXPECT_EQ(state.used.size(), 4u);
  }
}

TEST(Speakers, GridFirstExampleIsACellReadout) {
  const grid::GridGame& game = testing::SharedGridGame();
  ConsistentSetCache cache;
  for (std::size_t h = 0; h < game.space.size(); h += 1013) {
    for (SpeakerKind kind : {SpeakerKind::kS0, SpeakerKind::kS1Sample}) {
      SpeakerState state(HypothesisAt(h), CounterRng(3, h));
      const UtteranceId u = SpeakerNext(kind, game.matrix, state, cache);
      EXPECT_TRUE(grid::ExampleConsistent(game.space.patterns[h], grid::ExampleAt(u)));
    }
  }
}

TEST(SpeakersProperty, NeverInconsistentNeverRepeated) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const MeaningMatrix m = testing::MatrixFromTable(testing::RandomTable(rng, 30, 20, 0.5));
    const HypothesisId target = HypothesisAt(rng() % 30);
    for (SpeakerKind kind : {SpeakerKind::kS0, SpeakerKind::kS1Sample, SpeakerKind::kS1Greedy}) {
      SpeakerState state(target, CounterRng(trial, 7));
      ConsistentSetCache cache;
      std::set<std::size_t> seen;
      for (;;) {
        UtteranceId u;
        try {
          u = SpeakerNext(kind, m, state, cache);
        } catch (const ExhaustedSpeakerError&) {
          break;
        }
        ASSERT_TRUE(m.Consistent(target, u));
        ASSERT_TRUE(seen.insert(Index(u)).second);
      }
      ASSERT_EQ(seen.size(), m.AtomicSpeaker(target).count());
    }
  }
}

}  // namespace
}  // namespace pragsynth
