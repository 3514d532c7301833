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


#include "pragsynth/meaning_matrix.h"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracle.h"
#include "pragsynth/bitset.h"
#include "pragsynth/errors.h"
#include "pragsynth/segment_game.h"
#include "test_util.h"

namespace pragsynth {
namespace {

using testing::MatrixFromTable;
using testing::RandomTable;

TEST(Bitset, BasicOperations) {
  Bitset a(130);
  EXPECT_TRUE(a.none());
  a.set(0);
  a.set(64);
  a.set(129);
  EXPECT_EQ(a.count(), 3u);
  EXPECT_TRUE(a.test(129));
  a.reset(64);
  EXPECT_FALSE(a.test(64));
  EXPECT_EQ(a.ToIndices(), (std::vector<std::size_t>{0, 129}));

  Bitset b(130, true);
  EXPECT_EQ(b.count(), 130u);
  EXPECT_EQ(a.IntersectCount(b), 2u);
  b.reset(0);
  EXPECT_EQ((a & b).ToIndices(), (std::vector<std::size_t>{129}));
}

TEST(Bitset, SizeMismatchThrows) {
  Bitset a(10), b(11);
  EXPECT_THROW(a &= b, std::invalid_argument);
}

TEST(MeaningMatrix, SegmentRowsHaveFourOrSixHypotheses) {
  const segment::SegmentGame game = segment::BuildSegmentGame();
  for (std::size_t u = 0; u < 8; ++u) {
    // Brute force: segments [s,e] over 4 cells containing (or not) cell u/2.
    const int cell = static_cast<int>(u / 2);
    std::size_t expected = 0;
    for (int s = 0; s < 4; ++s) {
      for (int e = s; e < 4; ++e) expected += ((s <= cell && cell <= e) == (u % 2 == 0));
    }
    EXPECT_EQ(game.matrix.AtomicListener(UtteranceAt(u)).count(), expected) << u;
    EXPECT_TRUE(expected == 4 || expected == 6);
  }
}

TEST(MeaningMatrix, SegmentCellOneOccupiedListener) {
  const segment::SegmentGame game = segment::BuildSegmentGame();
  // Segments containing cell 1: [0,1] [0,2] [0,3] [1,1] [1,2] [1,3].
  EXPECT_EQ(game.matrix.AtomicListener(UtteranceAt(2)).ToIndices(),
            (std::vector<std::size_t>{1, 2, 3, 4, 5, 6}));
}

TEST(MeaningMatrix, SegmentSpeakerOfOneTwo) {
  const segment::SegmentGame game = segment::BuildSegmentGame();
  const auto list = game.matrix.SpeakerList(HypothesisAt(5));
  std::vector<std::size_t> ids;
  for (UtteranceId u : list) ids.push_back(Index(u));
  EXPECT_EQ(ids, (std::vector<std::size_t>{1, 2, 4, 7}));
  EXPECT_EQ(game.matrix.AtomicSpeaker(HypothesisAt(5)).count(), 4u);
}

TEST(MeaningMatrix, SingleHypothesisConsistentWithAll) {
  const MeaningMatrix m = MeaningMatrix::Build(1, 5, [](HypothesisId, UtteranceId) { return true; });
  for (std::size_t u = 0; u < 5; ++u) {
    EXPECT_EQ(m.AtomicListener(UtteranceAt(u)).ToIndices(), std::vector<std::size_t>{0});
  }
  EXPECT_EQ(m.AtomicSpeaker(HypothesisAt(0)).count(), 5u);
}

TEST(MeaningMatrix, SingleUtteranceSpeaker) {
  const MeaningMatrix m = MeaningMatrix::Build(3, 1, [](HypothesisId, UtteranceId) { return true; });
  EXPECT_EQ(m.AtomicSpeaker(HypothesisAt(2)).ToIndices(), std::vector<std::size_t>{0});
}

TEST(MeaningMatrix, EmptyDimensionsRejected) {
  auto any = [](HypothesisId, UtteranceId) { return true; };
  EXPECT_THROW(MeaningMatrix::Build(0, 3, any), std::invalid_argument);
  EXPECT_THROW(MeaningMatrix::Build(3, 0, any), std::invalid_argument);
}

TEST(MeaningMatrix, InvalidIdsThrowRangeError) {
  const segment::SegmentGame game = segment::BuildSegmentGame();
  EXPECT_THROW(game.matrix.AtomicListener(UtteranceAt(8)), std::out_of_range);
  EXPECT_THROW(game.matrix.AtomicSpeaker(HypothesisAt(10)), std::out_of_range);
}

TEST(MeaningMatrixProperty, DualityOnRandomMatrices) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n_h = 1 + rng() % 150, n_u = 1 + rng() % 90;
    const auto table = RandomTable(rng, n_h, n_u, 0.05 + 0.9 * (trial % 10) / 10.0);
    const MeaningMatrix m = MatrixFromTable(table);
    std::size_t max_l = 0, max_s = 0;
    for (std::size_t h = 0; h < n_h; ++h) {
      for (std::size_t u = 0; u < n_u; ++u) {
        const bool in_row = m.AtomicListener(UtteranceAt(u)).test(h);
        const bool in_col = m.AtomicSpeaker(HypothesisAt(h)).test(u);
        ASSERT_EQ(in_row, in_col);
        ASSERT_EQ(in_row, static_cast<bool>(table[h][u]));
      }
      max_s = std::max(max_s, m.AtomicSpeaker(HypothesisAt(h)).count());
      ASSERT_EQ(m.SpeakerList(HypothesisAt(h)).size(), m.AtomicSpeaker(HypothesisAt(h)).count());
    }
    for (std::size_t u = 0; u < n_u; ++u) {
      max_l = std::max(max_l, m.AtomicListener(UtteranceAt(u)).count());
    }
    EXPECT_EQ(m.MaxListenerSize(), max_l);
    EXPECT_EQ(m.MaxSpeakerSize(), max_s);
  }
}

TEST(MeaningMatrix, FromRowsMatchesBuild) {
  std::mt19937_64 rng(3);
  const auto table = RandomTable(rng, 70, 33, 0.3);
  const MeaningMatrix built = MatrixFromTable(table);
  std::vector<Bitset> rows;
  for (std::size_t u = 0; u < 33; ++u) rows.push_back(built.AtomicListener(UtteranceAt(u)));
  EXPECT_EQ(MeaningMatrix::FromRows(70, std::move(rows)), built);
}

TEST(MeaningMatrixIo, RoundTrip) {
  std::mt19937_64 rng(5);
  const MeaningMatrix m = MatrixFromTable(RandomTable(rng, 100, 65, 0.4));
  std::stringstream buf;
  m.Save(buf);
  const std::string bytes = buf.str();
  EXPECT_EQ(bytes.substr(0, 8), std::string("PRAGMM1\0", 8));
  const MeaningMatrix back = MeaningMatrix::Load(buf);
  EXPECT_EQ(back, m);
  EXPECT_EQ(back.Checksum(), m.Checksum());
}

TEST(MeaningMatrixIo, FileRoundTrip) {
  testing::TempDir dir("mm");
  const segment::SegmentGame game = segment::BuildSegmentGame();
  game.matrix.SaveFile(dir.path() / "seg.bin");
  EXPECT_EQ(MeaningMatrix::LoadFile(dir.path() / "seg.bin"), game.matrix);
  EXPECT_THROW(MeaningMatrix::LoadFile(dir.path() / "missing.bin"), FormatError);
}

TEST(MeaningMatrixIo, RejectsCorruption) {
  const segment::SegmentGame game = segment::BuildSegmentGame();
  std::stringstream buf;
  game.matrix.Save(buf);
  const std::string good = buf.str();

  std::string bad_magic = good;
  bad_magic[0] = 'X';
  std::stringstream a(bad_magic);
  EXPECT_THROW(MeaningMatrix::Load(a), FormatError);

  std::string flipped = good;
  flipped[good.size() - 1] ^= 0x01;  // a column bit
  std::stringstream b(flipped);
  EXPECT_THROW(MeaningMatrix::Load(b), FormatError);

  std::stringstream c(good.substr(0, good.size() - 3));
  EXPECT_THROW(MeaningMatrix::Load(c), FormatError);

  std::string bad_checksum = good;
  bad_checksum[24] ^= 0x10;
  std::stringstream d(bad_checksum);
  EXPECT_THROW(MeaningMatrix::Load(d), FormatError);
}

}  // namespace
}  // namespace pragsynth
