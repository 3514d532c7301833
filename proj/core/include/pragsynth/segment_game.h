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

#ifndef PRAGSYNTH_SEGMENT_GAME_H_
#define PRAGSYNTH_SEGMENT_GAME_H_

#include <string>
#include <string_view>
#include <vector>

#include "pragsynth/ids.h"
#include "pragsynth/meaning_matrix.h"

namespace pragsynth::segment {

inline constexpr int kCells = 4;

// Contiguous segment [start, end] on a 4-cell line.
struct Segment {
  int start = 0;
  int end = 0;
  friend bool operator==(const Segment&, const Segment&) = default;
};

// Whether `cell` is covered by the segment.
struct CellExample {
  int cell = 0;
  bool occupied = false;
  friend bool operator==(const CellExample&, const CellExample&) = default;
};

// Hypotheses ordered by (start, end): h0=[0,0], h1=[0,1], ..., h9=[3,3].
// Utterances interleaved per cell: u_{2i} = (i, occupied), u_{2i+1} = (i, empty).
struct SegmentGame {
  std::vector<Segment> hypotheses;
  std::vector<CellExample> utterances;
  MeaningMatrix matrix;
};

bool Satisfies(const Segment& s, const CellExample& e);

SegmentGame BuildSegmentGame();

UtteranceId UtteranceFor(const CellExample& e);

// "[1,2]"
std::string ToString(const Segment& s);
// "1:occ" / "1:empty"
std::string ToString(const CellExample& e);
// Inverse of ToString(CellExample); also accepts "1:1"/"1:0".
// Throws std::invalid_argument on malformed text.
CellExample ParseCellExample(std::string_view text);

}  // namespace pragsynth::segment

#endif  // PRAGSYNTH_SEGMENT_GAME_H_
