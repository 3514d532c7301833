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

#include "pragsynth/segment_game.h"

#include <span>
#include <stdexcept>

namespace pragsynth::segment {

bool Satisfies(const Segment& s, const CellExample& e) {
  const bool covered = s.start <= e.cell && e.cell <= s.end;
  return covered == e.occupied;
}

SegmentGame BuildSegmentGame() {
  std::vector<Segment> hypotheses;
  for (int start = 0; start < kCells; ++start) {
    for (int end = start; end < kCells; ++end) hypotheses.push_back({start, end});
  }
  std::vector<CellExample> utterances;
  for (int cell = 0; cell < kCells; ++cell) {
    utterances.push_back({cell, true});
    utterances.push_back({cell, false});
  }
  MeaningMatrix matrix = MeaningMatrix::Build(
      std::span<const Segment>(hypotheses), std::span<const CellExample>(utterances),
      [](const Segment& s, const CellExample& e) { return Satisfies(s, e); });
  return {std::move(hypotheses), std::move(utterances), std::move(matrix)};
}

UtteranceId UtteranceFor(const CellExample& e) {
  if (e.cell < 0 || e.cell >= kCells) throw std::out_of_range("cell out of range");
  return UtteranceAt(static_cast<std::size_t>(2 * e.cell + (e.occupied ? 0 : 1)));
}

std::string ToString(const Segment& s) {
  return "[" + std::to_string(s.start) + "," + std::to_string(s.end) + "]";
}

std::string ToString(const CellExample& e) {
  return std::to_string(e.cell) + (e.occupied ? ":occ" : ":empty");
}

CellExample ParseCellExample(std::string_view text) {
  const auto colon = text.find(':');
  if (colon != 1 || text.size() < 3 || text[0] < '0' || text[0] >= '0' + kCells) {
    throw std::invalid_argument("bad segment example '" + std::string(text) +
                                "', expected CELL:occ or CELL:empty");
  }
  const std::string_view value = text.substr(2);
  CellExample e{text[0] - '0', false};
  if (value == "occ" || value == "1") {
    e.occupied = true;
  } else if (value != "empty" && value != "0") {
    throw std::invalid_argument("bad segment example value '" + std::string(value) + "'");
  }
  return e;
}

}  // namespace pragsynth::segment
