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

#include "pragsynth/grid_game.h"

#include "pragsynth/errors.h"

namespace pragsynth::grid {

PriorScores GridPriorScores(const CanonicalSpace& space) {
  PriorScores scores;
  scores.scores.reserve(space.size());
  for (const Pattern& p : space.patterns) scores.scores.push_back(PriorScore(p));
  return scores;
}

GridGame BuildGridGame() {
  CanonicalSpace space = BuildCanonicalSpace();
  MeaningMatrix matrix = BuildGridMatrix(space);
  PriorScores scores = GridPriorScores(space);
  return {std::move(space), std::move(matrix), std::move(scores)};
}

CanonicalSpace SpaceFromMatrix(const MeaningMatrix& m) {
  if (m.n_utterances() != static_cast<std::size_t>(kExampleCount)) {
    throw FormatError("not a grid meaning matrix");
  }
  CanonicalSpace space;
  space.patterns.resize(m.n_hypotheses());
  for (std::size_t h = 0; h < m.n_hypotheses(); ++h) {
    const auto examples = m.SpeakerList(HypothesisAt(h));
    if (examples.size() != static_cast<std::size_t>(kCellCount)) {
      throw FormatError("grid hypothesis without exactly one symbol per cell");
    }
    std::array<bool, kCellCount> filled{};
    for (UtteranceId u : examples) {
      const AtomicExample e = ExampleAt(u);
      const int cell = CellIndex(e.x, e.y);
      if (filled[cell]) throw FormatError("grid hypothesis with two symbols in one cell");
      filled[cell] = true;
      space.patterns[h][cell] = e.symbol;
    }
  }
  return space;
}

GridGame LoadOrBuildGridGame(const std::filesystem::path& path) {
  if (path.empty()) return BuildGridGame();
  if (std::filesystem::exists(path)) {
    MeaningMatrix matrix = MeaningMatrix::LoadFile(path);
    CanonicalSpace space = SpaceFromMatrix(matrix);
    PriorScores scores = GridPriorScores(space);
    return {std::move(space), std::move(matrix), std::move(scores)};
  }
  GridGame game = BuildGridGame();
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  game.matrix.SaveFile(path);
  return game;
}

}  // namespace pragsynth::grid
