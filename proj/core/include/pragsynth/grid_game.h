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

#ifndef PRAGSYNTH_GRID_GAME_H_
#define PRAGSYNTH_GRID_GAME_H_

#include <filesystem>

#include "pragsynth/grid_dsl.h"
#include "pragsynth/meaning_matrix.h"
#include "pragsynth/pragmatics.h"

namespace pragsynth::grid {

// Everything inference needs for the grid domain.
struct GridGame {
  CanonicalSpace space;
  MeaningMatrix matrix;
  PriorScores scores;
};

PriorScores GridPriorScores(const CanonicalSpace& space);

// Enumerates, deduplicates and builds the 343-column meaning matrix.
GridGame BuildGridGame();

// Recovers the canonical patterns from a grid meaning matrix (each hypothesis
// satisfies exactly one example per cell). Representatives are left empty.
// Throws FormatError if the matrix is not a grid matrix.
CanonicalSpace SpaceFromMatrix(const MeaningMatrix& m);

// Loads the matrix cache at `path` if it exists, otherwise builds the game
// and writes the cache. An empty path always builds.
GridGame LoadOrBuildGridGame(const std::filesystem::path& path);

}  // namespace pragsynth::grid

#endif  // PRAGSYNTH_GRID_GAME_H_
