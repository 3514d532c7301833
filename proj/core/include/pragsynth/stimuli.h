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

#ifndef PRAGSYNTH_STIMULI_H_
#define PRAGSYNTH_STIMULI_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "pragsynth/grid_dsl.h"

namespace pragsynth {

inline constexpr int kStimulusCount = 10;
inline constexpr std::uint64_t kDefaultStimulusSeed = 2020;

struct Stimulus {
  int id = 0;
  grid::Pattern pattern{};
  grid::Program program;
};

enum class ColorFamily { kStripes, kCheckers, kOther };
enum class FillFamily { kSolid, kHollow, kOther };

ColorFamily ClassifyColor(const grid::Program& program, const grid::Pattern& pattern);
FillFamily ClassifyFill(const grid::Pattern& pattern);

// Ten distinct stimuli drawn with `seed` from the canonical space: three
// solid and two hollow renderings for each of stripes and checkers. Needs
// representative programs in `space`.
std::vector<Stimulus> SelectStimuli(const grid::CanonicalSpace& space,
                                    std::uint64_t seed = kDefaultStimulusSeed);

// Text fixture:
//   pragsynth-stimuli v1
//   stimulus <id>
//   program <program text>
//   <7 pattern lines>
// repeated per stimulus. Loading checks that each program renders to its
// pattern.
void SaveStimuli(const std::vector<Stimulus>& stimuli, std::ostream& out);
std::vector<Stimulus> LoadStimuli(std::istream& in);
std::vector<Stimulus> LoadStimuliFile(const std::filesystem::path& path);

}  // namespace pragsynth

#endif  // PRAGSYNTH_STIMULI_H_
