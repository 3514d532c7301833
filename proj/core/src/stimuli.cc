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

#include "pragsynth/stimuli.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>

#include "pragsynth/errors.h"
#include "pragsynth/rng.h"

namespace pragsynth {
namespace {

constexpr std::string_view kHeader = "pragsynth-stimuli v1";

struct Slot {
  ColorFamily color;
  FillFamily fill;
};

constexpr std::array<Slot, kStimulusCount> kSlots = {{
    {ColorFamily::kStripes, FillFamily::kSolid},
    {ColorFamily::kStripes, FillFamily::kHollow},
    {ColorFamily::kCheckers, FillFamily::kSolid},
    {ColorFamily::kCheckers, FillFamily::kHollow},
    {ColorFamily::kStripes, FillFamily::kSolid},
    {ColorFamily::kStripes, FillFamily::kHollow},
    {ColorFamily::kCheckers, FillFamily::kSolid},
    {ColorFamily::kCheckers, FillFamily::kHollow},
    {ColorFamily::kStripes, FillFamily::kSolid},
    {ColorFamily::kCheckers, FillFamily::kSolid},
}};

int DistinctColors(const grid::Pattern& p) {
  std::set<int> colors;
  for (grid::Symbol s : p) {
    if (s != grid::Symbol::kPebble) colors.insert((static_cast<int>(s) - 1) % 3);
  }
  return static_cast<int>(colors.size());
}

bool LargeEnough(const grid::Program& p) {
  return p.box[2] - p.box[0] >= 2 && p.box[3] - p.box[1] >= 2;
}

std::string ReadLine(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("truncated stimuli file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

ColorFamily ClassifyColor(const grid::Program& program, const grid::Pattern& pattern) {
  const bool varying = program.color == grid::ColorFn::kIdentity ||
                       program.color == grid::ColorFn::kTwiceParity;
  if (!varying || DistinctColors(pattern) < 2) return ColorFamily::kOther;
  return program.arg == grid::CoordArg::kXPlusY ? ColorFamily::kCheckers
                                                : ColorFamily::kStripes;
}

FillFamily ClassifyFill(const grid::Pattern& pattern) {
  int x0 = grid::kGridSize, y0 = grid::kGridSize, x1 = -1, y1 = -1;
  for (int y = 0; y < grid::kGridSize; ++y) {
    for (int x = 0; x < grid::kGridSize; ++x) {
      if (grid::At(pattern, x, y) == grid::Symbol::kPebble) continue;
      x0 = std::min(x0, x);
      y0 = std::min(y0, y);
      x1 = std::max(x1, x);
      y1 = std::max(y1, y);
    }
  }
  if (x1 < 0) return FillFamily::kOther;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      if (grid::At(pattern, x, y) == grid::Symbol::kPebble) return FillFamily::kHollow;
    }
  }
  return FillFamily::kSolid;
}

std::vector<Stimulus> SelectStimuli(const grid::CanonicalSpace& space, std::uint64_t seed) {
  if (space.representatives.size() != space.size()) {
    throw std::invalid_argument("stimulus selection needs representative programs");
  }
  std::vector<Stimulus> out;
  std::set<std::size_t> taken;
  CounterRng rng(seed, 0);
  for (int slot = 0; slot < kStimulusCount; ++slot) {
    std::vector<std::size_t> candidates;
    for (std::size_t h = 0; h < space.size(); ++h) {
      const grid::Program& program = space.representatives[h];
      const grid::Pattern& pattern = space.patterns[h];
      if (taken.count(h) != 0 || !LargeEnough(program)) continue;
      if (ClassifyColor(program, pattern) == kSlots[slot].color &&
          ClassifyFill(pattern) == kSlots[slot].fill) {
        candidates.push_back(h);
      }
    }
    if (candidates.empty()) throw std::runtime_error("no candidate for stimulus slot");
    const std::size_t h = candidates[rng.Below(candidates.size())];
    taken.insert(h);
    out.push_back({slot, space.patterns[h], space.representatives[h]});
  }
  return out;
}

void SaveStimuli(const std::vector<Stimulus>& stimuli, std::ostream& out) {
  out << kHeader << '\n';
  for (const Stimulus& s : stimuli) {
    out << "stimulus " << s.id << '\n'
        << "program " << grid::FormatProgram(s.program) << '\n'
        << grid::FormatPattern(s.pattern);
  }
}

std::vector<Stimulus> LoadStimuli(std::istream& in) {
  if (ReadLine(in) != kHeader) throw FormatError("not a pragsynth-stimuli v1 file");
  std::vector<Stimulus> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Stimulus s;
    if (line.rfind("stimulus ", 0) != 0) throw FormatError("expected 'stimulus <id>'");
    try {
      s.id = std::stoi(line.substr(9));
    } catch (const std::exception&) {
      throw FormatError("bad stimulus id");
    }
    const std::string program = ReadLine(in);
    if (program.rfind("program ", 0) != 0) throw FormatError("expected 'program <text>'");
    try {
      s.program = grid::ParseProgram(program.substr(8));
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
    std::string pattern;
    for (int i = 0; i < grid::kGridSize; ++i) pattern += ReadLine(in) + "\n";
    s.pattern = grid::ParsePattern(pattern);
    if (grid::Render(s.program) != s.pattern) {
      throw FormatError("stimulus " + std::to_string(s.id) +
                        " program does not render to its pattern");
    }
    if (s.id != static_cast<int>(out.size())) {
      throw FormatError("stimulus ids must be 0, 1, 2, ... in order");
    }
    out.push_back(s);
  }
  return out;
}

std::vector<Stimulus> LoadStimuliFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  return LoadStimuli(in);
}

}  // namespace pragsynth
