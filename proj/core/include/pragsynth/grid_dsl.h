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

// Pattern-layout DSL on a 7x7 grid.
//
//   P  -> if (x,y) in box(B,B,B,B) then symbol(S,C) else pebble
//   B  -> 0 | 1 | ... | 6
//   S  -> ring(O,I,R,x,y)
//   O  -> chicken | pig
//   I  -> chicken | pig | pebble
//   R  -> 1 | 2 | 3
//   C  -> [red, green, blue][A2(A1) mod 3]
//   A1 -> x | y | x+y
//   A2 -> z:0 | z:1 | z:2 | z:z | z:2*(z mod 2)
//
// box(x0,y0,x1,y1) is inclusive on both ends; an inverted box is empty. The
// ring places O on cells whose distance to the nearest box edge is below R
// and I elsewhere in the box.

#ifndef PRAGSYNTH_GRID_DSL_H_
#define PRAGSYNTH_GRID_DSL_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pragsynth/ids.h"
#include "pragsynth/meaning_matrix.h"

namespace pragsynth::grid {

inline constexpr int kGridSize = 7;
inline constexpr int kCellCount = kGridSize * kGridSize;
inline constexpr int kSymbolCount = 7;
inline constexpr int kExampleCount = kCellCount * kSymbolCount;
inline constexpr std::size_t kRawProgramCount = 7 * 7 * 7 * 7 * 2 * 3 * 3 * 3 * 5;

enum class Shape : std::uint8_t { kPebble, kChicken, kPig };

// 0 = pebble, 1..3 = chicken red/green/blue, 4..6 = pig red/green/blue.
enum class Symbol : std::uint8_t {
  kPebble = 0,
  kChickenRed,
  kChickenGreen,
  kChickenBlue,
  kPigRed,
  kPigGreen,
  kPigBlue,
};

enum class CoordArg : std::uint8_t { kX, kY, kXPlusY };
enum class ColorFn : std::uint8_t { kConst0, kConst1, kConst2, kIdentity, kTwiceParity };

struct Program {
  std::array<int, 4> box{};  // x0, y0, x1, y1
  Shape outer = Shape::kChicken;
  Shape inner = Shape::kPebble;
  int thickness = 1;
  CoordArg arg = CoordArg::kX;
  ColorFn color = ColorFn::kConst0;
  friend bool operator==(const Program&, const Program&) = default;
};

// Cell (x, y) lives at index y * 7 + x, i.e. row-major with y as the row.
using Pattern = std::array<Symbol, kCellCount>;

constexpr int CellIndex(int x, int y) { return y * kGridSize + x; }
inline Symbol At(const Pattern& p, int x, int y) { return p[CellIndex(x, y)]; }

struct AtomicExample {
  int x = 0;
  int y = 0;
  Symbol symbol = Symbol::kPebble;
  friend bool operator==(const AtomicExample&, const AtomicExample&) = default;
};

// Utterance id = CellIndex(x, y) * 7 + symbol.
UtteranceId ExampleId(const AtomicExample& e);
AtomicExample ExampleAt(UtteranceId id);

Symbol MakeSymbol(Shape shape, int color);
Shape ShapeOf(Symbol s);
char SymbolChar(Symbol s);
// Throws std::invalid_argument for characters outside ".rgbRGB".
Symbol ParseSymbol(char c);

bool IsWellFormed(const Program& p);
Pattern Render(const Program& p);

// Calls fn for every grammar instantiation exactly once, in a fixed order
// (box coordinates outermost, color function innermost).
void EnumeratePrograms(const std::function<void(const Program&)>& fn);

// Deduplicated hypothesis space: unique patterns in byte order, each with the
// first program that rendered it.
struct CanonicalSpace {
  std::vector<Pattern> patterns;
  std::vector<Program> representatives;  // empty when loaded from a file
  std::size_t raw_count = 0;

  std::size_t size() const { return patterns.size(); }
};

CanonicalSpace Canonicalize(std::span<const Program> programs);
// Enumerates and deduplicates the whole grammar.
CanonicalSpace BuildCanonicalSpace();

// Canonical-space file: "PRAGGD1\0", count (u64 LE), then 49 symbol bytes per
// pattern.
void SaveCanonicalSpace(const CanonicalSpace& space, std::ostream& out);
CanonicalSpace LoadCanonicalSpace(std::istream& in);
void SaveCanonicalSpaceFile(const CanonicalSpace& space,
                            const std::filesystem::path& path);
CanonicalSpace LoadCanonicalSpaceFile(const std::filesystem::path& path);

inline bool ExampleConsistent(const Pattern& p, const AtomicExample& e) {
  return At(p, e.x, e.y) == e.symbol;
}

struct SymKinds {
  int sym = 0;    // non-pebble cells
  int kinds = 0;  // distinct non-pebble symbols
  friend bool operator==(const SymKinds&, const SymKinds&) = default;
};
SymKinds CountSymKinds(const Pattern& p);
inline std::uint32_t PriorScore(const Pattern& p) {
  const SymKinds s = CountSymKinds(p);
  return static_cast<std::uint32_t>(100 * s.sym + s.kinds);
}

// Rows of the meaning matrix over the canonical space and all 343 examples.
MeaningMatrix BuildGridMatrix(const CanonicalSpace& space);

// Pattern text: 7 lines of 7 symbol characters, each line newline-terminated.
std::string FormatPattern(const Pattern& p);
// Accepts an optional trailing newline and '\r\n' line ends.
Pattern ParsePattern(std::string_view text);

// "(box 0 0 6 6) (ring pig pebble 2) (color x identity)"
std::string FormatProgram(const Program& p);
Program ParseProgram(std::string_view text);

}  // namespace pragsynth::grid

#endif  // PRAGSYNTH_GRID_DSL_H_
