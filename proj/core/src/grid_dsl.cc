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

#include "pragsynth/grid_dsl.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "pragsynth/binary_io.h"
#include "pragsynth/errors.h"

namespace pragsynth::grid {
namespace {

constexpr std::array<char, 8> kMagic = {'P', 'R', 'A', 'G', 'G', 'D', '1', '\0'};
constexpr std::string_view kSymbolChars = ".rgbRGB";
constexpr std::array<Shape, 2> kOuterShapes = {Shape::kChicken, Shape::kPig};
constexpr std::array<Shape, 3> kInnerShapes = {Shape::kChicken, Shape::kPig,
                                               Shape::kPebble};
constexpr std::array<CoordArg, 3> kArgs = {CoordArg::kX, CoordArg::kY,
                                           CoordArg::kXPlusY};
constexpr std::array<ColorFn, 5> kColorFns = {ColorFn::kConst0, ColorFn::kConst1,
                                              ColorFn::kConst2, ColorFn::kIdentity,
                                              ColorFn::kTwiceParity};

int ApplyArg(CoordArg arg, int x, int y) {
  switch (arg) {
    case CoordArg::kX: return x;
    case CoordArg::kY: return y;
    case CoordArg::kXPlusY: return x + y;
  }
  return 0;
}

int ApplyColorFn(ColorFn fn, int z) {
  switch (fn) {
    case ColorFn::kConst0: return 0;
    case ColorFn::kConst1: return 1;
    case ColorFn::kConst2: return 2;
    case ColorFn::kIdentity: return z;
    case ColorFn::kTwiceParity: return 2 * (z % 2);
  }
  return 0;
}

std::string_view ShapeName(Shape s) {
  switch (s) {
    case Shape::kPebble: return "pebble";
    case Shape::kChicken: return "chicken";
    case Shape::kPig: return "pig";
  }
  return "?";
}

std::string_view ArgName(CoordArg a) {
  switch (a) {
    case CoordArg::kX: return "x";
    case CoordArg::kY: return "y";
    case CoordArg::kXPlusY: return "x+y";
  }
  return "?";
}

std::string_view ColorFnName(ColorFn f) {
  switch (f) {
    case ColorFn::kConst0: return "const0";
    case ColorFn::kConst1: return "const1";
    case ColorFn::kConst2: return "const2";
    case ColorFn::kIdentity: return "identity";
    case ColorFn::kTwiceParity: return "twice-parity";
  }
  return "?";
}

template <typename Enum, std::size_t N>
Enum ParseKeyword(std::string_view token, const std::array<Enum, N>& values,
                  std::string_view (*name)(Enum), std::string_view what) {
  for (Enum v : values) {
    if (name(v) == token) return v;
  }
  throw std::invalid_argument("unknown " + std::string(what) + " '" +
                              std::string(token) + "'");
}

int ParseInt(std::string_view token, int lo, int hi, std::string_view what) {
  if (token.size() != 1 || token[0] < '0' + lo || token[0] > '0' + hi) {
    throw std::invalid_argument("bad " + std::string(what) + " '" + std::string(token) + "'");
  }
  return token[0] - '0';
}

}  // namespace

UtteranceId ExampleId(const AtomicExample& e) {
  if (e.x < 0 || e.x >= kGridSize || e.y < 0 || e.y >= kGridSize) {
    throw std::out_of_range("grid coordinate out of range");
  }
  return UtteranceAt(static_cast<std::size_t>(CellIndex(e.x, e.y) * kSymbolCount +
                                              static_cast<int>(e.symbol)));
}

AtomicExample ExampleAt(UtteranceId id) {
  const int i = static_cast<int>(Index(id));
  if (i < 0 || i >= kExampleCount) throw std::out_of_range("example id out of range");
  const int cell = i / kSymbolCount;
  return {cell % kGridSize, cell / kGridSize, static_cast<Symbol>(i % kSymbolCount)};
}

Symbol MakeSymbol(Shape shape, int color) {
  switch (shape) {
    case Shape::kPebble: return Symbol::kPebble;
    case Shape::kChicken: return static_cast<Symbol>(1 + color % 3);
    case Shape::kPig: return static_cast<Symbol>(4 + color % 3);
  }
  return Symbol::kPebble;
}

Shape ShapeOf(Symbol s) {
  const int code = static_cast<int>(s);
  if (code == 0) return Shape::kPebble;
  return code <= 3 ? Shape::kChicken : Shape::kPig;
}

char SymbolChar(Symbol s) { return kSymbolChars.at(static_cast<std::size_t>(s)); }

Symbol ParseSymbol(char c) {
  const auto pos = kSymbolChars.find(c);
  if (pos == std::string_view::npos) {
    throw std::invalid_argument(std::string("unknown symbol '") + c + "'");
  }
  return static_cast<Symbol>(pos);
}

bool IsWellFormed(const Program& p) {
  const bool box_ok = std::all_of(p.box.begin(), p.box.end(),
                                  [](int b) { return b >= 0 && b < kGridSize; });
  return box_ok && p.outer != Shape::kPebble && p.thickness >= 1 && p.thickness <= 3 &&
         static_cast<int>(p.inner) <= 2 && static_cast<int>(p.arg) <= 2 &&
         static_cast<int>(p.color) <= 4;
}

Pattern Render(const Program& p) {
  const auto [x0, y0, x1, y1] = p.box;
  Pattern out;
  out.fill(Symbol::kPebble);
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const int edge = std::min({x - x0, x1 - x, y - y0, y1 - y});
      const Shape shape = edge < p.thickness ? p.outer : p.inner;
      const int color = ApplyColorFn(p.color, ApplyArg(p.arg, x, y)) % 3;
      out[CellIndex(x, y)] = MakeSymbol(shape, color);
    }
  }
  return out;
}

void EnumeratePrograms(const std::function<void(const Program&)>& fn) {
  Program p;
  for (int x0 = 0; x0 < kGridSize; ++x0) {
    for (int y0 = 0; y0 < kGridSize; ++y0) {
      for (int x1 = 0; x1 < kGridSize; ++x1) {
        for (int y1 = 0; y1 < kGridSize; ++y1) {
          p.box = {x0, y0, x1, y1};
          for (Shape outer : kOuterShapes) {
            p.outer = outer;
            for (Shape inner : kInnerShapes) {
              p.inner = inner;
              for (int r = 1; r <= 3; ++r) {
                p.thickness = r;
                for (CoordArg arg : kArgs) {
                  p.arg = arg;
                  for (ColorFn color : kColorFns) {
                    p.color = color;
                    fn(p);
                  }
                }
              }
            }
          }
        }
      }
    }
  }
}

CanonicalSpace Canonicalize(std::span<const Program> programs) {
  std::map<Pattern, Program> unique;
  for (const Program& p : programs) unique.try_emplace(Render(p), p);
  CanonicalSpace space;
  space.raw_count = programs.size();
  space.patterns.reserve(unique.size());
  space.representatives.reserve(unique.size());
  for (const auto& [pattern, program] : unique) {
    space.patterns.push_back(pattern);
    space.representatives.push_back(program);
  }
  return space;
}

CanonicalSpace BuildCanonicalSpace() {
  std::vector<Program> programs;
  programs.reserve(kRawProgramCount);
  EnumeratePrograms([&](const Program& p) { programs.push_back(p); });
  return Canonicalize(programs);
}

void SaveCanonicalSpace(const CanonicalSpace& space, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  WriteU64(out, space.patterns.size());
  for (const Pattern& p : space.patterns) {
    std::array<char, kCellCount> bytes{};
    for (int i = 0; i < kCellCount; ++i) bytes[i] = static_cast<char>(p[i]);
    out.write(bytes.data(), bytes.size());
  }
  if (!out) throw FormatError("failed writing canonical space");
}

CanonicalSpace LoadCanonicalSpace(std::istream& in) {
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw FormatError("bad canonical space magic");
  const std::uint64_t count = ReadU64(in);
  if (count == 0 || count > kRawProgramCount) {
    throw FormatError("bad canonical space count");
  }
  CanonicalSpace space;
  space.patterns.resize(count);
  for (Pattern& p : space.patterns) {
    std::array<char, kCellCount> bytes{};
    in.read(bytes.data(), bytes.size());
    if (!in) throw FormatError("truncated canonical space");
    for (int i = 0; i < kCellCount; ++i) {
      const auto code = static_cast<unsigned char>(bytes[i]);
      if (code >= kSymbolCount) throw FormatError("bad symbol code in canonical space");
      p[i] = static_cast<Symbol>(code);
    }
  }
  return space;
}

void SaveCanonicalSpaceFile(const CanonicalSpace& space,
                            const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  SaveCanonicalSpace(space, out);
}

CanonicalSpace LoadCanonicalSpaceFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return LoadCanonicalSpace(in);
}

SymKinds CountSymKinds(const Pattern& p) {
  std::array<bool, kSymbolCount> seen{};
  SymKinds out;
  for (Symbol s : p) {
    if (s == Symbol::kPebble) continue;
    ++out.sym;
    seen[static_cast<std::size_t>(s)] = true;
  }
  out.kinds = static_cast<int>(std::count(seen.begin(), seen.end(), true));
  return out;
}

MeaningMatrix BuildGridMatrix(const CanonicalSpace& space) {
  std::vector<Bitset> rows(kExampleCount, Bitset(space.size()));
  for (std::size_t h = 0; h < space.size(); ++h) {
    // Exactly one consistent example per cell: the cell's own readout.
    for (int cell = 0; cell < kCellCount; ++cell) {
      const int symbol = static_cast<int>(space.patterns[h][cell]);
      rows[static_cast<std::size_t>(cell * kSymbolCount + symbol)].set(h);
    }
  }
  return MeaningMatrix::FromRows(space.size(), std::move(rows));
}

std::string FormatPattern(const Pattern& p) {
  std::string out;
  out.reserve(kCellCount + kGridSize);
  for (int y = 0; y < kGridSize; ++y) {
    for (int x = 0; x < kGridSize; ++x) out.push_back(SymbolChar(At(p, x, y)));
    out.push_back('\n');
  }
  return out;
}

Pattern ParsePattern(std::string_view text) {
  Pattern out;
  int y = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    if (line.empty() && pos >= text.size()) break;
    if (y >= kGridSize || line.size() != kGridSize) {
      throw FormatError("pattern must be 7 lines of 7 symbols");
    }
    for (int x = 0; x < kGridSize; ++x) {
      try {
        out[CellIndex(x, y)] = ParseSymbol(line[x]);
      } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
      }
    }
    ++y;
  }
  if (y != kGridSize) throw FormatError("pattern must be 7 lines of 7 symbols");
  return out;
}

std::string FormatProgram(const Program& p) {
  std::ostringstream out;
  out << "(box " << p.box[0] << ' ' << p.box[1] << ' ' << p.box[2] << ' ' << p.box[3]
      << ") (ring " << ShapeName(p.outer) << ' ' << ShapeName(p.inner) << ' '
      << p.thickness << ") (color " << ArgName(p.arg) << ' ' << ColorFnName(p.color)
      << ')';
  return out.str();
}

Program ParseProgram(std::string_view text) {
  std::string cleaned(text);
  for (char& c : cleaned) {
    if (c == '(' || c == ')') c = ' ';
  }
  std::istringstream in(cleaned);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  if (tokens.size() != 12 || tokens[0] != "box" || tokens[5] != "ring" ||
      tokens[9] != "color") {
    throw std::invalid_argument(
        "expected '(box X0 Y0 X1 Y1) (ring OUTER INNER R) (color A1 A2)'");
  }
  Program p;
  for (int i = 0; i < 4; ++i) p.box[i] = ParseInt(tokens[1 + i], 0, 6, "box coordinate");
  p.outer = ParseKeyword(tokens[6], kOuterShapes, ShapeName, "outer shape");
  p.inner = ParseKeyword(tokens[7], kInnerShapes, ShapeName, "inner shape");
  p.thickness = ParseInt(tokens[8], 1, 3, "thickness");
  p.arg = ParseKeyword(tokens[10], kArgs, ArgName, "color argument");
  p.color = ParseKeyword(tokens[11], kColorFns, ColorFnName, "color function");
  return p;
}

}  // namespace pragsynth::grid
