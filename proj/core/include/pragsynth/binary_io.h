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

#ifndef PRAGSYNTH_BINARY_IO_H_
#define PRAGSYNTH_BINARY_IO_H_

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>

#include "pragsynth/errors.h"

namespace pragsynth {

// Little-endian u64 helpers shared by the binary cache formats.
inline void WriteU64(std::ostream& out, std::uint64_t value) {
  std::array<char, 8> bytes{};
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xffu);
  out.write(bytes.data(), bytes.size());
}

inline std::uint64_t ReadU64(std::istream& in) {
  std::array<unsigned char, 8> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw FormatError("unexpected end of binary input");
  std::uint64_t value = 0;
  for (int i = 7; i >= 0; --i) value = (value << 8) | bytes[i];
  return value;
}

}  // namespace pragsynth

#endif  // PRAGSYNTH_BINARY_IO_H_
