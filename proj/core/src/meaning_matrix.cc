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

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <utility>

#include "pragsynth/binary_io.h"
#include "pragsynth/errors.h"

namespace pragsynth {
namespace {

constexpr std::array<char, 8> kMagic = {'P', 'R', 'A', 'G', 'M', 'M', '1', '\0'};

// Sanity cap on dimensions read from a cache file.
constexpr std::uint64_t kMaxDimension = std::uint64_t{1} << 28;

std::uint64_t Fnv1a(std::uint64_t hash, Bitset::Word word) {
  for (int i = 0; i < 8; ++i) {
    hash ^= (word >> (8 * i)) & 0xffu;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace

MeaningMatrix::MeaningMatrix(std::size_t n_hypotheses, std::size_t n_utterances,
                             std::vector<Bitset> rows, std::vector<Bitset> cols)
    : n_hypotheses_(n_hypotheses),
      n_utterances_(n_utterances),
      rows_(std::move(rows)),
      cols_(std::move(cols)) {
  speaker_offsets_.reserve(n_hypotheses_ + 1);
  speaker_offsets_.push_back(0);
  for (const Bitset& col : cols_) {
    col.ForEach([&](std::size_t u) { speaker_ids_.push_back(UtteranceAt(u)); });
    speaker_offsets_.push_back(speaker_ids_.size());
    max_speaker_ = std::max(max_speaker_, col.count());
  }
  for (const Bitset& row : rows_) max_listener_ = std::max(max_listener_, row.count());
}

MeaningMatrix MeaningMatrix::Build(std::size_t n_hypotheses,
                                   std::size_t n_utterances,
                                   const Predicate& consistent) {
  if (n_hypotheses == 0 || n_utterances == 0) {
    throw std::invalid_argument("meaning matrix needs at least one hypothesis and one utterance");
  }
  std::vector<Bitset> rows(n_utterances, Bitset(n_hypotheses));
  std::vector<Bitset> cols(n_hypotheses, Bitset(n_utterances));
  for (std::size_t h = 0; h < n_hypotheses; ++h) {
    for (std::size_t u = 0; u < n_utterances; ++u) {
      if (consistent(HypothesisAt(h), UtteranceAt(u))) {
        rows[u].set(h);
        cols[h].set(u);
      }
    }
  }
  return MeaningMatrix(n_hypotheses, n_utterances, std::move(rows), std::move(cols));
}

MeaningMatrix MeaningMatrix::FromRows(std::size_t n_hypotheses,
                                      std::vector<Bitset> rows) {
  if (n_hypotheses == 0 || rows.empty()) {
    throw std::invalid_argument("meaning matrix needs at least one hypothesis and one utterance");
  }
  std::vector<Bitset> cols(n_hypotheses, Bitset(rows.size()));
  for (std::size_t u = 0; u < rows.size(); ++u) {
    if (rows[u].size() != n_hypotheses) {
      throw std::invalid_argument("row width does not match hypothesis count");
    }
    rows[u].ForEach([&](std::size_t h) { cols[h].set(u); });
  }
  const std::size_t n_utterances = rows.size();
  return MeaningMatrix(n_hypotheses, n_utterances, std::move(rows), std::move(cols));
}

const Bitset& MeaningMatrix::AtomicListener(UtteranceId u) const {
  if (Index(u) >= n_utterances_) {
    throw std::out_of_range("utterance id " + std::to_string(Index(u)) + " out of range");
  }
  return rows_[Index(u)];
}

const Bitset& MeaningMatrix::AtomicSpeaker(HypothesisId h) const {
  if (Index(h) >= n_hypotheses_) {
    throw std::out_of_range("hypothesis id " + std::to_string(Index(h)) + " out of range");
  }
  return cols_[Index(h)];
}

std::span<const UtteranceId> MeaningMatrix::SpeakerList(HypothesisId h) const {
  if (Index(h) >= n_hypotheses_) {
    throw std::out_of_range("hypothesis id " + std::to_string(Index(h)) + " out of range");
  }
  const std::size_t begin = speaker_offsets_[Index(h)];
  const std::size_t end = speaker_offsets_[Index(h) + 1];
  return std::span<const UtteranceId>(speaker_ids_).subspan(begin, end - begin);
}

std::uint64_t MeaningMatrix::Checksum() const {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const Bitset& row : rows_) {
    for (Bitset::Word w : row.words()) hash = Fnv1a(hash, w);
  }
  for (const Bitset& col : cols_) {
    for (Bitset::Word w : col.words()) hash = Fnv1a(hash, w);
  }
  return hash;
}

void MeaningMatrix::Save(std::ostream& out) const {
  out.write(kMagic.data(), kMagic.size());
  WriteU64(out, n_hypotheses_);
  WriteU64(out, n_utterances_);
  WriteU64(out, Checksum());
  for (const Bitset& row : rows_) {
    for (Bitset::Word w : row.words()) WriteU64(out, w);
  }
  for (const Bitset& col : cols_) {
    for (Bitset::Word w : col.words()) WriteU64(out, w);
  }
  if (!out) throw FormatError("failed writing meaning matrix");
}

MeaningMatrix MeaningMatrix::Load(std::istream& in) {
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw FormatError("bad meaning matrix magic");
  const std::uint64_t n_h = ReadU64(in);
  const std::uint64_t n_u = ReadU64(in);
  const std::uint64_t checksum = ReadU64(in);
  if (n_h == 0 || n_u == 0 || n_h > kMaxDimension || n_u > kMaxDimension) {
    throw FormatError("bad meaning matrix dimensions");
  }
  auto read_sets = [&](std::size_t count, std::size_t width) {
    std::vector<Bitset> sets(count, Bitset(width));
    for (Bitset& set : sets) {
      for (Bitset::Word& w : set.mutable_words()) w = ReadU64(in);
    }
    return sets;
  };
  std::vector<Bitset> rows = read_sets(n_u, n_h);
  std::vector<Bitset> cols = read_sets(n_h, n_u);
  for (const auto& sets : {&rows, &cols}) {
    for (const Bitset& set : *sets) {
      const std::size_t tail = set.size() % Bitset::kWordBits;
      if (tail != 0 && (set.words().back() >> tail) != 0) {
        throw FormatError("meaning matrix has bits past its width");
      }
    }
  }
  for (std::size_t u = 0; u < n_u; ++u) {
    for (std::size_t h = 0; h < n_h; ++h) {
      if (rows[u].test(h) != cols[h].test(u)) {
        throw FormatError("meaning matrix rows and columns disagree");
      }
    }
  }
  MeaningMatrix matrix(n_h, n_u, std::move(rows), std::move(cols));
  if (matrix.Checksum() != checksum) throw FormatError("meaning matrix checksum mismatch");
  return matrix;
}

void MeaningMatrix::SaveFile(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  Save(out);
}

MeaningMatrix MeaningMatrix::LoadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return Load(in);
}

}  // namespace pragsynth
