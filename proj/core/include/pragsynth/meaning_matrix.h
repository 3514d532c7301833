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

#ifndef PRAGSYNTH_MEANING_MATRIX_H_
#define PRAGSYNTH_MEANING_MATRIX_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "pragsynth/bitset.h"
#include "pragsynth/ids.h"

namespace pragsynth {

// Boolean consistency relation between hypotheses and utterances, held in
// both orientations:
//   rows[u] = { h : h |- u }   (atomic listener)
//   cols[h] = { u : h |- u }   (atomic speaker)
// Immutable after construction; safe to share across threads.
class MeaningMatrix {
 public:
  using Predicate = std::function<bool(HypothesisId, UtteranceId)>;

  // Throws std::invalid_argument if either dimension is zero.
  static MeaningMatrix Build(std::size_t n_hypotheses, std::size_t n_utterances,
                             const Predicate& consistent);

  // Payload-typed convenience: ids follow list positions.
  template <typename H, typename U, typename Pred>
  static MeaningMatrix Build(std::span<const H> hypotheses,
                             std::span<const U> utterances, Pred&& consistent) {
    return Build(hypotheses.size(), utterances.size(),
                 [&](HypothesisId h, UtteranceId u) {
                   return consistent(hypotheses[Index(h)], utterances[Index(u)]);
                 });
  }

  // Builds the column view from `rows`.
  static MeaningMatrix FromRows(std::size_t n_hypotheses,
                                std::vector<Bitset> rows);

  std::size_t n_hypotheses() const { return n_hypotheses_; }
  std::size_t n_utterances() const { return n_utterances_; }

  // M_L[u]. Throws std::out_of_range for an invalid id.
  const Bitset& AtomicListener(UtteranceId u) const;
  // M_S[h]. Throws std::out_of_range for an invalid id.
  const Bitset& AtomicSpeaker(HypothesisId h) const;
  // M_S[h] as a sorted id list, for support-restricted sums.
  std::span<const UtteranceId> SpeakerList(HypothesisId h) const;

  bool Consistent(HypothesisId h, UtteranceId u) const {
    return rows_.at(Index(u)).test(Index(h));
  }

  // max_u |M_L[u]| and max_h |M_S[h]|; used for instrumentation bounds only.
  std::size_t MaxListenerSize() const { return max_listener_; }
  std::size_t MaxSpeakerSize() const { return max_speaker_; }

  // FNV-1a over the row then column words.
  std::uint64_t Checksum() const;

  // Binary cache format: "PRAGMM1\0", n_hypotheses, n_utterances, checksum
  // (all u64 little-endian), then row bitsets, then column bitsets.
  void Save(std::ostream& out) const;
  static MeaningMatrix Load(std::istream& in);
  void SaveFile(const std::filesystem::path& path) const;
  static MeaningMatrix LoadFile(const std::filesystem::path& path);

  friend bool operator==(const MeaningMatrix& a, const MeaningMatrix& b) {
    return a.n_hypotheses_ == b.n_hypotheses_ &&
           a.n_utterances_ == b.n_utterances_ && a.rows_ == b.rows_ &&
           a.cols_ == b.cols_;
  }

 private:
  MeaningMatrix(std::size_t n_hypotheses, std::size_t n_utterances,
                std::vector<Bitset> rows, std::vector<Bitset> cols);

  std::size_t n_hypotheses_ = 0;
  std::size_t n_utterances_ = 0;
  std::vector<Bitset> rows_;
  std::vector<Bitset> cols_;
  std::vector<UtteranceId> speaker_ids_;
  std::vector<std::size_t> speaker_offsets_;
  std::size_t max_listener_ = 0;
  std::size_t max_speaker_ = 0;
};

}  // namespace pragsynth

#endif  // PRAGSYNTH_MEANING_MATRIX_H_
