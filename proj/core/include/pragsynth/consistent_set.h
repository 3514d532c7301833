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

#ifndef PRAGSYNTH_CONSISTENT_SET_H_
#define PRAGSYNTH_CONSISTENT_SET_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "pragsynth/bitset.h"
#include "pragsynth/example_sequence.h"
#include "pragsynth/ids.h"
#include "pragsynth/meaning_matrix.h"

namespace pragsynth {

struct CacheCounters {
  // Materialized intersections: one per newly cached prefix.
  std::uint64_t intersections = 0;
  // Memoized |prefix[H] ∩ M_L[u]| computations.
  std::uint64_t extension_counts = 0;
};

// Memoizes D[H] = ∩_{u ∈ D} M_L[u] for every prefix seen, as a trie keyed by
// utterance. Extending a cached prefix by one utterance costs one bitset AND.
// Each cached prefix also memoizes the sizes |prefix[H] ∩ M_L[u]| on demand,
// which is all the incremental speaker needs for its normalizers.
//
// A cache is bound to the dimensions of the first matrix it sees. It is a
// per-session value and is not thread-safe.
class ConsistentSetCache {
  struct Node;

 public:
  // Handle to one cached prefix. Valid until the cache is cleared or moved.
  class Entry {
   public:
    const Bitset& set() const { return node_->set; }
    // |prefix[H] ∩ M_L[u]|, memoized on first request.
    std::size_t ExtensionSize(UtteranceId u);

   private:
    friend class ConsistentSetCache;
    Entry(ConsistentSetCache* cache, const MeaningMatrix* m, Node* node)
        : cache_(cache), m_(m), node_(node) {}
    ConsistentSetCache* cache_;
    const MeaningMatrix* m_;
    Node* node_;
  };

  ConsistentSetCache() = default;
  ConsistentSetCache(ConsistentSetCache&&) = default;
  ConsistentSetCache& operator=(ConsistentSetCache&&) = default;

  // D[H] for `prefix`; caches every prefix of it along the way. The empty
  // prefix maps to the full hypothesis set.
  const Bitset& Get(const MeaningMatrix& m, std::span<const UtteranceId> prefix);
  Entry Lookup(const MeaningMatrix& m, std::span<const UtteranceId> prefix);

  // |prefix[H] ∩ M_L[u]|, i.e. the size of the consistent set after
  // appending `u`, without materializing it.
  std::size_t ExtensionSize(const MeaningMatrix& m,
                            std::span<const UtteranceId> prefix, UtteranceId u);

  bool Contains(std::span<const UtteranceId> prefix) const;
  std::size_t entries() const { return entries_; }

  const CacheCounters& counters() const { return counters_; }
  void ResetCounters() { counters_ = {}; }
  void Clear();

 private:
  struct Node {
    Bitset set;
    std::vector<std::int32_t> extension_sizes;  // -1 = not computed
    std::map<std::uint32_t, std::unique_ptr<Node>> children;
  };

  Node& Walk(const MeaningMatrix& m, std::span<const UtteranceId> prefix);

  std::unique_ptr<Node> root_;
  std::size_t n_hypotheses_ = 0;
  std::size_t n_utterances_ = 0;
  std::size_t entries_ = 0;
  CacheCounters counters_;
};

// Consistent set of `d` through the cache.
const Bitset& ConsistentSet(const MeaningMatrix& m, const ExampleSequence& d,
                            ConsistentSetCache& cache);

// Uncached left fold of intersections; the reference the cache must match.
Bitset ConsistentSetUncached(const MeaningMatrix& m,
                             std::span<const UtteranceId> d);

}  // namespace pragsynth

#endif  // PRAGSYNTH_CONSISTENT_SET_H_
