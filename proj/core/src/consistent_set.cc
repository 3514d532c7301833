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

#include "pragsynth/consistent_set.h"

#include <stdexcept>

namespace pragsynth {

ConsistentSetCache::Node& ConsistentSetCache::Walk(
    const MeaningMatrix& m, std::span<const UtteranceId> prefix) {
  if (!root_) {
    n_hypotheses_ = m.n_hypotheses();
    n_utterances_ = m.n_utterances();
    root_ = std::make_unique<Node>();
    root_->set = Bitset(n_hypotheses_, true);
    entries_ = 1;
  } else if (m.n_hypotheses() != n_hypotheses_ || m.n_utterances() != n_utterances_) {
    throw std::invalid_argument("consistent-set cache used with a different game");
  }
  Node* node = root_.get();
  for (UtteranceId u : prefix) {
    const Bitset& row = m.AtomicListener(u);
    auto [it, inserted] = node->children.try_emplace(static_cast<std::uint32_t>(u));
    if (inserted) {
      it->second = std::make_unique<Node>();
      it->second->set = node->set & row;
      ++counters_.intersections;
      ++entries_;
    }
    node = it->second.get();
  }
  return *node;
}

const Bitset& ConsistentSetCache::Get(const MeaningMatrix& m,
                                      std::span<const UtteranceId> prefix) {
  return Walk(m, prefix).set;
}

ConsistentSetCache::Entry ConsistentSetCache::Lookup(
    const MeaningMatrix& m, std::span<const UtteranceId> prefix) {
  return Entry(this, &m, &Walk(m, prefix));
}

std::size_t ConsistentSetCache::Entry::ExtensionSize(UtteranceId u) {
  Node& node = *node_;
  if (node.extension_sizes.empty()) {
    node.extension_sizes.assign(cache_->n_utterances_, -1);
  }
  std::int32_t& slot = node.extension_sizes.at(Index(u));
  if (slot < 0) {
    // A cached child already holds the answer.
    if (auto it = node.children.find(static_cast<std::uint32_t>(u));
        it != node.children.end()) {
      slot = static_cast<std::int32_t>(it->second->set.count());
    } else {
      slot = static_cast<std::int32_t>(node.set.IntersectCount(m_->AtomicListener(u)));
      ++cache_->counters_.extension_counts;
    }
  }
  return static_cast<std::size_t>(slot);
}

std::size_t ConsistentSetCache::ExtensionSize(const MeaningMatrix& m,
                                              std::span<const UtteranceId> prefix,
                                              UtteranceId u) {
  return Lookup(m, prefix).ExtensionSize(u);
}

bool ConsistentSetCache::Contains(std::span<const UtteranceId> prefix) const {
  const Node* node = root_.get();
  if (node == nullptr) return false;
  for (UtteranceId u : prefix) {
    auto it = node->children.find(static_cast<std::uint32_t>(u));
    if (it == node->children.end()) return false;
    node = it->second.get();
  }
  return true;
}

void ConsistentSetCache::Clear() {
  root_.reset();
  entries_ = 0;
  counters_ = {};
}

const Bitset& ConsistentSet(const MeaningMatrix& m, const ExampleSequence& d,
                            ConsistentSetCache& cache) {
  return cache.Get(m, d.ids());
}

Bitset ConsistentSetUncached(const MeaningMatrix& m,
                             std::span<const UtteranceId> d) {
  Bitset out(m.n_hypotheses(), true);
  for (UtteranceId u : d) out &= m.AtomicListener(u);
  return out;
}

}  // namespace pragsynth
