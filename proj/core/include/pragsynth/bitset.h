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

#ifndef PRAGSYNTH_BITSET_H_
#define PRAGSYNTH_BITSET_H_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace pragsynth {

// Fixed-width bit-vector over a dense index space [0, size). The width is
// chosen at construction and never changes; binary operations require equal
// widths. Bits past `size` in the last word are always zero.
class Bitset {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Bitset() = default;
  explicit Bitset(std::size_t size, bool value = false)
      : size_(size), words_(WordCount(size), value ? ~Word{0} : Word{0}) {
    if (value) ClearTail();
  }

  static constexpr std::size_t WordCount(std::size_t bits) {
    return (bits + kWordBits - 1) / kWordBits;
  }

  std::size_t size() const { return size_; }
  std::span<const Word> words() const { return words_; }
  std::span<Word> mutable_words() { return words_; }

  bool test(std::size_t i) const {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
  }
  void set(std::size_t i) { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) {
    words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (Word w : words_) n += std::popcount(w);
    return n;
  }
  bool none() const {
    for (Word w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  Bitset& operator&=(const Bitset& other) {
    CheckSameSize(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }
  friend Bitset operator&(Bitset lhs, const Bitset& rhs) { return lhs &= rhs; }

  // |*this ∩ other| without materializing the intersection.
  std::size_t IntersectCount(const Bitset& other) const {
    CheckSameSize(other);
    std::size_t n = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      n += std::popcount(words_[i] & other.words_[i]);
    }
    return n;
  }

  // Calls fn(index) for every set bit in ascending order.
  template <typename Fn>
  void ForEach(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word word = words_[w];
      while (word != 0) {
        const int bit = std::countr_zero(word);
        fn(w * kWordBits + static_cast<std::size_t>(bit));
        word &= word - 1;
      }
    }
  }

  std::vector<std::size_t> ToIndices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    ForEach([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  void CheckSameSize(const Bitset& other) const {
    if (other.size_ != size_) throw std::invalid_argument("bitset width mismatch");
  }
  void ClearTail() {
    const std::size_t rem = size_ % kWordBits;
    if (rem != 0) words_.back() &= (Word{1} << rem) - 1;
  }

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

}  // namespace pragsynth

#endif  // PRAGSYNTH_BITSET_H_
