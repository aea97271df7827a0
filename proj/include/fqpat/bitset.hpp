#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace fqpat {

// Dense fixed-length bitset used for subset membership over [0, q^n).
class DenseBitset {
 public:
  DenseBitset() = default;
  explicit DenseBitset(std::uint64_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::uint64_t bit_count() const { return bits_; }

  bool test(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(std::uint64_t i) { words_[i >> 6] |= (1ull << (i & 63)); }
  void reset(std::uint64_t i) { words_[i >> 6] &= ~(1ull << (i & 63)); }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  std::uint64_t popcount() const {
    std::uint64_t c = 0;
    for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
  }

  std::vector<std::uint64_t> members() const {
    std::vector<std::uint64_t> out;
    out.reserve(popcount());
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w != 0) {
        out.push_back(static_cast<std::uint64_t>(wi) * 64 + std::countr_zero(w));
        w &= w - 1;
      }
    }
    return out;
  }

  // Hex dump, least significant word first, fixed width: one stable line per set.
  std::string hex() const;

  bool operator==(const DenseBitset&) const = default;

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::uint64_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace fqpat
