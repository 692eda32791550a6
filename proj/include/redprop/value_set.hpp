#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace redprop {

/// Finite set of integers stored as a bitset anchored at a 64-aligned base.
///
/// The representation is canonical: leading and trailing zero words are
/// trimmed, so two sets are equal iff their bases and words are equal.
class ValueSet {
 public:
  using word_type = std::uint64_t;

  ValueSet() = default;
  ValueSet(std::initializer_list<int> values) {
    for (int v : values) insert(v);
  }
  template <typename It>
  ValueSet(It first, It last) {
    for (; first != last; ++first) insert(*first);
  }

  /// All integers in [lo, hi]; empty when lo > hi.
  static ValueSet range(int lo, int hi) {
    ValueSet s;
    if (lo > hi) return s;
    s.base_ = align(lo);
    s.words_.assign(static_cast<std::size_t>((align(hi) - s.base_) / 64 + 1), 0);
    for (int v = lo; v <= hi; ++v) s.set_bit(v);
    return s;
  }

  [[nodiscard]] bool empty() const { return words_.empty(); }

  [[nodiscard]] std::size_t size() const {
    std::size_t n = 0;
    for (word_type w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  [[nodiscard]] bool singleton() const { return words_.size() == 1 && std::has_single_bit(words_.front()); }

  [[nodiscard]] bool contains(int v) const {
    if (words_.empty() || v < base_) return false;
    auto idx = static_cast<std::size_t>((v - base_) >> 6);
    if (idx >= words_.size()) return false;
    return (words_[idx] >> ((v - base_) & 63)) & 1u;
  }

  [[nodiscard]] int min() const {
    assert(!empty());
    return base_ + std::countr_zero(words_.front());
  }

  [[nodiscard]] int max() const {
    assert(!empty());
    int top = base_ + static_cast<int>(64 * (words_.size() - 1));
    return top + 63 - std::countl_zero(words_.back());
  }

  void insert(int v) {
    if (words_.empty()) {
      base_ = align(v);
      words_.assign(1, 0);
    } else if (v < base_) {
      auto extra = static_cast<std::size_t>((base_ - align(v)) / 64);
      words_.insert(words_.begin(), extra, 0);
      base_ = align(v);
    } else {
      auto idx = static_cast<std::size_t>((v - base_) >> 6);
      if (idx >= words_.size()) words_.resize(idx + 1, 0);
    }
    set_bit(v);
  }

  /// Removes v; returns true when v was present.
  bool erase(int v) {
    if (!contains(v)) return false;
    auto idx = static_cast<std::size_t>((v - base_) >> 6);
    words_[idx] &= ~(word_type{1} << ((v - base_) & 63));
    trim();
    return true;
  }

  void clear() {
    words_.clear();
    base_ = 0;
  }

  ValueSet& operator&=(const ValueSet& o) {
    if (empty()) return *this;
    if (o.empty()) {
      clear();
      return *this;
    }
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.word_at(base_ + 64 * static_cast<int>(i));
    trim();
    return *this;
  }

  ValueSet& operator|=(const ValueSet& o) {
    if (o.empty()) return *this;
    if (empty()) {
      *this = o;
      return *this;
    }
    int lo = std::min(base_, o.base_);
    int hi = std::max(top_base(), o.top_base());
    boost::container::small_vector<word_type, 2> merged(static_cast<std::size_t>((hi - lo) / 64 + 1), 0);
    for (std::size_t i = 0; i < merged.size(); ++i) {
      int b = lo + 64 * static_cast<int>(i);
      merged[i] = word_at(b) | o.word_at(b);
    }
    base_ = lo;
    words_ = std::move(merged);
    return *this;
  }

  ValueSet& operator-=(const ValueSet& o) {
    if (empty() || o.empty()) return *this;
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.word_at(base_ + 64 * static_cast<int>(i));
    trim();
    return *this;
  }

  friend ValueSet operator&(ValueSet a, const ValueSet& b) { return a &= b; }
  friend ValueSet operator|(ValueSet a, const ValueSet& b) { return a |= b; }
  friend ValueSet operator-(ValueSet a, const ValueSet& b) { return a -= b; }

  [[nodiscard]] bool subset_of(const ValueSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~o.word_at(base_ + 64 * static_cast<int>(i))) return false;
    }
    return true;
  }

  [[nodiscard]] bool intersects(const ValueSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & o.word_at(base_ + 64 * static_cast<int>(i))) return true;
    }
    return false;
  }

  friend bool operator==(const ValueSet& a, const ValueSet& b) {
    return a.base_ == b.base_ && a.words_ == b.words_;
  }

  /// Lexicographic order on the ascending value sequence.
  friend std::strong_ordering operator<=>(const ValueSet& a, const ValueSet& b) {
    auto va = a.values();
    auto vb = b.values();
    return std::lexicographical_compare_three_way(va.begin(), va.end(), vb.begin(), vb.end());
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      word_type w = words_[i];
      while (w) {
        int bit = std::countr_zero(w);
        f(base_ + 64 * static_cast<int>(i) + bit);
        w &= w - 1;
      }
    }
  }

  [[nodiscard]] std::vector<int> values() const {
    std::vector<int> out;
    out.reserve(size());
    for_each([&](int v) { out.push_back(v); });
    return out;
  }

  /// `{1,3}` style rendering.
  [[nodiscard]] std::string str() const {
    std::string s = "{";
    bool first = true;
    for_each([&](int v) {
      if (!first) s += ',';
      s += std::to_string(v);
      first = false;
    });
    return s + "}";
  }

 private:
  static int align(int v) { return (v >> 6) << 6; }
  [[nodiscard]] int top_base() const { return base_ + 64 * static_cast<int>(words_.size() - 1); }

  [[nodiscard]] word_type word_at(int b) const {
    if (words_.empty() || b < base_) return 0;
    auto idx = static_cast<std::size_t>((b - base_) / 64);
    return idx < words_.size() ? words_[idx] : 0;
  }

  void set_bit(int v) {
    auto idx = static_cast<std::size_t>((v - base_) >> 6);
    words_[idx] |= word_type{1} << ((v - base_) & 63);
  }

  void trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
    std::size_t lead = 0;
    while (lead < words_.size() && words_[lead] == 0) ++lead;
    if (lead > 0) {
      words_.erase(words_.begin(), words_.begin() + static_cast<std::ptrdiff_t>(lead));
      base_ += 64 * static_cast<int>(lead);
    }
    if (words_.empty()) base_ = 0;
  }

  int base_ = 0;
  boost::container::small_vector<word_type, 2> words_;
};

}  // namespace redprop
