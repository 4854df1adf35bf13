#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

#include "error.hpp"

namespace eqlarge {

using Element = std::uint32_t;

/// Dense bit-vector over the element indices of a finite group.
///
/// A Subset knows only its length; the group it lives in is supplied by the
/// caller. Operations that combine two subsets require equal lengths.
class Subset {
 public:
  Subset() = default;
  explicit Subset(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  Subset(std::size_t size, std::initializer_list<Element> elements) : Subset(size) {
    for (Element e : elements) set(e);
  }

  static Subset full(std::size_t size) {
    Subset s(size);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  template <class Range>
  static Subset of(std::size_t size, const Range& elements) {
    Subset s(size);
    for (auto e : elements) s.set(static_cast<Element>(e));
    return s;
  }

  std::size_t size() const noexcept { return size_; }

  bool test(Element e) const { return (words_[e >> 6] >> (e & 63)) & 1U; }
  void set(Element e) {
    if (e >= size_) throw Error("subset index out of range");
    words_[e >> 6] |= std::uint64_t{1} << (e & 63);
  }
  void reset(Element e) { words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63)); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  bool is_full() const noexcept { return count() == size_; }

  bool intersects(const Subset& o) const {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  bool is_subset_of(const Subset& o) const {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  /// Number of elements of *this not in o.
  std::size_t count_minus(const Subset& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(words_[i] & ~o.words_[i]));
    return c;
  }

  Subset& operator|=(const Subset& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  Subset& operator&=(const Subset& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  Subset& operator-=(const Subset& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend Subset operator|(Subset a, const Subset& b) { return a |= b; }
  friend Subset operator&(Subset a, const Subset& b) { return a &= b; }
  friend Subset operator-(Subset a, const Subset& b) { return a -= b; }

  Subset complement() const {
    Subset c(size_);
    for (std::size_t i = 0; i < words_.size(); ++i) c.words_[i] = ~words_[i];
    c.trim();
    return c;
  }

  /// Smallest member, or size() when empty.
  Element first() const noexcept { return next(0); }
  /// Smallest member >= from, or size() when there is none.
  Element next(Element from) const noexcept {
    if (from >= size_) return static_cast<Element>(size_);
    std::size_t wi = from >> 6;
    std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w) return static_cast<Element>(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      if (++wi == words_.size()) return static_cast<Element>(size_);
      w = words_[wi];
    }
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        f(static_cast<Element>(wi * 64 + static_cast<std::size_t>(std::countr_zero(w))));
        w &= w - 1;
      }
    }
  }

  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(count());
    for_each([&](Element e) { out.push_back(e); });
    return out;
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const Subset&, const Subset&) = default;

 private:
  void trim() {
    if (size_ % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }
  void check_same(const Subset& o) const {
    if (o.size_ != size_) throw Error("subsets of different groups combined");
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace eqlarge
