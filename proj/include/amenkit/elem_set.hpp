#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "amenkit/errors.hpp"

namespace amenkit {

// Subset of {0, ..., n-1} as a packed bit vector.  All members stay < n by
// construction; the two operands of a binary operation must share n.
class ElemSet {
 public:
  explicit ElemSet(std::uint32_t universe_size)
      : n_(universe_size), bits_((universe_size + 63) / 64, 0) {}

  static ElemSet full(std::uint32_t n) {
    ElemSet s(n);
    for (std::uint32_t i = 0; i < n; ++i) s.insert(i);
    return s;
  }

  static ElemSet single(std::uint32_t n, std::uint32_t member) {
    ElemSet s(n);
    s.insert(member);
    return s;
  }

  static ElemSet of(std::uint32_t n, std::initializer_list<std::uint32_t> members) {
    ElemSet s(n);
    for (auto m : members) s.insert(m);
    return s;
  }

  std::uint32_t universe_size() const { return n_; }

  void insert(std::uint32_t i) {
    check(i);
    bits_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }

  void erase(std::uint32_t i) {
    check(i);
    bits_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  bool contains(std::uint32_t i) const {
    if (i >= n_) return false;
    return (bits_[i >> 6] >> (i & 63)) & 1;
  }

  std::size_t size() const {
    std::size_t c = 0;
    for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool empty() const {
    for (auto w : bits_) {
      if (w != 0) return false;
    }
    return true;
  }

  std::vector<std::uint32_t> members() const {
    std::vector<std::uint32_t> out;
    out.reserve(size());
    for (std::size_t blk = 0; blk < bits_.size(); ++blk) {
      std::uint64_t w = bits_[blk];
      while (w) {
        const int b = std::countr_zero(w);
        out.push_back(static_cast<std::uint32_t>(blk * 64 + static_cast<std::size_t>(b)));
        w &= w - 1;
      }
    }
    return out;
  }

  friend ElemSet operator&(const ElemSet& a, const ElemSet& b) {
    ElemSet r = a.paired(b);
    for (std::size_t i = 0; i < r.bits_.size(); ++i) r.bits_[i] = a.bits_[i] & b.bits_[i];
    return r;
  }

  friend ElemSet operator|(const ElemSet& a, const ElemSet& b) {
    ElemSet r = a.paired(b);
    for (std::size_t i = 0; i < r.bits_.size(); ++i) r.bits_[i] = a.bits_[i] | b.bits_[i];
    return r;
  }

  // Set difference a \ b.
  friend ElemSet difference(const ElemSet& a, const ElemSet& b) {
    ElemSet r = a.paired(b);
    for (std::size_t i = 0; i < r.bits_.size(); ++i) r.bits_[i] = a.bits_[i] & ~b.bits_[i];
    return r;
  }

  bool is_subset_of(const ElemSet& other) const {
    paired(other);
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i] & ~other.bits_[i]) return false;
    }
    return true;
  }

  friend bool operator==(const ElemSet& a, const ElemSet& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }
  friend bool operator!=(const ElemSet& a, const ElemSet& b) { return !(a == b); }

 private:
  void check(std::uint32_t i) const {
    if (i >= n_) {
      throw index_error("ElemSet: element " + std::to_string(i) + " outside universe of size " +
                        std::to_string(n_));
    }
  }

  ElemSet paired(const ElemSet& other) const {
    if (n_ != other.n_) throw error("ElemSet: mismatched universe sizes");
    return ElemSet(n_);
  }

  std::uint32_t n_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace amenkit
