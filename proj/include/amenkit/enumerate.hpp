#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "amenkit/errors.hpp"
#include "amenkit/semigroup.hpp"

namespace amenkit {

// Enumeration of all labeled semigroup tables of a given order, in
// lexicographic order of the row-major flattened table.
//
// Backtracking fills cells row-major with values ascending and prunes a
// partial table as soon as some fully determined triple violates
// associativity.  Orders above 4 are refused: the labeled counts explode
// (order 5 is already past 10^8) and nothing downstream needs them.

namespace detail {

// Checks every triple whose four lookups are already assigned.  UINT32_MAX
// marks an unassigned cell.  Small n makes the full rescan per assignment
// cheaper than bookkeeping which triples became decidable.
inline bool partial_associative(std::uint32_t n, const std::vector<std::uint32_t>& t) {
  constexpr std::uint32_t none = UINT32_MAX;
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      const std::uint32_t ab = t[std::size_t(a) * n + b];
      if (ab == none) continue;
      for (std::uint32_t c = 0; c < n; ++c) {
        const std::uint32_t bc = t[std::size_t(b) * n + c];
        if (bc == none) continue;
        const std::uint32_t left = t[std::size_t(ab) * n + c];
        const std::uint32_t right = t[std::size_t(a) * n + bc];
        if (left != none && right != none && left != right) return false;
      }
    }
  }
  return true;
}

template <class Fn>
void fill_from(std::uint32_t n, std::vector<std::uint32_t>& t, std::size_t cell, Fn&& fn) {
  const std::size_t cells = std::size_t(n) * n;
  if (cell == cells) {
    fn(FiniteSemigroup(n, t));
    return;
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    t[cell] = v;
    if (partial_associative(n, t)) fill_from(n, t, cell + 1, fn);
  }
  t[cell] = UINT32_MAX;
}

}  // namespace detail

inline constexpr std::uint32_t max_enumeration_order = 4;

// Visits every associative table of order n.  The partition arguments let
// callers split the search space deterministically: partition p of
// partition_count scans exactly the tables whose first cell value is
// congruent to p, and the union over p in [0, partition_count) in order
// reproduces the full lexicographic stream.
template <class Fn>
void enumerate_semigroup_tables(std::uint32_t n, Fn&& fn, std::uint32_t partition = 0,
                                std::uint32_t partition_count = 1) {
  if (n == 0 || n > max_enumeration_order) {
    throw resource_limit_error("enumerate_semigroup_tables: order " + std::to_string(n) +
                               " outside supported range 1..4");
  }
  if (partition_count == 0 || partition >= partition_count) {
    throw precondition_error("enumerate_semigroup_tables: bad partition");
  }
  std::vector<std::uint32_t> t(std::size_t(n) * n, UINT32_MAX);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (v % partition_count != partition) continue;
    t[0] = v;
    if (detail::partial_associative(n, t)) detail::fill_from(n, t, 1, fn);
    t[0] = UINT32_MAX;
  }
}

inline std::uint64_t count_semigroup_tables(std::uint32_t n) {
  std::uint64_t c = 0;
  enumerate_semigroup_tables(n, [&](const FiniteSemigroup&) { ++c; });
  return c;
}

// Number of isomorphism classes among the given tables: canonical form is the
// lexicographic minimum over all relabelings.
inline std::uint64_t count_up_to_isomorphism(std::uint32_t n,
                                             const std::vector<std::vector<std::uint32_t>>& tables) {
  std::vector<std::uint32_t> perm(n);
  std::vector<std::vector<std::uint32_t>> canon;
  canon.reserve(tables.size());
  for (const auto& t : tables) {
    for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
    std::vector<std::uint32_t> best;
    do {
      std::vector<std::uint32_t> img(std::size_t(n) * n);
      for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
          img[std::size_t(perm[a]) * n + perm[b]] = perm[t[std::size_t(a) * n + b]];
      if (best.empty() || img < best) best = std::move(img);
    } while (std::next_permutation(perm.begin(), perm.end()));
    canon.push_back(std::move(best));
  }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  return canon.size();
}

}  // namespace amenkit
