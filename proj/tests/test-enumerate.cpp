#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "amenkit/enumerate.hpp"
#include "amenkit/errors.hpp"
#include "amenkit/semigroup.hpp"

using namespace amenkit;

namespace {

// Independent oracle: try all n^(n*n) tables and keep the associative ones.
std::vector<std::vector<std::uint32_t>> brute_force_tables(std::uint32_t n) {
  std::vector<std::vector<std::uint32_t>> out;
  const std::size_t cells = std::size_t(n) * n;
  std::vector<std::uint32_t> t(cells, 0);
  while (true) {
    if (!FiniteSemigroup::check(n, t)) out.push_back(t);
    std::size_t i = cells;
    while (i > 0 && t[i - 1] == n - 1) t[--i] = 0;
    if (i == 0) break;
    ++t[i - 1];
  }
  return out;
}

}  // namespace

TEST_CASE("enumeration agrees with the exhaustive oracle for small orders") {
  for (std::uint32_t n = 1; n <= 3; ++n) {
    const auto expected = brute_force_tables(n);
    std::vector<std::vector<std::uint32_t>> got;
    enumerate_semigroup_tables(n, [&](const FiniteSemigroup& s) { got.push_back(s.entries()); });
    CHECK(got == expected);  // same tables, same lexicographic order
  }
  CHECK(count_semigroup_tables(1) == 1);
  CHECK(count_semigroup_tables(2) == 8);
  CHECK(count_semigroup_tables(3) == 113);
}

TEST_CASE("order four count") {
  CHECK(count_semigroup_tables(4) == 3492);
}

TEST_CASE("isomorphism class counts") {
  for (std::uint32_t n = 1; n <= 4; ++n) {
    std::vector<std::vector<std::uint32_t>> all;
    enumerate_semigroup_tables(n, [&](const FiniteSemigroup& s) { all.push_back(s.entries()); });
    const std::uint64_t expected[] = {1, 5, 24, 188};
    CHECK(count_up_to_isomorphism(n, all) == expected[n - 1]);
  }
}

TEST_CASE("the stream starts with the null table") {
  std::vector<std::uint32_t> first;
  bool taken = false;
  enumerate_semigroup_tables(2, [&](const FiniteSemigroup& s) {
    if (!taken) {
      first = s.entries();
      taken = true;
    }
  });
  CHECK(first == std::vector<std::uint32_t>{0, 0, 0, 0});
}

TEST_CASE("partitions cover the stream exactly once and preserve order") {
  std::vector<std::vector<std::uint32_t>> whole;
  enumerate_semigroup_tables(3, [&](const FiniteSemigroup& s) { whole.push_back(s.entries()); });

  for (std::uint32_t parts : {2u, 3u, 5u}) {
    std::vector<std::vector<std::uint32_t>> merged;
    for (std::uint32_t p = 0; p < parts; ++p) {
      enumerate_semigroup_tables(
          3, [&](const FiniteSemigroup& s) { merged.push_back(s.entries()); }, p, parts);
    }
    // Partition p holds exactly the tables whose first cell is p mod parts,
    // so partition-major order is the whole stream sorted by first cell.
    auto expected = whole;
    std::stable_sort(expected.begin(), expected.end(),
                     [&](const auto& a, const auto& b) { return a[0] % parts < b[0] % parts; });
    CHECK(merged == expected);
  }
}

TEST_CASE("unsupported orders and bad partitions are rejected") {
  const auto nop = [](const FiniteSemigroup&) {};
  CHECK_THROWS_AS(enumerate_semigroup_tables(5, nop), resource_limit_error);
  CHECK_THROWS_AS(enumerate_semigroup_tables(0, nop), resource_limit_error);
  CHECK_THROWS_AS(enumerate_semigroup_tables(2, nop, 2, 2), precondition_error);
  CHECK_THROWS_AS(enumerate_semigroup_tables(2, nop, 0, 0), precondition_error);
}
