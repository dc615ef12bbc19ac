#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <vector>

#include "amenkit/digraph.hpp"
#include "amenkit/elem_set.hpp"
#include "amenkit/errors.hpp"
#include "amenkit/ratio.hpp"
#include "amenkit/semigroup.hpp"
#include "amenkit/universe.hpp"

using namespace amenkit;

namespace {

Digraph cycle(std::uint32_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n});
  return Digraph(n, edges);
}

Digraph two_cycle() { return cycle(2); }

// Both vertices reach both vertices in one step, loops included.
Digraph complete_with_loops(std::uint32_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) edges.push_back({u, v});
  }
  return Digraph(n, edges);
}

ElemSet set_of(std::uint32_t n, std::initializer_list<std::uint32_t> xs) {
  ElemSet s(n);
  for (auto x : xs) s.insert(x);
  return s;
}

}  // namespace

TEST_CASE("digraph construction normalizes and validates") {
  CHECK_THROWS_AS(Digraph(0), precondition_error);

  Digraph g(3, {{0, 1}, {0, 1}, {1, 2}, {2, 0}});
  CHECK(g.size() == 3);
  CHECK(g.edge_count() == 3);  // parallel edge collapsed
  CHECK(g.out_degree_bound() == 1);
  CHECK(g.has_edge(0, 1));
  CHECK_FALSE(g.has_edge(1, 0));
  CHECK(g.out(2) == std::vector<std::uint32_t>{0});
  CHECK_THROWS_AS(g.out(3), index_error);
  CHECK_THROWS_AS(g.add_edge(0, 5), index_error);
  CHECK_THROWS_AS(Digraph(2, {{0, 2}}), index_error);
}

TEST_CASE("directed distances are breadth-first exact with infinity for unreachable") {
  const auto d = semimetric(cycle(3));
  CHECK(d(0, 0) == 0);
  CHECK(d(0, 1) == 1);
  CHECK(d(0, 2) == 2);
  CHECK(d(2, 1) == 2);
  CHECK_FALSE(d.triangle_violation().has_value());

  const auto iso = semimetric(Digraph(3));
  CHECK(iso(1, 1) == 0);
  CHECK(iso(0, 1) == Semimetric::INF);
  CHECK_FALSE(iso.triangle_violation().has_value());
  CHECK_THROWS_AS(iso(3, 0), index_error);
}

TEST_CASE("triangle violations report the first bad triple") {
  Semimetric m(3);
  for (std::uint32_t v = 0; v < 3; ++v) m.set(v, v, 0);
  m.set(0, 1, 1);
  m.set(1, 2, 1);

  SECTION("finite excess") {
    m.set(0, 2, 3);
    const auto bad = m.triangle_violation();
    REQUIRE(bad.has_value());
    CHECK(*bad == std::array<std::uint32_t, 3>{0, 1, 2});
  }

  SECTION("infinite hop over a finite two-step path") {
    const auto bad = m.triangle_violation();
    REQUIRE(bad.has_value());
    CHECK(*bad == std::array<std::uint32_t, 3>{0, 1, 2});
  }
}

TEST_CASE("out boundary and isoperimetric ratio") {
  const auto c3 = cycle(3);
  CHECK(out_boundary(c3, set_of(3, {0, 1})) == set_of(3, {2}));
  CHECK(out_boundary(c3, ElemSet::full(3)).empty());
  CHECK(isoperimetric_ratio(c3, set_of(3, {0})) == Ratio(1));
  CHECK(isoperimetric_ratio(c3, set_of(3, {0, 1})) == Ratio(1, 2));
  CHECK_THROWS_AS(out_boundary(c3, ElemSet(2)), precondition_error);
  CHECK_THROWS_AS(isoperimetric_ratio(c3, ElemSet(3)), empty_set_error);
}

TEST_CASE("proper isoperimetric number scans all proper subsets exactly") {
  const auto r3 = proper_isoperimetric_number(cycle(3));
  CHECK(r3.value == Ratio(1, 2));
  CHECK(r3.minimizer == set_of(3, {0, 1}));

  const auto r6 = proper_isoperimetric_number(cycle(6));
  CHECK(r6.value == Ratio(1, 5));
  CHECK(r6.minimizer == set_of(6, {0, 1, 2, 3, 4}));

  // On an n-cycle the best proper subset is an arc missing one vertex.
  for (std::uint32_t n = 2; n <= 8; ++n) {
    CHECK(proper_isoperimetric_number(cycle(n)).value ==
          Ratio(1, static_cast<std::int64_t>(n) - 1));
  }

  // No edges: every subset has empty boundary.
  const auto flat = proper_isoperimetric_number(Digraph(3));
  CHECK(flat.value == Ratio(0));

  CHECK_THROWS_AS(proper_isoperimetric_number(Digraph(1)), precondition_error);
  CHECK_THROWS_AS(proper_isoperimetric_number(Digraph(21)), resource_limit_error);
}

TEST_CASE("left and right graphs of a finite table differ when the table does") {
  const auto lz = tables::left_zero(2);
  const auto left = cayley_left(lz, ElemSet::full(2));
  const auto right = cayley_right(lz, ElemSet::full(2));

  // x * v = x: every vertex reaches every generator.
  CHECK(left.out(0) == std::vector<std::uint32_t>{0, 1});
  CHECK(left.out(1) == std::vector<std::uint32_t>{0, 1});
  // v * x = v: only loops.
  CHECK(right.out(0) == std::vector<std::uint32_t>{0});
  CHECK(right.out(1) == std::vector<std::uint32_t>{1});

  const auto z2 = tables::cyclic_group(2);
  const auto flip = cayley_left(z2, set_of(2, {1}));
  CHECK(flip.out(0) == std::vector<std::uint32_t>{1});
  CHECK(flip.out(1) == std::vector<std::uint32_t>{0});
}

TEST_CASE("truncated graphs on a generated ball drop edges that leave it") {
  const FreeUniverse f2(2);
  const auto truncated = cayley_ball(f2, 3, CayleySide::Right);
  REQUIRE(truncated.vertices.size() == 14);
  CHECK(truncated.graph.size() == 14);
  CHECK(truncated.graph.edge_count() == 12);  // only length <= 2 words keep both edges
  CHECK(truncated.graph.out_degree_bound() == 2);
  std::uint32_t leaves = 0, full = 0;
  for (std::uint32_t v = 0; v < truncated.graph.size(); ++v) {
    const auto deg = truncated.graph.out(v).size();
    if (deg == 0) ++leaves;
    if (deg == 2) ++full;
  }
  CHECK(leaves == 8);
  CHECK(full == 6);

  // A saturated finite ball reproduces the plain table graph.
  const TableUniverse z2(tables::cyclic_group(2));
  const auto ball = cayley_ball(z2, 2, CayleySide::Right);
  const auto direct = cayley_right(tables::cyclic_group(2), ElemSet::full(2));
  REQUIRE(ball.graph.size() == direct.size());
  for (std::uint32_t u = 0; u < 2; ++u) {
    for (std::uint32_t v = 0; v < 2; ++v) {
      CHECK(ball.graph.has_edge(u, v) == direct.has_edge(u, v));
    }
  }

  const auto b1 = balls(f2, 1).ball(1);
  auto dup = b1;
  dup.push_back(b1.front());
  CHECK_THROWS_AS(cayley_on_vertices(f2, dup, f2.generators(), CayleySide::Right),
                  precondition_error);
}

TEST_CASE("displacement verification accepts the identity and scale maps") {
  const auto g = two_cycle();
  const auto ok = verify_qi(g, g, {0, 1}, Ratio(1));
  CHECK(ok.is_true());
  CHECK(ok.witness.at("lambda") == "1");

  // Collapsing a 3-cycle to a loop stretches one pair past lambda = 1.
  const Digraph loop(1, {{0, 0}});
  const auto tight = verify_qi(cycle(3), loop, {0, 0, 0}, Ratio(1));
  CHECK(tight.is_false());
  CHECK(tight.witness.at("kind") == "upper_bound");
  CHECK(tight.witness.at("pair") == json::array({0, 2}));
  CHECK(tight.witness.at("d_source") == "2");
  CHECK(tight.witness.at("d_target") == "0");

  CHECK(verify_qi(cycle(3), loop, {0, 0, 0}, Ratio(2)).is_true());

  // The reverse inclusion fails density at lambda = 1 and passes at 2.
  const auto sparse = verify_qi(loop, cycle(3), {0}, Ratio(1));
  CHECK(sparse.is_false());
  CHECK(sparse.witness.at("kind") == "density");
  CHECK(sparse.witness.at("vertex") == 1);
  CHECK(verify_qi(loop, cycle(3), {0}, Ratio(2)).is_true());
}

TEST_CASE("displacement verification treats infinite distances asymmetrically") {
  const Digraph apart(2);  // no edges at all
  const auto g = two_cycle();

  const auto upper = verify_qi(apart, g, {0, 1}, Ratio(1));
  CHECK(upper.is_false());
  CHECK(upper.witness.at("kind") == "upper_bound");
  CHECK(upper.witness.at("d_source") == "inf");
  CHECK(upper.witness.at("d_target") == "1");

  const auto lower = verify_qi(g, apart, {0, 1}, Ratio(1));
  CHECK(lower.is_false());
  CHECK(lower.witness.at("kind") == "lower_bound");
  CHECK(lower.witness.at("d_source") == "1");
  CHECK(lower.witness.at("d_target") == "inf");

  // Matching infinities on both sides are fine.
  CHECK(verify_qi(apart, apart, {0, 1}, Ratio(1)).is_true());
}

TEST_CASE("displacement verification with fractional lambda stays exact") {
  // Lower bound demands 1 <= (1/2) * 1 + 1/4, which fails as an exact rational.
  const auto g = two_cycle();
  const auto v = verify_qi(g, g, {0, 1}, Ratio(1, 2));
  CHECK(v.is_false());
  CHECK(v.witness.at("kind") == "lower_bound");
}

TEST_CASE("displacement verification rejects malformed maps") {
  const auto g = two_cycle();
  CHECK_THROWS_AS(verify_qi(g, g, {0}, Ratio(1)), precondition_error);
  CHECK_THROWS_AS(verify_qi(g, g, {0, 2}, Ratio(1)), index_error);
  CHECK_THROWS_AS(verify_qi(g, g, {0, 1}, Ratio(0)), precondition_error);
  CHECK_THROWS_AS(verify_qi(g, g, {0, 1}, Ratio(-1)), precondition_error);
}

TEST_CASE("transfer constants follow the walk-count formulas") {
  const auto g = two_cycle();
  const auto unit = transfer_constants(g, g, Ratio(1));
  CHECK(unit.c == 2);  // 1 + k, out-degree bound 1
  CHECK(unit.d == 5);  // one walk per length 0..4
  CHECK(unit.e == 2);

  const auto wide = transfer_constants(complete_with_loops(2), cycle(3), Ratio(2));
  CHECK(wide.c == 7);     // 1 + 2 + 4
  CHECK(wide.d == 8191);  // sum of 2^len for len 0..12
  CHECK(wide.e == 3);

  // Fractional lambda floors both reach parameters.
  const auto frac = transfer_constants(g, g, Ratio(3, 2));
  CHECK(frac.c == 2);
  CHECK(frac.d == 8);  // floor(2 * 9/4 + 3) = 7, walks 0..7
  CHECK(frac.e == 2);

  CHECK_THROWS_AS(transfer_constants(g, g, Ratio(0)), precondition_error);
  CHECK_THROWS_AS(transfer_constants(complete_with_loops(5), g, Ratio(30)),
                  resource_limit_error);
}

TEST_CASE("set transfer through a verified map obeys both bounds") {
  const auto g = two_cycle();
  const auto moved = transfer_folner_set(g, g, {0, 1}, Ratio(1), set_of(2, {0}));
  CHECK(moved.q == ElemSet::full(2));  // both vertices sit within distance 1 both ways
  CHECK(moved.constants.c == 2);
  CHECK(moved.constants.d == 5);
  CHECK(moved.constants.e == 2);
  CHECK(moved.boundary_a == 1);
  CHECK(moved.boundary_q == 0);
  CHECK(moved.size_bound_ok);
  CHECK(moved.boundary_bound_ok);

  const auto whole = transfer_folner_set(g, g, {0, 1}, Ratio(1), ElemSet::full(2));
  CHECK(whole.q == ElemSet::full(2));
  CHECK(whole.boundary_a == 0);
  CHECK(whole.boundary_q == 0);

  CHECK_THROWS_AS(
      transfer_folner_set(cycle(3), Digraph(1, {{0, 0}}), {0, 0, 0}, Ratio(1), set_of(3, {0})),
      qi_not_verified_error);
  CHECK_THROWS_AS(transfer_folner_set(g, g, {0, 1}, Ratio(1), ElemSet(2)), empty_set_error);
  CHECK_THROWS_AS(transfer_folner_set(g, g, {0, 1}, Ratio(1), ElemSet(3)), precondition_error);
}

TEST_CASE("identity maps are verified and transfer without violations on random graphs") {
  std::mt19937 rng(20240817);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint32_t n = 2 + rng() % 5;
    Digraph g(n);
    for (std::uint32_t u = 0; u < n; ++u) {
      for (std::uint32_t v = 0; v < n; ++v) {
        if (rng() % 3 == 0) g.add_edge(u, v);
      }
    }
    g.normalize();
    std::vector<std::uint32_t> identity(n);
    for (std::uint32_t v = 0; v < n; ++v) identity[v] = v;

    const auto verdict = verify_qi(g, g, identity, Ratio(2));
    REQUIRE(verdict.is_true());

    ElemSet a(n);
    a.insert(rng() % n);
    if (n > 1) a.insert(rng() % n);
    const auto moved = transfer_folner_set(g, g, identity, Ratio(2), a);
    CHECK(moved.size_bound_ok);
    CHECK(moved.boundary_bound_ok);
    // The image of A always lands inside the transferred set.
    for (const auto v : a.members()) CHECK(moved.q.contains(v));
  }
}
