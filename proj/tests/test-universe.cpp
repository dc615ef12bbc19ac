#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "amenkit/errors.hpp"
#include "amenkit/semigroup.hpp"
#include "amenkit/universe.hpp"

using namespace amenkit;

namespace {

// Deliberately broken: distinct elements 3 and 4 share a canonical key.
struct CollidingModel {
  using element_type = int;
  using key_type = int;
  std::vector<int> generators() const { return {1, 2}; }
  int multiply(int a, int b) const { return a + b; }
  int key(int e) const { return e > 3 ? 3 : e; }
  std::string format(int e) const { return std::to_string(e); }
  CertifiedFlags flags() const { return {}; }
};

// Deliberately broken: (a*b)*c != a*(b*c).
struct NonAssocModel {
  using element_type = int;
  using key_type = int;
  std::vector<int> generators() const { return {1, 2}; }
  int multiply(int a, int b) const { return a + 2 * b; }
  int key(int e) const { return e; }
  std::string format(int e) const { return std::to_string(e); }
  CertifiedFlags flags() const { return {}; }
};

}  // namespace

TEST_CASE("free monoid ball sizes follow 2^(i+1) - 2") {
  const FreeUniverse u(2);
  const auto sizes = growth_table(u, 10);
  std::vector<std::size_t> expected;
  for (std::uint32_t i = 1; i <= 10; ++i) expected.push_back((std::size_t{2} << i) - 2);
  CHECK(sizes == expected);
}

TEST_CASE("free commutative ball sizes are simplex numbers") {
  const FreeCommutativeUniverse u2(2);
  std::vector<std::size_t> expected2;
  for (std::size_t i = 1; i <= 12; ++i) expected2.push_back((i + 1) * (i + 2) / 2 - 1);
  CHECK(growth_table(u2, 12) == expected2);

  const FreeCommutativeUniverse u3(3);
  // C(i+3, 3) - 1
  CHECK(growth_table(u3, 8) ==
        std::vector<std::size_t>{3, 9, 19, 34, 55, 83, 119, 164});
}

TEST_CASE("bicyclic normal form arithmetic and ball sizes") {
  const BicyclicUniverse u;
  const auto gens = u.generators();
  REQUIRE(gens.size() == 2);
  const auto p = gens[0];
  const auto q = gens[1];
  CHECK(p == std::pair<std::uint64_t, std::uint64_t>{0, 1});
  CHECK(q == std::pair<std::uint64_t, std::uint64_t>{1, 0});
  // pq = 1 but qp != 1.
  CHECK(u.multiply(p, q) == std::pair<std::uint64_t, std::uint64_t>{0, 0});
  CHECK(u.multiply(q, p) == std::pair<std::uint64_t, std::uint64_t>{1, 1});
  // q^a p^b * q^c p^d cancels min(b, c) inner pairs.
  CHECK(u.multiply({2, 3}, {1, 4}) == std::pair<std::uint64_t, std::uint64_t>{2, 6});
  CHECK(u.multiply({2, 1}, {4, 5}) == std::pair<std::uint64_t, std::uint64_t>{5, 5});
  CHECK(u.format({0, 0}) == "1");
  CHECK(u.format({2, 1}) == "q^2*p");
  CHECK(u.format({1, 0}) == "q");

  CHECK(growth_table(u, 12) ==
        std::vector<std::size_t>{2, 6, 10, 15, 21, 28, 36, 45, 55, 66, 78, 91});
}

TEST_CASE("shells partition the ball and saturation freezes sizes") {
  const FreeUniverse f2(2);
  const auto t = balls(f2, 4);
  CHECK(t.sizes == std::vector<std::size_t>{2, 6, 14, 30});
  CHECK_FALSE(t.saturated);
  CHECK(t.ball(2).size() == 6);
  CHECK(t.shells[2].size() == 14 - 6);  // shells[i] holds radius i+1

  // A finite table saturates and pads the remaining shells.
  const TableUniverse z2(tables::cyclic_group(2));
  const auto tz = balls(z2, 5);
  CHECK(tz.saturated);
  CHECK(tz.sizes == std::vector<std::size_t>{2, 2, 2, 2, 2});

  // Generating only a of <a | a^4 = a^2> reaches a^2 then a^3 then stops.
  const TableUniverse mono(tables::monogenic(2, 2), {0});
  const auto tm = balls(mono, 6);
  CHECK(tm.saturated);
  CHECK(tm.sizes == std::vector<std::size_t>{1, 2, 3, 3, 3, 3});
  CHECK(tm.ball(3).size() == closure(tables::monogenic(2, 2), ElemSet::single(3, 0)).size());
}

TEST_CASE("transformation products compose left factor first") {
  // f is the 3-cycle, g the constant map to 0.
  const TransformationUniverse u(3, {{1, 2, 0}, {0, 0, 0}});
  const auto gens = u.generators();
  CHECK(u.multiply(gens[0], gens[1]) == std::vector<std::uint8_t>{0, 0, 0});
  CHECK(u.multiply(gens[1], gens[0]) == std::vector<std::uint8_t>{1, 1, 1});
  CHECK(u.format(gens[0]) == "[1,2,0]");

  // swap01 and the 3-cycle generate all six permutations of three points.
  const TransformationUniverse s3(3, {{1, 0, 2}, {1, 2, 0}});
  CHECK(balls(s3, 8).ball(8).size() == 6);
}

TEST_CASE("broken universes are caught during ball construction") {
  CHECK_THROWS_AS(balls(CollidingModel{}, 3), error);
  CHECK_THROWS_AS(balls(NonAssocModel{}, 2), error);
  CHECK_THROWS_WITH(balls(NonAssocModel{}, 2),
                    Catch::Matchers::ContainsSubstring("associativity"));
}

TEST_CASE("element budget stops runaway enumeration") {
  CHECK_THROWS_AS(balls(FreeUniverse(2), 25, 1000), resource_limit_error);
  CHECK_THROWS_AS(balls(FreeUniverse(2), 0), precondition_error);
}

TEST_CASE("growth classification thresholds are exact") {
  const auto free2 = classify_growth(growth_table(FreeUniverse(2), 8));
  CHECK(free2.kind == GrowthClassification::Kind::ExponentialLikely);
  CHECK(free2.degree_estimate > 3.0);  // heuristic label only

  const auto fc2 = classify_growth(growth_table(FreeCommutativeUniverse(2), 20));
  CHECK(fc2.kind == GrowthClassification::Kind::PolynomialLikely);
  CHECK(fc2.degree_estimate > 1.7);
  CHECK(fc2.degree_estimate < 2.2);

  const auto flat = classify_growth(growth_table(TableUniverse(tables::cyclic_group(2)), 6));
  CHECK(flat.kind == GrowthClassification::Kind::PolynomialLikely);
  CHECK(flat.degree_estimate == Catch::Approx(0.0).margin(1e-9));

  // Quadratic-looking data whose tail ratios sit between the two bounds.
  const auto mid = classify_growth({2, 5, 9, 14, 20, 27, 35});
  CHECK(mid.kind == GrowthClassification::Kind::Inconclusive);
  CHECK(mid.last_ratios == std::vector<Ratio>{Ratio(10, 7), Ratio(27, 20), Ratio(35, 27)});

  CHECK_THROWS_AS(classify_growth({1, 2, 3, 4, 5}), too_few_points_error);
  CHECK_THROWS_AS(classify_growth({1, 2, 0, 4, 5, 6}), precondition_error);
}

TEST_CASE("free pair search finds the first collision in length-lex order") {
  // Two free generators never collide.
  const FreeUniverse f2(2);
  const auto gens = f2.generators();
  const auto r_free = free_pair_check(f2, gens[0], gens[1], 6);
  CHECK_FALSE(r_free.collided);
  CHECK(r_free.checked_up_to == 6);

  // Bicyclic: a=p, b=q collide first at aab = p (since pq = 1).
  const BicyclicUniverse bc;
  const auto p = bc.generators()[0];
  const auto q = bc.generators()[1];
  const auto r_bc = free_pair_check(bc, p, q, 6);
  REQUIRE(r_bc.collided);
  CHECK(format_pair_word(r_bc.u) == "a");
  CHECK(format_pair_word(r_bc.v) == "aab");
  CHECK(r_bc.product == p);
  CHECK(r_bc.checked_up_to == 2);

  // Z2 with a = identity: aa = a immediately.
  const TableUniverse z2(tables::cyclic_group(2));
  const auto r_z2 = free_pair_check(z2, 0u, 1u, 6);
  REQUIRE(r_z2.collided);
  CHECK(format_pair_word(r_z2.u) == "a");
  CHECK(format_pair_word(r_z2.v) == "aa");
  CHECK(r_z2.product == 0u);

  CHECK_THROWS_AS(free_pair_check(f2, gens[0], gens[1], 0), precondition_error);
  CHECK_THROWS_AS(free_pair_check(f2, gens[0], gens[1], 30, 1000), resource_limit_error);
  CHECK_THROWS_AS(free_pair_check(f2, gens[0], gens[1], 64), resource_limit_error);
}

TEST_CASE("a collision converts to an explicit right ideal intersection") {
  const BicyclicUniverse bc;
  const auto p = bc.generators()[0];
  const auto q = bc.generators()[1];
  const auto col = free_pair_check(bc, p, q, 6);
  REQUIRE(col.collided);
  const auto w = intersection_from_collision(bc, p, q, col.u, col.v);
  using E = std::pair<std::uint64_t, std::uint64_t>;
  CHECK(format_pair_word(w.common_prefix) == "a");
  CHECK(format_pair_word(w.u_suffix) == "b");
  CHECK(format_pair_word(w.v_suffix) == "abb");
  CHECK(w.common == E{1, 1});  // qp
  CHECK(w.multiplier == p);
  CHECK(w.a_multiplier == E{2, 1});  // q^2 p
  CHECK(w.b_multiplier == p);
  CHECK(w.radius_searched == 0);  // suffix products already agree
  CHECK(bc.multiply(p, w.a_multiplier) == w.common);
  CHECK(bc.multiply(q, w.b_multiplier) == w.common);

  const TableUniverse z2(tables::cyclic_group(2));
  const auto cz = free_pair_check(z2, 0u, 1u, 6);
  const auto wz = intersection_from_collision(z2, 0u, 1u, cz.u, cz.v);
  CHECK(wz.common == 1u);
  CHECK(wz.multiplier == 0u);
  CHECK(z2.table().mul(0, wz.a_multiplier) == wz.common);
  CHECK(z2.table().mul(1, wz.b_multiplier) == wz.common);

  // Left zero: right ideals of distinct elements never meet.
  const TableUniverse lz(tables::left_zero(2));
  const auto cl = free_pair_check(lz, 0u, 1u, 6);
  REQUIRE(cl.collided);
  CHECK_THROWS_AS(intersection_from_collision(lz, 0u, 1u, cl.u, cl.v, 4), klawe_witness_error);

  // Bad inputs.
  CHECK_THROWS_AS(intersection_from_collision(bc, p, q, col.u, col.u), precondition_error);
  CHECK_THROWS_AS(intersection_from_collision(bc, p, q, PairWord{0}, PairWord{1}),
                  precondition_error);
  CHECK_THROWS_AS(intersection_from_collision(bc, p, q, PairWord{}, PairWord{1}),
                  precondition_error);
}

TEST_CASE("right ideal intersection search scans radius by radius") {
  const BicyclicUniverse bc;
  const auto p = bc.generators()[0];
  const auto q = bc.generators()[1];
  const auto r = right_ideal_intersection_search(bc, p, q, 3);
  using E = std::pair<std::uint64_t, std::uint64_t>;
  REQUIRE(r.common.has_value());
  CHECK(r.radius == 2);
  CHECK(*r.common == E{1, 0});         // q itself: p * q^2 = q = q * 1
  CHECK(r.a_multiplier == E{2, 0});    // q^2
  CHECK(r.b_multiplier == E{0, 0});    // 1
  CHECK(bc.multiply(p, r.a_multiplier) == *r.common);
  CHECK(bc.multiply(q, r.b_multiplier) == *r.common);

  const FreeCommutativeUniverse fc(2);
  const auto e1 = fc.generators()[0];
  const auto e2 = fc.generators()[1];
  const auto rf = right_ideal_intersection_search(fc, e1, e2, 3);
  REQUIRE(rf.common.has_value());
  CHECK(rf.radius == 1);
  CHECK(*rf.common == std::vector<std::uint64_t>{1, 1});

  const FreeUniverse f2(2);
  const auto rn = right_ideal_intersection_search(f2, f2.generators()[0], f2.generators()[1], 5);
  CHECK_FALSE(rn.common.has_value());
  CHECK(rn.searched == 5);

  CHECK_THROWS_AS(right_ideal_intersection_search(f2, f2.generators()[0], f2.generators()[1], 0),
                  precondition_error);
}

TEST_CASE("closure table rebuilds a generated universe as a validated table") {
  // Two constant maps form a right zero semigroup.
  const TransformationUniverse consts(2, {{0, 0}, {1, 1}});
  const auto ct = closure_table(consts);
  CHECK(ct.semigroup.size() == 2);
  CHECK(ct.labels == std::vector<std::string>{"[0,0]", "[1,1]"});
  for (std::uint32_t a = 0; a < 2; ++a)
    for (std::uint32_t b = 0; b < 2; ++b) CHECK(ct.semigroup.mul(a, b) == b);

  // The symmetric group on three points closes at order six.
  const TransformationUniverse s3(3, {{1, 0, 2}, {1, 2, 0}});
  CHECK(closure_table(s3).semigroup.size() == 6);

  // An infinite universe exhausts the element budget instead of spinning.
  CHECK_THROWS_AS(closure_table(BicyclicUniverse{}, 2000), resource_limit_error);

  // A closure larger than the table cap is refused.
  const TransformationUniverse s4(4, {{1, 0, 2, 3}, {1, 2, 3, 0}});
  CHECK_THROWS_AS(closure_table(s4, default_element_cap(), 10), resource_limit_error);
  CHECK(closure_table(s4, default_element_cap(), 24).semigroup.size() == 24);
}

TEST_CASE("certified model flags") {
  CHECK(FreeUniverse(1).flags().commutative);
  CHECK_FALSE(FreeUniverse(2).flags().commutative);
  CHECK(FreeUniverse(2).flags().left_cancellative);
  CHECK(FreeUniverse(2).flags().growth == CertifiedFlags::Growth::Exponential);
  CHECK(FreeUniverse(1).flags().growth == CertifiedFlags::Growth::Polynomial);

  const auto fc = FreeCommutativeUniverse(3).flags();
  CHECK(fc.commutative);
  CHECK(fc.left_cancellative);
  CHECK(fc.growth == CertifiedFlags::Growth::Polynomial);
  CHECK(fc.poly_degree == 3);

  const auto bcf = BicyclicUniverse{}.flags();
  CHECK(bcf.inverse);
  CHECK_FALSE(bcf.left_cancellative);
  CHECK(bcf.growth == CertifiedFlags::Growth::Polynomial);
  CHECK(bcf.poly_degree == 2);

  // Table flags come from an exact scan of the table itself.
  CHECK(TableUniverse(tables::cyclic_group(3)).flags().commutative);
  CHECK(TableUniverse(tables::cyclic_group(3)).flags().left_cancellative);
  CHECK_FALSE(TableUniverse(tables::left_zero(2)).flags().commutative);

  // Transformation universes certify nothing up front.
  const auto tf = TransformationUniverse(2, {{0, 0}}).flags();
  CHECK_FALSE(tf.commutative);
  CHECK_FALSE(tf.left_cancellative);
  CHECK(tf.growth == CertifiedFlags::Growth::Uncertified);
}
