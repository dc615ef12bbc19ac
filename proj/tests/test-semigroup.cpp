#include <catch2/catch_amalgamated.hpp>

#include "amenkit/elem_set.hpp"
#include "amenkit/errors.hpp"
#include "amenkit/semigroup.hpp"

using namespace amenkit;

namespace {

const FiniteSemigroup& z2() {
  static const FiniteSemigroup s = tables::cyclic_group(2);
  return s;
}

// <a | a^4 = a^2>: index 0 is a, 1 is a^2, 2 is a^3.
const FiniteSemigroup& mono42() {
  static const FiniteSemigroup s = tables::monogenic(2, 2);
  return s;
}

}  // namespace

TEST_CASE("table validation rejects bad input with the first violation") {
  CHECK_THROWS_AS(FiniteSemigroup(2, {0, 1, 0}), precondition_error);
  CHECK_THROWS_AS(FiniteSemigroup(2, {0, 1, 2, 0}), index_error);
  CHECK_THROWS_AS(FiniteSemigroup(0, {}), precondition_error);

  // The first non-associative triple in lexicographic order.
  try {
    FiniteSemigroup(2, {0, 1, 0, 0});
    FAIL("expected a throw");
  } catch (const not_associative_error& e) {
    CHECK(e.a == 1);
    CHECK(e.b == 0);
    CHECK(e.c == 1);
  }

  const auto v = FiniteSemigroup::check(2, {0, 1, 0, 0});
  REQUIRE(v.has_value());
  CHECK(v->kind == TableViolation::Kind::NotAssociative);
}

TEST_CASE("canonical tables have their defining identities") {
  const auto lz = tables::left_zero(3);
  const auto rz = tables::right_zero(3);
  const auto nu = tables::null_semigroup(3);
  for (std::uint32_t a = 0; a < 3; ++a) {
    for (std::uint32_t b = 0; b < 3; ++b) {
      CHECK(lz.mul(a, b) == a);
      CHECK(rz.mul(a, b) == b);
      CHECK(nu.mul(a, b) == 0);
    }
  }
  CHECK(z2().mul(1, 1) == 0);
  CHECK(mono42().entries() == std::vector<std::uint32_t>{1, 2, 1, 2, 1, 2, 1, 2, 1});
}

TEST_CASE("translates, ideals and closure on the monogenic example") {
  const auto& s = mono42();
  CHECK(right_ideal(s, 0) == ElemSet::of(3, {1, 2}));             // aS
  CHECK(principal_right_ideal(s, 0) == ElemSet::of(3, {0, 1, 2}));  // aS^1
  CHECK(right_ideal(s, 1) == ElemSet::of(3, {1, 2}));             // a^2 S
  CHECK(left_translate(s, 0, ElemSet::of(3, {0, 1})) == ElemSet::of(3, {1, 2}));
  CHECK(closure(s, ElemSet::single(3, 0)) == ElemSet::full(3));
  CHECK(closure(s, ElemSet::single(3, 1)) == ElemSet::of(3, {1}));  // a^2 idempotent
  CHECK(idempotents(s) == std::vector<std::uint32_t>{1});  // a^2 only
  CHECK(idempotents(z2()) == std::vector<std::uint32_t>{0});
}

TEST_CASE("commutativity scan") {
  CHECK(is_commutative(z2()));
  CHECK(is_commutative(mono42()));
  CHECK_FALSE(is_commutative(tables::left_zero(2)));
  CHECK(is_commutative(tables::null_semigroup(4)));
}

TEST_CASE("left reversibility distinguishes the two-element basics") {
  CHECK(is_left_reversible(z2()).is_true());
  CHECK(is_left_reversible(tables::right_zero(2)).is_true());
  CHECK(is_left_reversible(tables::null_semigroup(2)).is_true());
  CHECK(is_left_reversible(mono42()).is_true());

  const Verdict v = is_left_reversible(tables::left_zero(2));
  REQUIRE(v.is_false());
  CHECK(v.witness.at("a") == 0);
  CHECK(v.witness.at("b") == 1);
}

TEST_CASE("left thickness reduces to a column check") {
  CHECK(is_left_thick(z2(), ElemSet::full(2)).is_true());
  CHECK_FALSE(is_left_thick(z2(), ElemSet::single(2, 0)).is_true());
  // In a right zero semigroup every column is a singleton.
  CHECK(is_left_thick(tables::right_zero(2), ElemSet::single(2, 0)).is_true());
  // aS = {a^2, a^3} is left thick in the monogenic example.
  CHECK(is_left_thick(mono42(), ElemSet::of(3, {1, 2})).is_true());
  CHECK_FALSE(is_left_thick(mono42(), ElemSet::single(3, 0)).is_true());
}

TEST_CASE("thickness witness chain lands every member of F in aS") {
  const auto& s = mono42();
  const ElemSet f = ElemSet::full(3);
  const std::uint32_t t = thickness_witness_chain(s, 0, f);
  const ElemSet target = right_ideal(s, 0);
  for (auto fi : f.members()) CHECK(target.contains(s.mul(fi, t)));

  CHECK_THROWS_AS(thickness_witness_chain(tables::left_zero(2), 0, ElemSet::full(2)),
                  not_left_reversible_error);
  CHECK_THROWS_AS(thickness_witness_chain(s, 0, ElemSet(3)), empty_set_error);
}

TEST_CASE("common right multiple relation on small instances") {
  // In a group the relation is equality.
  const CongRelation rz2 = cong_relation(z2());
  CHECK(rz2.status == CongRelation::Kind::Congruence);
  CHECK(rz2.rel(0, 0));
  CHECK_FALSE(rz2.rel(0, 1));

  // In a null semigroup everything is related.
  const CongRelation rnull = cong_relation(tables::null_semigroup(3));
  CHECK(rnull.status == CongRelation::Kind::Congruence);
  CHECK(rnull.rel(0, 2));

  // a ~ a^3 but a^2 sits alone.
  const CongRelation rm = cong_relation(mono42());
  CHECK(rm.status == CongRelation::Kind::Congruence);
  CHECK(rm.rel(0, 2));
  CHECK_FALSE(rm.rel(0, 1));
}

TEST_CASE("quotient of the monogenic example is the two-element group") {
  const auto& s = mono42();
  const Quotient q = quotient(s, cong_relation(s));
  CHECK(q.semigroup.size() == 2);
  CHECK(q.projection == std::vector<std::uint32_t>{0, 1, 0});
  // Identity is the class of a^2.
  CHECK(q.semigroup.entries() == std::vector<std::uint32_t>{1, 0, 0, 1});
  CHECK(is_right_cancellative(q.semigroup).is_true());
  CHECK(is_left_cancellative(q.semigroup).is_true());
  // The projection is multiplicative.
  for (std::uint32_t x = 0; x < 3; ++x)
    for (std::uint32_t y = 0; y < 3; ++y)
      CHECK(q.projection[s.mul(x, y)] == q.semigroup.mul(q.projection[x], q.projection[y]));

  CongRelation fake = cong_relation(s);
  fake.status = CongRelation::Kind::NotTransitive;
  CHECK_THROWS_AS(quotient(s, fake), not_a_congruence_error);
  fake.n = 5;
  CHECK_THROWS_AS(quotient(s, fake), precondition_error);
}

TEST_CASE("klawe condition verdicts") {
  CHECK(is_klawe(z2()).is_true());
  CHECK(is_klawe(tables::null_semigroup(2)).is_true());
  CHECK(is_klawe(mono42()).is_true());

  const Verdict v = is_klawe(tables::left_zero(2));
  REQUIRE(v.is_false());
  // s*x = s*y for every s, but 0*t = 0 != 1 = 1*t for every t.
  CHECK(v.witness.at("x") != v.witness.at("y"));
}

TEST_CASE("near left cancellativity verdicts") {
  CHECK(is_near_left_cancellative(z2()).is_true());
  CHECK(is_near_left_cancellative(tables::right_zero(2)).is_true());
  CHECK(is_near_left_cancellative(mono42()).is_true());
  CHECK_FALSE(is_near_left_cancellative(tables::left_zero(2)).is_true());
  // Null semigroup: every column S*t is the singleton {0}, so any translation
  // is injective on it; matches the SFC equivalence (commutative => SFC).
  CHECK(is_near_left_cancellative(tables::null_semigroup(2)).is_true());
}

TEST_CASE("every principal ideal of a finite semigroup holds an idempotent") {
  CHECK(every_principal_ideal_has_idempotent(z2()).is_true());
  CHECK(every_principal_ideal_has_idempotent(mono42()).is_true());
  CHECK(every_principal_ideal_has_idempotent(tables::left_zero(3)).is_true());
  CHECK(every_principal_ideal_has_idempotent(tables::null_semigroup(3)).is_true());
}

TEST_CASE("idempotent-route witness gives an injective thick set") {
  // Group: the identity generates E = S.
  const NearLcWitness wz = near_lc_witness_via_idempotent(z2(), 1);
  CHECK(wz.f == 0);
  CHECK(wz.set == ElemSet::full(2));

  const NearLcWitness wr = near_lc_witness_via_idempotent(tables::right_zero(2), 0);
  CHECK(wr.f == 0);
  CHECK(wr.set == ElemSet::full(2));

  // Monogenic: f = a^2 and E = a^2 S = {a^2, a^3}.
  const NearLcWitness wm = near_lc_witness_via_idempotent(mono42(), 0);
  CHECK(wm.f == 1);
  REQUIRE(wm.t.has_value());
  CHECK(mono42().mul(*wm.t, 0) == wm.f);
  CHECK(wm.set == ElemSet::of(3, {1, 2}));
  // Left translation by a is injective on E and E is left thick.
  CHECK(is_left_thick(mono42(), wm.set).is_true());
  CHECK(mono42().mul(0, 1) != mono42().mul(0, 2));

  CHECK_THROWS_AS(near_lc_witness_via_idempotent(tables::left_zero(2), 0),
                  not_left_reversible_error);
  CHECK_THROWS_AS(near_lc_witness_via_idempotent(z2(), 7), index_error);
}

TEST_CASE("cancellativity scans report a concrete collision") {
  CHECK(is_left_cancellative(z2()).is_true());
  CHECK(is_right_cancellative(z2()).is_true());

  const Verdict v = is_left_cancellative(tables::left_zero(2));
  REQUIRE(v.is_false());
  const auto a = v.witness.at("s").get<std::uint32_t>();
  const auto x = v.witness.at("x").get<std::uint32_t>();
  const auto y = v.witness.at("y").get<std::uint32_t>();
  CHECK(tables::left_zero(2).mul(a, x) == tables::left_zero(2).mul(a, y));
  CHECK(x != y);

  CHECK(is_right_cancellative(tables::left_zero(2)).is_true());
  CHECK(is_left_cancellative(tables::right_zero(2)).is_true());
  CHECK_FALSE(is_right_cancellative(tables::right_zero(2)).is_true());
}
