#include "doctest.h"

#include <algorithm>

#include "conlat/lattice.hpp"
#include "conlat/oracles.hpp"
#include "conlat/semilattice.hpp"

using namespace conlat;

TEST_CASE("join table validation catches broken tables") {
  // 2-chain with a non-idempotent entry.
  std::vector<std::string> ids = {"0", "1"};
  CHECK(FiniteJoinSemilattice::validate(ids, 0, std::vector<int>{0, 1, 1, 0})
            .has_value());
  CHECK(!FiniteJoinSemilattice::validate(ids, 0, std::vector<int>{0, 1, 1, 1})
             .has_value());
  // Wrong zero.
  CHECK(FiniteJoinSemilattice::validate(ids, 1, std::vector<int>{0, 1, 1, 1})
            .has_value());
  CHECK_THROWS_AS(
      FiniteJoinSemilattice(ids, 0, std::vector<int>{0, 1, 1, 0}), DomainError);
}

TEST_CASE("the stated six-element no-largest table is not a semilattice") {
  // With p, q below both a0 and a1, the join p v q = 1 breaks associativity:
  // any valid table forces p v q <= a0.
  std::vector<std::string> ids = {"0", "p", "q", "a0", "a1", "1"};
  // 0 p q a0 a1 1; join(p, q) = 1, p, q below a0 and a1.
  std::vector<int> table = {
      0, 1, 2, 3, 4, 5,  //
      1, 1, 5, 3, 4, 5,  //
      2, 5, 2, 3, 4, 5,  //
      3, 3, 3, 3, 5, 5,  //
      4, 4, 4, 5, 4, 5,  //
      5, 5, 5, 5, 5, 5,
  };
  auto err = FiniteJoinSemilattice::validate(ids, 0, table);
  REQUIRE(err.has_value());
  CHECK(err->find("associative") != std::string::npos);
}

TEST_CASE("principal ideal of the bottom is the singleton bottom") {
  FiniteJoinSemilattice chain = chain_semilattice(2);
  Ideal ideal = principal_ideal(chain, 0);
  CHECK(ideal.members == std::vector<int>{0});
}

TEST_CASE("principal ideal in the diamond") {
  FiniteJoinSemilattice m3 = as_join_semilattice(diamond_m3());
  Ideal ideal = principal_ideal(m3, m3.index("a"));
  std::vector<int> expected = {m3.index("0"), m3.index("a")};
  std::sort(expected.begin(), expected.end());
  CHECK(ideal.members == expected);
  // Downward closed and join closed, exhaustively.
  for (int x : ideal.members) {
    for (int y = 0; y < m3.size(); ++y)
      if (m3.leq(y, x)) CHECK(ideal.contains(y));
    for (int y : ideal.members) CHECK(ideal.contains(m3.join(x, y)));
  }
}

TEST_CASE("principal ideal rejects unknown elements") {
  CHECK_THROWS_AS(principal_ideal(chain_semilattice(2), 7), DomainError);
}

TEST_CASE("generated ideal of the empty set is the zero ideal") {
  FiniteJoinSemilattice chain = chain_semilattice(4);
  CHECK(generated_ideal(chain, {}).members == std::vector<int>{0});
}

TEST_CASE("intersection largest in a lattice is the meet") {
  FiniteLattice b = boolean_lattice(2);
  FiniteJoinSemilattice s = as_join_semilattice(b);
  for (int a0 = 0; a0 < s.size(); ++a0)
    for (int a1 = 0; a1 < s.size(); ++a1) {
      IntersectionLargest result = intersection_has_largest(s, a0, a1);
      REQUIRE(result.largest.has_value());
      CHECK(*result.largest == b.meet(a0, a1));
    }
}

TEST_CASE("symbolic intersection over D") {
  // (a0] ∩ (a1] is the natural chain: no largest element.
  DIntersectionLargest no_max =
      d_intersection_has_largest(DValue::a0(), DValue::a1());
  CHECK(!no_max.largest.has_value());
  REQUIRE(no_max.certificate.size() >= 2);
  for (std::size_t i = 0; i + 1 < no_max.certificate.size(); ++i) {
    CHECK(d_leq(no_max.certificate[i], no_max.certificate[i + 1]));
    CHECK(no_max.certificate[i] != no_max.certificate[i + 1]);
    CHECK(d_leq(no_max.certificate[i], DValue::a0()));
    CHECK(d_leq(no_max.certificate[i], DValue::a1()));
  }
  // Every other pair has a largest element.
  CHECK(d_intersection_has_largest(DValue::nat(3), DValue::nat(7)).largest ==
        DValue::nat(3));
  CHECK(d_intersection_has_largest(DValue::a0(), DValue::top()).largest ==
        DValue::a0());
  CHECK(d_intersection_has_largest(DValue::nat(5), DValue::a1()).largest ==
        DValue::nat(5));
  CHECK(d_intersection_has_largest(DValue::top(), DValue::top()).largest ==
        DValue::top());
}

TEST_CASE("distributive semilattices pass, the diamond reduct fails") {
  CHECK(is_distributive_semilattice(chain_semilattice(2)).distributive);
  CHECK(is_distributive_semilattice(chain_semilattice(5)).distributive);
  CHECK(is_distributive_semilattice(powerset_semilattice(3)).distributive);

  FiniteJoinSemilattice m3 = as_join_semilattice(diamond_m3());
  DistributivityResult result = is_distributive_semilattice(m3);
  CHECK(!result.distributive);
  REQUIRE(result.violation.has_value());
  // The returned triple really violates refinement.
  auto [t, a, b] = *result.violation;
  CHECK(m3.leq(t, m3.join(a, b)));
  bool refinable = false;
  for (int ap = 0; ap < m3.size() && !refinable; ++ap)
    for (int bp = 0; bp < m3.size(); ++bp)
      if (m3.leq(ap, a) && m3.leq(bp, b) && m3.join(ap, bp) == t)
        refinable = true;
  CHECK(!refinable);
}

TEST_CASE("distributivity agrees with the brute-force oracle on small cases") {
  std::vector<FiniteJoinSemilattice> corpus;
  corpus.push_back(chain_semilattice(1));
  corpus.push_back(chain_semilattice(3));
  corpus.push_back(powerset_semilattice(2));
  corpus.push_back(powerset_semilattice(3));
  corpus.push_back(as_join_semilattice(diamond_m3()));
  corpus.push_back(as_join_semilattice(pentagon_n5()));
  for (const auto& s : corpus)
    CHECK(is_distributive_semilattice(s).distributive == oracle_distributive(s));
}

TEST_CASE("join-hom check catches non-homomorphisms") {
  FiniteJoinSemilattice square = powerset_semilattice(2);
  FiniteJoinSemilattice chain = chain_semilattice(2);
  // Collapse map x, y, 1 -> 1 is a join-hom.
  JoinHom collapse{square, chain, {0, 1, 1, 1}};
  CHECK(!check_join_hom(collapse));
  // Sending only one atom up is not.
  JoinHom broken{square, chain, {0, 1, 0, 0}};
  CHECK(check_join_hom(broken).has_value());
  // Hom into D.
  JoinHomToD to_d{square,
                  {d_zero(), DValue::a0(), DValue::a1(), DValue::top()}};
  CHECK(!check_join_hom(to_d));
  JoinHomToD broken_d{square,
                      {d_zero(), DValue::a0(), DValue::a1(), DValue::a0()}};
  CHECK(check_join_hom(broken_d).has_value());
}

TEST_CASE("join preservation implies monotonicity, checked independently") {
  FiniteJoinSemilattice square = powerset_semilattice(2);
  FiniteJoinSemilattice chain = chain_semilattice(3);
  std::vector<int> maps_found = {0};
  // Sweep all maps square -> chain; every hom must be monotone.
  std::vector<int> map(square.size(), 0);
  int homs = 0;
  while (true) {
    JoinHom h{square, chain, map};
    if (!check_join_hom(h)) {
      ++homs;
      CHECK(is_monotone(square, chain, map));
    }
    int i = square.size() - 1;
    while (i >= 0 && map[i] == chain.size() - 1) map[i--] = 0;
    if (i < 0) break;
    ++map[i];
  }
  CHECK(homs > 0);
}

TEST_CASE("pointwise join") {
  FiniteJoinSemilattice square = powerset_semilattice(2);
  FiniteJoinSemilattice chain = chain_semilattice(3);
  std::vector<int> mu = {0, 1, 2, 2};
  std::vector<int> zero_map(4, 0);
  CHECK(pointwise_join(square, chain, mu, zero_map) == mu);
  CHECK(pointwise_join(square, chain, zero_map, zero_map) == zero_map);
  std::vector<int> too_short = {0, 1};
  CHECK_THROWS_AS(pointwise_join(square, chain, mu, too_short), DomainError);

  // Into D: result re-verified order-preserving.
  std::vector<DValue> f = {d_zero(), DValue::nat(2), DValue::nat(1),
                           DValue::nat(2)};
  std::vector<DValue> g = {d_zero(), DValue::a0(), d_zero(), DValue::a0()};
  std::vector<DValue> joined = pointwise_join_to_d(f, g);
  CHECK(joined[1] == DValue::a0());
  CHECK(is_monotone_to_d(square, joined));
}

TEST_CASE("weak distributivity: identity hom holds everywhere") {
  for (const auto& s :
       {chain_semilattice(3), powerset_semilattice(2),
        as_join_semilattice(diamond_m3())}) {
    std::vector<int> id(s.size());
    for (int i = 0; i < s.size(); ++i) id[i] = i;
    JoinHom identity{s, s, id};
    for (int a = 0; a < s.size(); ++a)
      CHECK(is_weakly_distributive_at(identity, a).status ==
            WeakDistStatus::holds);
  }
}

TEST_CASE("weak distributivity: constant-zero map on the 2-chain") {
  FiniteJoinSemilattice chain = chain_semilattice(2);
  JoinHom zero_map{chain, chain, {0, 0}};
  CHECK(is_weakly_distributive_at(zero_map, 1).status == WeakDistStatus::holds);
}

TEST_CASE("weak distributivity: collapse from the square onto the 2-chain") {
  FiniteJoinSemilattice square = powerset_semilattice(2);
  FiniteJoinSemilattice chain = chain_semilattice(2);
  JoinHom collapse{square, chain, {0, 1, 1, 1}};
  CHECK(is_weakly_distributive_at(collapse, 3).status == WeakDistStatus::holds);
}

TEST_CASE("weak distributivity into D needs candidates for non-natural images") {
  FiniteJoinSemilattice square = powerset_semilattice(2);
  JoinHomToD mu{square, {d_zero(), DValue::a0(), DValue::a1(), DValue::top()}};
  // Image inf: without candidate splits the answer is undecidable.
  CHECK(is_weakly_distributive_at(mu, 3).status == WeakDistStatus::undecidable);
  // With the candidate split (a0, a1) the lift exists: 1 = x v y.
  std::vector<std::pair<DValue, DValue>> splits = {
      {DValue::a0(), DValue::a1()}};
  CHECK(is_weakly_distributive_at(mu, 3, splits).status ==
        WeakDistStatus::holds);
  // Natural images are decided exhaustively without candidates.
  JoinHomToD nat_map{square,
                     {d_zero(), DValue::nat(1), DValue::nat(2), DValue::nat(2)}};
  CHECK(is_weakly_distributive_at(nat_map, 3).status == WeakDistStatus::holds);
}
