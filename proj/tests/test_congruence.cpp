#include "doctest.h"

#include <algorithm>
#include <random>

#include "conlat/congruence.hpp"
#include "conlat/oracles.hpp"

using namespace conlat;

namespace {

Congruence from_blocks(const FiniteLattice& l,
                       const std::vector<std::vector<std::string>>& blocks) {
  std::vector<int> labels(l.size(), -1);
  int b = 0;
  for (const auto& block : blocks) {
    for (const auto& id : block) labels[l.index(id)] = b;
    ++b;
  }
  return Congruence(labels);
}

}  // namespace

TEST_CASE("principal congruence on the 2-chain collapses everything") {
  FiniteLattice c2 = chain_lattice(2);
  CHECK(principal_congruence(c2, 0, 1) == Congruence::everything(2));
}

TEST_CASE("principal congruence on the 3-chain") {
  FiniteLattice c3 = chain_lattice(3);
  Congruence theta = principal_congruence(c3, 0, 1);
  CHECK(theta == from_blocks(c3, {{"0", "1"}, {"2"}}));
  CHECK(is_congruence(c3, theta));
}

TEST_CASE("the diamond is simple") {
  FiniteLattice m3 = diamond_m3();
  CHECK(principal_congruence(m3, m3.index("0"), m3.index("a")) ==
        Congruence::everything(5));
}

TEST_CASE("generated congruence") {
  FiniteLattice b2 = boolean_lattice(2);
  CHECK(generated_congruence(b2, {}) == Congruence::equality(4));
  std::vector<std::pair<int, int>> single = {{0, b2.index("a")}};
  CHECK(generated_congruence(b2, single) ==
        principal_congruence(b2, 0, b2.index("a")));
  CHECK(generated_congruence(b2, single) ==
        from_blocks(b2, {{"0", "a"}, {"b", "1"}}));
}

TEST_CASE("principal congruence rejects unknown elements") {
  CHECK_THROWS_AS(principal_congruence(chain_lattice(2), 0, 9), DomainError);
}

TEST_CASE("conc of the 2-chain is the 2-element chain") {
  ConcSemilattice cs = conc(chain_lattice(2));
  CHECK(cs.semilattice.size() == 2);
  CHECK(cs.congruences[cs.semilattice.zero()] == Congruence::equality(2));
}

TEST_CASE("conc of the 3-chain is the 4-element Boolean semilattice") {
  ConcSemilattice cs = conc(chain_lattice(3));
  REQUIRE(cs.semilattice.size() == 4);
  // Two atoms with pairwise join at the top: count covers of zero.
  int atoms = 0;
  for (int i = 0; i < 4; ++i) {
    if (i == cs.semilattice.zero()) continue;
    bool is_atom = true;
    for (int j = 0; j < 4; ++j)
      if (j != cs.semilattice.zero() && j != i && cs.semilattice.leq(j, i))
        is_atom = false;
    if (is_atom) ++atoms;
  }
  CHECK(atoms == 2);
  CHECK(is_distributive_semilattice(cs.semilattice).distributive);
}

TEST_CASE("conc of the diamond is the 2-chain") {
  CHECK(conc(diamond_m3()).semilattice.size() == 2);
}

TEST_CASE("conc respects its size bound") {
  CHECK_THROWS_AS(conc(boolean_lattice(2), 3), BudgetError);
}

TEST_CASE("conc and principal congruences agree with the partition oracle") {
  std::vector<FiniteLattice> corpus;
  for (int n = 1; n <= 5; ++n)
    for (FiniteLattice& l : enumerate_lattices(n)) corpus.push_back(std::move(l));
  corpus.push_back(diamond_m3());
  corpus.push_back(pentagon_n5());
  for (const FiniteLattice& l : corpus) {
    std::vector<Congruence> expected = oracle_all_congruences(l);
    std::vector<Congruence> got = conc(l).congruences;
    std::sort(got.begin(), got.end());
    CHECK(got == expected);
    for (int a = 0; a < l.size(); ++a)
      for (int b = a + 1; b < l.size(); ++b)
        CHECK(principal_congruence(l, a, b) ==
              oracle_principal_congruence(l, a, b));
  }
}

TEST_CASE("interval monotonicity of principal congruences") {
  std::mt19937 rng(11);
  for (const FiniteLattice& l : {boolean_lattice(3), pentagon_n5(), chain_lattice(5)}) {
    std::uniform_int_distribution<int> pick(0, l.size() - 1);
    for (int trial = 0; trial < 200; ++trial) {
      int a = pick(rng), b = pick(rng), ap = pick(rng), bp = pick(rng);
      // Need a <= a' <= b' <= b.
      if (!(l.leq(a, ap) && l.leq(ap, bp) && l.leq(bp, b))) continue;
      Congruence inner = principal_congruence(l, ap, bp);
      Congruence outer = principal_congruence(l, a, b);
      CHECK(inner.refines(outer));
    }
  }
}

TEST_CASE("conc functor: identity and constant homomorphisms") {
  FiniteLattice c3 = chain_lattice(3);
  ConcFunctorResult id = conc_functor(c3, c3, std::vector<int>{0, 1, 2});
  for (int i = 0; i < id.conc_source.semilattice.size(); ++i)
    CHECK(id.map[i] == i);

  ConcFunctorResult constant = conc_functor(c3, c3, std::vector<int>{1, 1, 1});
  for (int i = 0; i < constant.conc_source.semilattice.size(); ++i)
    CHECK(constant.map[i] == constant.conc_target.semilattice.zero());
}

TEST_CASE("conc functor: embedding the 2-chain low into the 3-chain") {
  FiniteLattice c2 = chain_lattice(2);
  FiniteLattice c3 = chain_lattice(3);
  ConcFunctorResult emb = conc_functor(c2, c3, std::vector<int>{0, 1});
  int atom = 1 - emb.conc_source.semilattice.zero();
  Congruence expected = principal_congruence(c3, 0, 1);
  CHECK(emb.conc_target.congruences[emb.map[atom]] == expected);
}

TEST_CASE("conc functor output is a join-hom") {
  FiniteLattice b2 = boolean_lattice(2);
  FiniteLattice c3 = chain_lattice(3);
  for (const std::vector<int>& f :
       {std::vector<int>{0, 1, 1, 1}, std::vector<int>{0, 0, 2, 2},
        std::vector<int>{1, 1, 1, 1}}) {
    REQUIRE(!check_lattice_hom(b2, c3, f));
    ConcFunctorResult r = conc_functor(b2, c3, f);
    JoinHom hom{r.conc_source.semilattice, r.conc_target.semilattice, r.map};
    CHECK(!check_join_hom(hom));
  }
  CHECK_THROWS_AS(conc_functor(b2, c3, std::vector<int>{0, 1, 1, 2}),
                  DomainError);
}

namespace {

std::vector<int> identity_map(int n) {
  std::vector<int> id(n);
  for (int i = 0; i < n; ++i) id[i] = i;
  return id;
}

}  // namespace

TEST_CASE("decompose_from_chain: degenerate chain gives two zero maps") {
  FiniteLattice b = boolean_lattice(2);
  FiniteLattice l = chain_lattice(2);
  std::vector<int> f(b.size(), 0);  // constant
  ConcSemilattice conc_l = conc(l);
  const FiniteJoinSemilattice& s = conc_l.semilattice;
  std::vector<int> chain = {0};
  ChainDecomposition dec = decompose_from_chain(
      b, l, f, conc_l, s, identity_map(s.size()), chain,
      Congruence::equality(2), Congruence::equality(2));
  for (int x = 0; x < b.size(); ++x) {
    CHECK(dec.mu0[x] == s.zero());
    CHECK(dec.mu1[x] == s.zero());
  }
  CHECK(dec.verification.all_hold());
}

TEST_CASE("decompose_from_chain: identity on the 2-chain") {
  FiniteLattice l = chain_lattice(2);
  ConcSemilattice conc_l = conc(l);
  const FiniteJoinSemilattice& s = conc_l.semilattice;
  std::vector<int> chain = {0, 1, 1};
  ChainDecomposition dec = decompose_from_chain(
      l, l, identity_map(2), conc_l, s, identity_map(s.size()), chain,
      Congruence::everything(2), Congruence::equality(2));
  // mu0 recovers alpha . Theta(0, -), mu1 vanishes.
  CHECK(dec.mu1 == std::vector<int>{s.zero(), s.zero()});
  CHECK(dec.mu0[0] == s.zero());
  CHECK(dec.mu0[1] == conc_l.index_of(Congruence::everything(2)));
  CHECK(dec.verification.all_hold());
}

TEST_CASE("decompose_from_chain: square through an atom") {
  FiniteLattice b = boolean_lattice(2);
  ConcSemilattice conc_b = conc(b);
  const FiniteJoinSemilattice& s = conc_b.semilattice;
  int a = b.index("a");
  std::vector<int> chain = {0, a, b.top()};
  Congruence psi0 = principal_congruence(b, 0, a);
  Congruence psi1 = principal_congruence(b, a, b.top());
  ChainDecomposition dec =
      decompose_from_chain(b, b, identity_map(4), conc_b, s,
                           identity_map(s.size()), chain, psi0, psi1);
  CHECK(dec.verification.all_hold());
  CHECK(s.leq(dec.mu0[b.top()], conc_b.index_of(psi0)));
  CHECK(s.leq(dec.mu1[b.top()], conc_b.index_of(psi1)));
}

TEST_CASE("decompose_from_chain reports the failing precondition index") {
  FiniteLattice l = chain_lattice(3);
  ConcSemilattice conc_l = conc(l);
  const FiniteJoinSemilattice& s = conc_l.semilattice;
  // Chain not increasing at index 1.
  std::vector<int> bad_chain = {0, 2, 1, 1, 2};
  bool threw_with_index = false;
  try {
    decompose_from_chain(l, l, identity_map(3), conc_l, s,
                         identity_map(s.size()), bad_chain,
                         Congruence::everything(3), Congruence::everything(3));
  } catch (const DomainError& e) {
    threw_with_index = std::string(e.what()).find("index 1") != std::string::npos;
  }
  CHECK(threw_with_index);
  // Wrong endpoint.
  std::vector<int> wrong_start = {1, 2, 2};
  CHECK_THROWS_AS(
      decompose_from_chain(l, l, identity_map(3), conc_l, s,
                           identity_map(s.size()), wrong_start,
                           Congruence::everything(3), Congruence::everything(3)),
      DomainError);
}

TEST_CASE("brute-force lift: identity on the 2-chain") {
  FiniteLattice k = chain_lattice(2);
  ConcSemilattice conc_k = conc(k);
  const FiniteJoinSemilattice& s = conc_k.semilattice;
  LiftOutcome outcome =
      brute_force_lift(k, s, identity_map(s.size()), 3);
  REQUIRE(outcome.witness.has_value());
  CHECK(outcome.witness->lattice.size() == 2);
  CHECK(outcome.witness->f == std::vector<int>{0, 1});
}

TEST_CASE("brute-force lift: zero map into the 1-element semilattice") {
  FiniteLattice k = chain_lattice(2);
  FiniteJoinSemilattice trivial = chain_semilattice(1);
  std::vector<int> phi = {0, 0};
  LiftOutcome outcome = brute_force_lift(k, trivial, phi, 2);
  REQUIRE(outcome.witness.has_value());
  CHECK(outcome.witness->lattice.size() == 1);
}

TEST_CASE("brute-force lift: identity over the 3-chain found at the 3-chain") {
  FiniteLattice k = chain_lattice(3);
  ConcSemilattice conc_k = conc(k);
  const FiniteJoinSemilattice& s = conc_k.semilattice;
  LiftOutcome outcome = brute_force_lift(k, s, identity_map(s.size()), 4);
  REQUIRE(outcome.witness.has_value());
  CHECK(outcome.witness->lattice.size() == 3);
  // Size-ordered enumeration: the witness homomorphism is the identity.
  CHECK(outcome.witness->f == std::vector<int>{0, 1, 2});
  // alpha . Conc f = phi re-checked.
  const LiftWitness& w = *outcome.witness;
  for (int i = 0; i < s.size(); ++i) {
    std::vector<std::pair<int, int>> pairs;
    for (int x = 0; x < k.size(); ++x)
      for (int y = x + 1; y < k.size(); ++y)
        if (conc_k.congruences[i].same(x, y)) pairs.emplace_back(w.f[x], w.f[y]);
    int image = w.conc_l.index_of(generated_congruence(w.lattice, pairs));
    CHECK(w.alpha[image] == i);
  }
}

TEST_CASE("brute-force lift: exhaustion is reported, not faked") {
  // No lattice of size <= 2 has a 4-element congruence semilattice.
  FiniteLattice k = chain_lattice(3);
  ConcSemilattice conc_k = conc(k);
  const FiniteJoinSemilattice& s = conc_k.semilattice;
  LiftOutcome outcome = brute_force_lift(k, s, identity_map(s.size()), 2);
  CHECK(!outcome.witness.has_value());
  CHECK(outcome.max_size_searched == 2);
  CHECK(outcome.lattices_examined > 0);
}

TEST_CASE("brute-force lift rejects oversized inputs") {
  FiniteLattice k = boolean_lattice(3);
  FiniteJoinSemilattice s = chain_semilattice(2);
  std::vector<int> phi(conc(k).semilattice.size(), 0);
  CHECK_THROWS_AS(brute_force_lift(k, s, phi, 3), BudgetError);
}
