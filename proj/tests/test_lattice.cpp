#include "doctest.h"

#include "conlat/lattice.hpp"

using namespace conlat;

TEST_CASE("lattice validation enforces absorption") {
  std::vector<std::string> ids = {"0", "1"};
  // meet and join both behaving like max: absorption fails.
  std::vector<int> max_table = {0, 1, 1, 1};
  CHECK(FiniteLattice::validate(ids, max_table, max_table).has_value());
  std::vector<int> min_table = {0, 0, 0, 1};
  CHECK(!FiniteLattice::validate(ids, min_table, max_table).has_value());
}

TEST_CASE("standard small lattices are valid and have the expected shape") {
  FiniteLattice c3 = chain_lattice(3);
  CHECK(c3.bottom() == 0);
  CHECK(c3.top() == 2);
  CHECK(c3.leq(0, 2));

  FiniteLattice b2 = boolean_lattice(2);
  CHECK(b2.size() == 4);
  CHECK(b2.meet(b2.index("a"), b2.index("b")) == b2.bottom());
  CHECK(b2.join(b2.index("a"), b2.index("b")) == b2.top());

  FiniteLattice m3 = diamond_m3();
  CHECK(m3.size() == 5);
  CHECK(m3.join(m3.index("a"), m3.index("b")) == m3.top());
  CHECK(m3.meet(m3.index("a"), m3.index("c")) == m3.bottom());

  FiniteLattice n5 = pentagon_n5();
  CHECK(n5.leq(n5.index("a"), n5.index("b")));
  CHECK(!n5.leq(n5.index("a"), n5.index("c")));
  CHECK(!n5.leq(n5.index("c"), n5.index("a")));
  CHECK(n5.join(n5.index("a"), n5.index("c")) == n5.top());
  CHECK(n5.meet(n5.index("b"), n5.index("c")) == n5.bottom());
}

TEST_CASE("lattice hom check") {
  FiniteLattice c2 = chain_lattice(2);
  FiniteLattice c3 = chain_lattice(3);
  CHECK(!check_lattice_hom(c2, c3, std::vector<int>{0, 1}));
  CHECK(!check_lattice_hom(c2, c3, std::vector<int>{1, 1}));
  FiniteLattice b2 = boolean_lattice(2);
  // Sending both atoms to the same chain point but 1 to the top breaks joins.
  CHECK(check_lattice_hom(b2, c3, std::vector<int>{0, 1, 1, 2}).has_value());
  CHECK(!check_lattice_hom(b2, c3, std::vector<int>{0, 1, 1, 1}));
}

TEST_CASE("lattice enumeration matches the known counts") {
  CHECK(enumerate_lattices(1).size() == 1);
  CHECK(enumerate_lattices(2).size() == 1);
  CHECK(enumerate_lattices(3).size() == 1);
  CHECK(enumerate_lattices(4).size() == 2);
  CHECK(enumerate_lattices(5).size() == 5);
  CHECK_THROWS_AS(enumerate_lattices(7), BudgetError);
}

TEST_CASE("join reduct keeps the join table and the bottom") {
  FiniteLattice m3 = diamond_m3();
  FiniteJoinSemilattice s = as_join_semilattice(m3);
  CHECK(s.zero() == m3.bottom());
  for (int x = 0; x < m3.size(); ++x)
    for (int y = 0; y < m3.size(); ++y) CHECK(s.join(x, y) == m3.join(x, y));
}
