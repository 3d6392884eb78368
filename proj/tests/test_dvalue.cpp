#include "doctest.h"

#include <vector>

#include "conlat/dvalue.hpp"

using namespace conlat;

namespace {

std::vector<DValue> sample_pool() {
  std::vector<DValue> pool;
  for (std::uint32_t n = 0; n <= 10; ++n) pool.push_back(DValue::nat(n));
  pool.push_back(DValue::a0());
  pool.push_back(DValue::a1());
  pool.push_back(DValue::top());
  return pool;
}

}  // namespace

TEST_CASE("the two incomparable elements join to the top") {
  CHECK(d_join(DValue::a0(), DValue::a1()) == DValue::top());
  CHECK(d_join(DValue::a1(), DValue::a0()) == DValue::top());
}

TEST_CASE("zero is neutral") {
  for (DValue x : sample_pool()) CHECK(d_join(d_zero(), x) == x);
}

TEST_CASE("naturals join as max") {
  CHECK(d_join(DValue::nat(3), DValue::nat(7)) == DValue::nat(7));
  CHECK(d_join(DValue::nat(7), DValue::nat(3)) == DValue::nat(7));
}

TEST_CASE("join is associative, commutative and idempotent on the pool") {
  auto pool = sample_pool();
  for (DValue x : pool) {
    CHECK(d_join(x, x) == x);
    for (DValue y : pool) {
      CHECK(d_join(x, y) == d_join(y, x));
      for (DValue z : pool)
        CHECK(d_join(d_join(x, y), z) == d_join(x, d_join(y, z)));
    }
  }
}

TEST_CASE("order structure of D") {
  CHECK(d_leq(DValue::nat(100), DValue::a0()));
  CHECK(d_leq(DValue::nat(100), DValue::a1()));
  CHECK(!d_leq(DValue::a0(), DValue::a1()));
  CHECK(!d_leq(DValue::a1(), DValue::a0()));
  CHECK(d_leq(DValue::a0(), DValue::top()));
  CHECK(d_leq(DValue::a1(), DValue::top()));
  CHECK(!d_leq(DValue::top(), DValue::a0()));
  CHECK(d_leq(DValue::nat(2), DValue::nat(5)));
  CHECK(!d_leq(DValue::nat(5), DValue::nat(2)));
}

TEST_CASE("join is the least upper bound") {
  auto pool = sample_pool();
  for (DValue x : pool)
    for (DValue y : pool) {
      DValue j = d_join(x, y);
      CHECK(d_leq(x, j));
      CHECK(d_leq(y, j));
      for (DValue u : pool)
        if (d_leq(x, u) && d_leq(y, u)) CHECK(d_leq(j, u));
    }
}
