#ifndef CONLAT_LATTICE_HPP
#define CONLAT_LATTICE_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "conlat/errors.hpp"
#include "conlat/semilattice.hpp"

namespace conlat {

// A finite lattice given by explicit meet and join tables. The constructor
// validates both tables (commutative, associative, idempotent) together
// with the absorption laws.
class FiniteLattice {
 public:
  FiniteLattice(std::vector<std::string> ids, std::vector<int> meet_table,
                std::vector<int> join_table);

  int size() const { return static_cast<int>(ids_.size()); }
  int meet(int x, int y) const { return meet_[x * size() + y]; }
  int join(int x, int y) const { return join_[x * size() + y]; }
  bool leq(int x, int y) const { return join(x, y) == y; }

  int bottom() const { return bottom_; }
  int top() const { return top_; }

  const std::string& id(int x) const { return ids_[x]; }
  const std::vector<std::string>& ids() const { return ids_; }
  int index(std::string_view id) const;
  std::optional<int> find(std::string_view id) const;

  std::span<const int> meet_table() const { return meet_; }
  std::span<const int> join_table() const { return join_; }

  static std::optional<std::string> validate(std::span<const std::string> ids,
                                             std::span<const int> meet_table,
                                             std::span<const int> join_table);

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, int> index_;
  std::vector<int> meet_;
  std::vector<int> join_;
  int bottom_ = 0;
  int top_ = 0;
};

// Standard small lattices used throughout the tests and fixtures.
FiniteLattice chain_lattice(int n);                 // 0 < 1 < ... < n-1
FiniteLattice boolean_lattice(int atoms);           // powerset of `atoms`
FiniteLattice diamond_m3();                         // 0, a, b, c, 1
FiniteLattice pentagon_n5();                        // 0 < a < b < 1, 0 < c < 1

// Join-reduct view of a lattice (zero = lattice bottom).
FiniteJoinSemilattice as_join_semilattice(const FiniteLattice& l);

// Diagnostic if `map` fails to preserve meet or join, nullopt otherwise.
// Totality is required; preservation of bottom/top is not.
std::optional<std::string> check_lattice_hom(const FiniteLattice& k,
                                             const FiniteLattice& l,
                                             std::span<const int> map);

// All lattices with exactly n elements, one representative per isomorphism
// class, in a deterministic (canonical-form) order. Intended for the small
// sizes used by the search and oracle code; n <= 6 is enforced.
std::vector<FiniteLattice> enumerate_lattices(int n);

}  // namespace conlat

#endif  // CONLAT_LATTICE_HPP
