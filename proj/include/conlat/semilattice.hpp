#ifndef CONLAT_SEMILATTICE_HPP
#define CONLAT_SEMILATTICE_HPP

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "conlat/dvalue.hpp"
#include "conlat/errors.hpp"

namespace conlat {

// A finite join-semilattice with least element, given by an explicit join
// table. Element ids are opaque strings; all operations work on indices
// into the id list. The constructor validates commutativity, associativity,
// idempotence and neutrality of the zero, so a constructed value is always
// a genuine semilattice.
class FiniteJoinSemilattice {
 public:
  FiniteJoinSemilattice(std::vector<std::string> ids, int zero,
                        std::vector<int> join_table);

  int size() const { return static_cast<int>(ids_.size()); }
  int zero() const { return zero_; }

  int join(int x, int y) const { return join_[x * size() + y]; }
  bool leq(int x, int y) const { return join(x, y) == y; }

  const std::string& id(int x) const { return ids_[x]; }
  const std::vector<std::string>& ids() const { return ids_; }

  // Throws DomainError for an unknown id.
  int index(std::string_view id) const;
  std::optional<int> find(std::string_view id) const;

  bool operator==(const FiniteJoinSemilattice& other) const {
    return ids_ == other.ids_ && zero_ == other.zero_ && join_ == other.join_;
  }

  // Returns a diagnostic message if the table is not a join-semilattice
  // with neutral zero, std::nullopt if it is.
  static std::optional<std::string> validate(std::span<const std::string> ids,
                                             int zero,
                                             std::span<const int> join_table);

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, int> index_;
  int zero_ = 0;
  std::vector<int> join_;
};

// Convenience factory: a chain 0 < 1 < ... < n-1 with ids "0".."n-1".
FiniteJoinSemilattice chain_semilattice(int n);

// The powerset of `atoms` generators under union; ids are sorted
// juxtapositions of atom names ("0" for the empty set).
FiniteJoinSemilattice powerset_semilattice(int atoms);

// --- Ideals -----------------------------------------------------------

// An ideal of a finite join-semilattice: nonempty, downward closed, closed
// under join. Members are sorted element indices.
struct Ideal {
  std::vector<int> members;

  bool contains(int x) const;
};

// (a] = { x : x <= a }.
Ideal principal_ideal(const FiniteJoinSemilattice& s, int a);

// Least ideal containing all of `gens`; for a finite generating set this is
// the principal ideal of the join of the generators (the ideal {zero} when
// `gens` is empty).
Ideal generated_ideal(const FiniteJoinSemilattice& s, std::span<const int> gens);

// --- Largest element of (a0] ∩ (a1] ------------------------------------

struct IntersectionLargest {
  std::vector<int> intersection;  // sorted
  std::optional<int> largest;
};

// Finds the largest element of (a0] ∩ (a1] when one exists. For a valid
// finite join table the intersection is closed under join, so the largest
// element is its total join; the scan still verifies membership rather than
// assuming it.
IntersectionLargest intersection_has_largest(const FiniteJoinSemilattice& s,
                                             int a0, int a1);

struct DIntersectionLargest {
  std::optional<DValue> largest;
  // When no largest element exists, an increasing sequence from the
  // intersection witnessing that it is unbounded: Nat(0) < Nat(1) < ...
  std::vector<DValue> certificate;
};

// Symbolic variant over D. The intersection (a0] ∩ (a1] has no largest
// element exactly for the pair {a0, a1}, where it equals the natural chain.
DIntersectionLargest d_intersection_has_largest(DValue a0, DValue a1,
                                                int certificate_length = 4);

// --- Distributivity ----------------------------------------------------

struct DistributivityResult {
  bool distributive = false;
  // Violating triple (s, a, b): s <= a v b but no a' <= a, b' <= b with
  // s = a' v b'.
  std::optional<std::array<int, 3>> violation;
};

// Refinement definition: whenever s <= a v b there are a' <= a and b' <= b
// with s = a' v b'. For finite semilattices this agrees with the
// ideal-lattice formulation.
DistributivityResult is_distributive_semilattice(const FiniteJoinSemilattice& s);

// --- Homomorphisms and plain maps ---------------------------------------

// A map between finite join-semilattices, claimed to preserve zero and
// binary joins; check_join_hom verifies the claim.
struct JoinHom {
  FiniteJoinSemilattice source;
  FiniteJoinSemilattice target;
  std::vector<int> map;  // source index -> target index

  int apply(int x) const { return map[x]; }
};

// A map from a finite join-semilattice into the symbolic semilattice D.
struct JoinHomToD {
  FiniteJoinSemilattice source;
  std::vector<DValue> map;

  DValue apply(int x) const { return map[x]; }
};

// Diagnostic message on the first violated preservation law, or nullopt.
std::optional<std::string> check_join_hom(const JoinHom& h);
std::optional<std::string> check_join_hom(const JoinHomToD& h);

// Order preservation alone (weaker than the hom check).
bool is_monotone(const FiniteJoinSemilattice& source,
                 const FiniteJoinSemilattice& target,
                 std::span<const int> map);
bool is_monotone_to_d(const FiniteJoinSemilattice& source,
                      std::span<const DValue> map);

// x |-> map0(x) v map1(x). Throws DomainError when the domains disagree.
std::vector<int> pointwise_join(const FiniteJoinSemilattice& source,
                                const FiniteJoinSemilattice& target,
                                std::span<const int> map0,
                                std::span<const int> map1);
std::vector<DValue> pointwise_join_to_d(std::span<const DValue> map0,
                                        std::span<const DValue> map1);

// --- Weak distributivity -------------------------------------------------

enum class WeakDistStatus { holds, fails, undecidable };

struct WeakDistResult {
  WeakDistStatus status = WeakDistStatus::holds;
  // For a finite target: the violating pair (b0, b1) with mu(a) = b0 v b1
  // that admits no matching split of a.
  std::optional<std::pair<int, int>> witness;
  std::optional<std::pair<DValue, DValue>> witness_d;
  std::string note;
};

// mu is weakly distributive at a if every split mu(a) = b0 v b1 in the
// target lifts to a split a = a0 v a1 with mu(al) <= bl. Finite targets are
// checked exhaustively.
WeakDistResult is_weakly_distributive_at(const JoinHom& mu, int a);

// D-target variant. Splits of a natural are finitely enumerable; splits of
// a0, a1 or inf are not, so for those the caller must supply the candidate
// decompositions to check, otherwise the result is `undecidable`.
WeakDistResult is_weakly_distributive_at(
    const JoinHomToD& mu, int a,
    std::span<const std::pair<DValue, DValue>> candidate_splits = {});

}  // namespace conlat

#endif  // CONLAT_SEMILATTICE_HPP
