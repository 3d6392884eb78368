#ifndef CONLAT_CONGRUENCE_HPP
#define CONLAT_CONGRUENCE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "conlat/errors.hpp"
#include "conlat/lattice.hpp"
#include "conlat/semilattice.hpp"

namespace conlat {

// Partition of a lattice's element set, normalized so block labels appear
// in first-occurrence order. Compatibility with the lattice operations is
// not part of the type; is_congruence checks it.
class Congruence {
 public:
  explicit Congruence(std::vector<int> labels);

  static Congruence equality(int n);
  static Congruence everything(int n);

  int size() const { return static_cast<int>(label_.size()); }
  int label(int x) const { return label_[x]; }
  bool same(int x, int y) const { return label_[x] == label_[y]; }
  int block_count() const { return blocks_; }
  std::vector<std::vector<int>> blocks() const;

  // True if every block of this partition is contained in a block of c.
  bool refines(const Congruence& c) const;

  friend bool operator==(const Congruence& a, const Congruence& b) {
    return a.label_ == b.label_;
  }
  friend bool operator<(const Congruence& a, const Congruence& b) {
    return a.label_ < b.label_;
  }

 private:
  std::vector<int> label_;
  int blocks_ = 0;
};

// Compatibility of a partition with meet and join.
bool is_congruence(const FiniteLattice& l, const Congruence& c);

// Least congruence collapsing a and b, by iterated closure: merge the pair,
// then keep merging images under meet and join with every element until
// stable. Iteration order is fixed (ascending indices).
Congruence principal_congruence(const FiniteLattice& l, int a, int b);

// Least congruence containing all the pairs; the empty set generates the
// equality congruence.
Congruence generated_congruence(const FiniteLattice& l,
                                std::span<const std::pair<int, int>> pairs);

// Join in the congruence lattice: least congruence containing both.
Congruence congruence_join(const FiniteLattice& l, const Congruence& c1,
                           const Congruence& c2);

// The join-semilattice of all congruences of a finite lattice, ordered by
// refinement. Element i of `semilattice` corresponds to congruences[i];
// the zero is the equality congruence.
struct ConcSemilattice {
  FiniteJoinSemilattice semilattice;
  std::vector<Congruence> congruences;

  int index_of(const Congruence& c) const;  // throws DomainError if absent
};

// All congruences of l, built by closing the principal congruences under
// join. Throws BudgetError when |l| exceeds the bound.
ConcSemilattice conc(const FiniteLattice& l, int size_bound = 10);

// The induced map on congruence semilattices: a congruence of k goes to the
// congruence of l generated by the f-images of its pairs. Throws
// DomainError if f is not a lattice homomorphism.
struct ConcFunctorResult {
  ConcSemilattice conc_source;
  ConcSemilattice conc_target;
  std::vector<int> map;  // index into conc_source -> index into conc_target
};

ConcFunctorResult conc_functor(const FiniteLattice& k, const FiniteLattice& l,
                               std::span<const int> f, int size_bound = 10);

// --- Decomposition along an alternating chain ----------------------------

// Given f: b -> l, a join-hom alpha from conc(l) into s, a chain
// f(bottom) = t0 <= t1 <= ... <= t2n = f(top) whose even steps are
// collapsed by psi0 and odd steps by psi1, produces the two maps
//   mu0(x) = Join_i alpha(Theta(t2i ^ f(x), t2i+1 ^ f(x)))
//   mu1(x) = Join_i alpha(Theta(t2i+1 ^ f(x), t2i+2 ^ f(x)))
// and re-verifies the three guarantees on the result instead of assuming
// them: the pointwise join recovers alpha . Conc f . (x -> Theta(0, x)),
// both maps are order-preserving, and mul(top) <= alpha(psil).
struct ChainDecomposition {
  std::vector<int> mu0;  // b element -> s element
  std::vector<int> mu1;

  struct Verification {
    bool join_recovers_composite = false;
    bool mu0_monotone = false;
    bool mu1_monotone = false;
    bool mu0_bounded = false;
    bool mu1_bounded = false;
    std::string detail;

    bool all_hold() const {
      return join_recovers_composite && mu0_monotone && mu1_monotone &&
             mu0_bounded && mu1_bounded;
    }
  } verification;
};

// Throws DomainError naming the failing chain index when a precondition is
// violated. `alpha` maps conc_l.semilattice into s and must be a join-hom.
ChainDecomposition decompose_from_chain(
    const FiniteLattice& b, const FiniteLattice& l, std::span<const int> f,
    const ConcSemilattice& conc_l, const FiniteJoinSemilattice& s,
    std::span<const int> alpha, std::span<const int> chain,
    const Congruence& psi0, const Congruence& psi1);

// --- Brute-force lift search ---------------------------------------------

// Searches for a finite lattice l, a lattice homomorphism f: k -> l and an
// isomorphism alpha: conc(l) -> s with alpha . Conc f = phi. Enumeration is
// size-ordered and canonical, so the first witness is deterministic.
struct LiftWitness {
  FiniteLattice lattice;
  std::vector<int> f;
  ConcSemilattice conc_l;
  std::vector<int> alpha;  // conc_l index -> s index, bijective join-iso
};

struct LiftOutcome {
  std::optional<LiftWitness> witness;
  std::uint64_t lattices_examined = 0;
  std::uint64_t homs_examined = 0;
  int max_size_searched = 0;
};

LiftOutcome brute_force_lift(const FiniteLattice& k,
                             const FiniteJoinSemilattice& s,
                             std::span<const int> phi, int max_size,
                             const Deadline& deadline = {});

}  // namespace conlat

#endif  // CONLAT_CONGRUENCE_HPP
