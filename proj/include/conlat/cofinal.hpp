#ifndef CONLAT_COFINAL_HPP
#define CONLAT_COFINAL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conlat/dvalue.hpp"
#include "conlat/errors.hpp"
#include "conlat/semilattice.hpp"

namespace conlat {

// Element operations the selection machinery needs from its target
// semilattice. Two contexts are provided: the symbolic semilattice D and a
// finite join-semilattice.
struct DContext {
  using Elem = DValue;
  DValue zero() const { return d_zero(); }
  DValue join(DValue a, DValue b) const { return d_join(a, b); }
  bool leq(DValue a, DValue b) const { return d_leq(a, b); }
  std::string str(DValue a) const { return a.str(); }
};

struct FiniteContext {
  const FiniteJoinSemilattice* s = nullptr;
  using Elem = int;
  int zero() const { return s->zero(); }
  int join(int a, int b) const { return s->join(a, b); }
  bool leq(int a, int b) const { return s->leq(a, b); }
  std::string str(int a) const { return s->id(a); }
};

// A sequence drawn from the ideal (a0] ∩ (a1] of the target, together with
// the two designated elements.
template <class Ctx>
struct CofinalInput {
  typename Ctx::Elem a0;
  typename Ctx::Elem a1;
  std::vector<typename Ctx::Elem> sequence;
};

// Result of the greedy minimal-index selection: f lists the chosen sequence
// indices in order, picked[k] is the element at f[k], and prefix_join[k] is
// the join of the first k picked elements (so the ideal of the first k
// picks is everything below prefix_join[k]; prefix_join[0] is the zero).
template <class Ctx>
struct GreedySelection {
  std::vector<int> f;
  std::vector<typename Ctx::Elem> picked;
  std::vector<typename Ctx::Elem> prefix_join;

  int length() const { return static_cast<int>(f.size()); }
};

// Repeatedly picks the least-index element that escapes the ideal generated
// by everything picked so far, until no index qualifies. For a finite
// generating set that ideal is principal on the running join, so membership
// is a single comparison. Throws DomainError when an element of the
// sequence is outside (a0] ∩ (a1], or when the sequence is empty.
template <class Ctx>
GreedySelection<Ctx> greedy_selection(const Ctx& ctx,
                                      const CofinalInput<Ctx>& input) {
  if (input.sequence.empty())
    throw DomainError("greedy_selection: empty sequence");
  for (std::size_t i = 0; i < input.sequence.size(); ++i)
    if (!ctx.leq(input.sequence[i], input.a0) ||
        !ctx.leq(input.sequence[i], input.a1))
      throw DomainError("greedy_selection: element at index " +
                        std::to_string(i) + " lies outside (a0] ∩ (a1]");
  GreedySelection<Ctx> sel;
  sel.prefix_join.push_back(ctx.zero());
  while (true) {
    const auto bound = sel.prefix_join.back();
    int next = -1;
    for (std::size_t i = 0; i < input.sequence.size(); ++i)
      if (!ctx.leq(input.sequence[i], bound)) {
        next = static_cast<int>(i);
        break;
      }
    if (next < 0) break;
    sel.f.push_back(next);
    sel.picked.push_back(input.sequence[next]);
    sel.prefix_join.push_back(ctx.join(bound, input.sequence[next]));
  }
  return sel;
}

// Least k with x in the ideal of the first k picked elements. Defined for
// the elements below the join of the full selection; anything else is
// reported as out of range rather than clamped.
template <class Ctx>
std::optional<int> try_norm(const Ctx& ctx, const GreedySelection<Ctx>& sel,
                            typename Ctx::Elem x) {
  for (std::size_t k = 0; k < sel.prefix_join.size(); ++k)
    if (ctx.leq(x, sel.prefix_join[k])) return static_cast<int>(k);
  return std::nullopt;
}

template <class Ctx>
int norm(const Ctx& ctx, const GreedySelection<Ctx>& sel,
         typename Ctx::Elem x) {
  if (auto k = try_norm(ctx, sel, x)) return *k;
  throw DomainError("norm: element " + ctx.str(x) +
                    " lies outside the selection's ideal chain");
}

// --- Partition instance ----------------------------------------------------

// A finite ground set partitioned into blocks, with a smallness threshold t
// standing in for finiteness. The three ideal-like families on subsets:
//   small        : |X| <= t
//   block-bounded: small, or contained in a single block
//   thin         : |X ∩ block| <= t for every block
// Within the validity window (at least two blocks, every block larger than
// t) small = block-bounded ∩ thin holds exactly. The families are downward
// closed but, unlike their infinitary counterparts, not join closed; the
// trace machinery reports where that boundary bites instead of papering
// over it.
struct PartitionInstance {
  int ground_size = 0;
  int threshold = 0;
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of;  // ground element -> block index
};

// Validates the partition and enforces the validity window; throws
// DomainError otherwise. Ground sets are capped at 16 elements so subsets
// fit in masks and powerset sweeps stay cheap.
PartitionInstance make_partition_instance(std::vector<std::vector<int>> blocks,
                                          int threshold);

using SubsetMask = std::uint64_t;

bool subset_small(const PartitionInstance& inst, SubsetMask x);
bool subset_block_bounded(const PartitionInstance& inst, SubsetMask x);
bool subset_thin(const PartitionInstance& inst, SubsetMask x);

SubsetMask block_mask(const PartitionInstance& inst, int block);
SubsetMask ground_mask(const PartitionInstance& inst);

std::string subset_str(SubsetMask x);

// The measure on subsets of the ground set: small sets get the join of
// their members' picked elements, block-bounded (but not small) sets get
// a0, thin (but not small) sets get a1, everything else a0 v a1. Requires
// one picked element per ground index (sel.picked.size() >= ground_size).
template <class Ctx>
struct PartitionMeasure {
  std::vector<typename Ctx::Elem> by_mask;  // indexed by subset mask

  typename Ctx::Elem at(SubsetMask x) const { return by_mask[x]; }
};

template <class Ctx>
PartitionMeasure<Ctx> build_partition_measure(const Ctx& ctx,
                                              const PartitionInstance& inst,
                                              const GreedySelection<Ctx>& sel,
                                              typename Ctx::Elem a0,
                                              typename Ctx::Elem a1) {
  if (sel.length() < inst.ground_size)
    throw DomainError(
        "build_partition_measure: selection shorter than the ground set");
  PartitionMeasure<Ctx> mu;
  mu.by_mask.resize(SubsetMask{1} << inst.ground_size, ctx.zero());
  for (SubsetMask x = 0; x < mu.by_mask.size(); ++x) {
    if (subset_small(inst, x)) {
      auto acc = ctx.zero();
      for (int i = 0; i < inst.ground_size; ++i)
        if (x & (SubsetMask{1} << i)) acc = ctx.join(acc, sel.picked[i]);
      mu.by_mask[x] = acc;
    } else if (subset_block_bounded(inst, x)) {
      mu.by_mask[x] = a0;
    } else if (subset_thin(inst, x)) {
      mu.by_mask[x] = a1;
    } else {
      mu.by_mask[x] = ctx.join(a0, a1);
    }
  }
  return mu;
}

// --- Refutation trace -------------------------------------------------------

// Candidate pair of maps claimed to split the measure. Values are given
// explicitly per subset; sets that the trace needs but the candidate does
// not list are derived as the join of the listed singleton values (the
// derivation is recorded in the report).
template <class Ctx>
struct SplitCandidate {
  std::map<SubsetMask, std::pair<typename Ctx::Elem, typename Ctx::Elem>> entries;
};

enum class TraceStatus { ok, failed, boundary, skipped };

struct TraceStep {
  std::string what;
  TraceStatus status = TraceStatus::skipped;
  std::string detail;
};

struct TraceReport {
  bool candidate_accepted = false;
  std::string rejection;  // violated condition when not accepted
  std::vector<TraceStep> steps;
  std::optional<int> first_failure;  // index into steps

  bool reached_contradiction = false;  // every step held (impossible finitely)
};

template <class Ctx>
TraceReport trace_split_refutation(const Ctx& ctx,
                                   const PartitionInstance& inst,
                                   const PartitionMeasure<Ctx>& mu,
                                   const GreedySelection<Ctx>& sel,
                                   typename Ctx::Elem a0,
                                   typename Ctx::Elem a1,
                                   const SplitCandidate<Ctx>& candidate);

}  // namespace conlat

#endif  // CONLAT_COFINAL_HPP
