#include "conlat/cofinal.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace conlat {

PartitionInstance make_partition_instance(std::vector<std::vector<int>> blocks,
                                          int threshold) {
  if (threshold < 1)
    throw DomainError("partition instance: threshold must be positive");
  if (blocks.size() < 2)
    throw DomainError(
        "partition instance: emulation validity window needs at least two "
        "blocks (with a single block the whole ground set would be "
        "block-bounded and the measure could not reach a0 v a1)");
  int max_elem = -1;
  for (const auto& block : blocks) {
    if (block.empty()) throw DomainError("partition instance: empty block");
    for (int e : block) {
      if (e < 0) throw DomainError("partition instance: negative element");
      max_elem = std::max(max_elem, e);
    }
  }
  const int ground = max_elem + 1;
  if (ground > 16)
    throw BudgetError("partition instance: ground set larger than 16");
  std::vector<int> block_of(ground, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int e : blocks[b]) {
      if (block_of[e] != -1)
        throw DomainError("partition instance: element " + std::to_string(e) +
                          " appears in two blocks");
      block_of[e] = static_cast<int>(b);
    }
  for (int e = 0; e < ground; ++e)
    if (block_of[e] == -1)
      throw DomainError("partition instance: element " + std::to_string(e) +
                        " is not covered by any block");
  for (const auto& block : blocks)
    if (static_cast<int>(block.size()) <= threshold)
      throw DomainError(
          "partition instance: emulation validity window requires every "
          "block to be larger than the threshold");
  PartitionInstance inst;
  inst.ground_size = ground;
  inst.threshold = threshold;
  inst.blocks = std::move(blocks);
  inst.block_of = std::move(block_of);
  return inst;
}

bool subset_small(const PartitionInstance& inst, SubsetMask x) {
  return std::popcount(x) <= inst.threshold;
}

SubsetMask block_mask(const PartitionInstance& inst, int block) {
  SubsetMask mask = 0;
  for (int e : inst.blocks[block]) mask |= SubsetMask{1} << e;
  return mask;
}

SubsetMask ground_mask(const PartitionInstance& inst) {
  return (SubsetMask{1} << inst.ground_size) - 1;
}

bool subset_block_bounded(const PartitionInstance& inst, SubsetMask x) {
  if (subset_small(inst, x)) return true;
  for (std::size_t b = 0; b < inst.blocks.size(); ++b)
    if ((x & ~block_mask(inst, b)) == 0) return true;
  return false;
}

bool subset_thin(const PartitionInstance& inst, SubsetMask x) {
  for (std::size_t b = 0; b < inst.blocks.size(); ++b)
    if (std::popcount(x & block_mask(inst, b)) > inst.threshold) return false;
  return true;
}

std::string subset_str(SubsetMask x) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < 64; ++i)
    if (x & (SubsetMask{1} << i)) {
      if (!first) out += ",";
      out += std::to_string(i);
      first = false;
    }
  return out + "}";
}

namespace {

template <class Ctx>
using ElemPair = std::pair<typename Ctx::Elem, typename Ctx::Elem>;

// Candidate value at a subset: an explicit entry when present, otherwise
// the join of the listed singleton values.
template <class Ctx>
ElemPair<Ctx> candidate_value(const Ctx& ctx, const SplitCandidate<Ctx>& cand,
                              SubsetMask mask, bool* derived) {
  auto it = cand.entries.find(mask);
  if (it != cand.entries.end()) {
    if (derived) *derived = false;
    return it->second;
  }
  if (derived) *derived = true;
  auto v0 = ctx.zero();
  auto v1 = ctx.zero();
  for (int i = 0; i < 64; ++i) {
    if (!(mask & (SubsetMask{1} << i))) continue;
    auto single = cand.entries.find(SubsetMask{1} << i);
    if (single == cand.entries.end())
      throw DomainError("split candidate lists neither " + subset_str(mask) +
                        " nor the singleton {" + std::to_string(i) + "}");
    v0 = ctx.join(v0, single->second.first);
    v1 = ctx.join(v1, single->second.second);
  }
  return {v0, v1};
}

std::vector<SubsetMask> transversal_masks(const PartitionInstance& inst) {
  std::uint64_t count = 1;
  for (const auto& block : inst.blocks) {
    count *= block.size();
    if (count > 4096)
      throw BudgetError("partition instance: too many transversals to sweep");
  }
  std::vector<SubsetMask> out;
  std::vector<std::size_t> pick(inst.blocks.size(), 0);
  while (true) {
    SubsetMask mask = 0;
    for (std::size_t b = 0; b < inst.blocks.size(); ++b)
      mask |= SubsetMask{1} << inst.blocks[b][pick[b]];
    out.push_back(mask);
    std::size_t b = 0;
    while (b < pick.size() && pick[b] + 1 == inst.blocks[b].size())
      pick[b++] = 0;
    if (b == pick.size()) break;
    ++pick[b];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

template <class Ctx>
TraceReport trace_split_refutation(const Ctx& ctx,
                                   const PartitionInstance& inst,
                                   const PartitionMeasure<Ctx>& mu,
                                   const GreedySelection<Ctx>& sel,
                                   typename Ctx::Elem a0,
                                   typename Ctx::Elem a1,
                                   const SplitCandidate<Ctx>& candidate) {
  TraceReport report;
  const int num_blocks = static_cast<int>(inst.blocks.size());

  // Test family: empty set, singletons, blocks, transversals, ground set.
  std::vector<SubsetMask> family;
  family.push_back(0);
  for (int i = 0; i < inst.ground_size; ++i)
    family.push_back(SubsetMask{1} << i);
  for (int b = 0; b < num_blocks; ++b) family.push_back(block_mask(inst, b));
  for (SubsetMask t : transversal_masks(inst)) family.push_back(t);
  family.push_back(ground_mask(inst));
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());

  // Conditions (i)-(iii) on the family; the first violation rejects the
  // candidate.
  for (SubsetMask x : family) {
    auto [v0, v1] = candidate_value(ctx, candidate, x, nullptr);
    if (ctx.join(v0, v1) != mu.at(x)) {
      report.rejection = "condition (i) fails at " + subset_str(x) +
                         ": candidate join " + ctx.str(ctx.join(v0, v1)) +
                         " differs from measure " + ctx.str(mu.at(x));
      return report;
    }
  }
  for (SubsetMask x : family)
    for (SubsetMask y : family) {
      if ((x & ~y) != 0) continue;  // need x ⊆ y
      auto vx = candidate_value(ctx, candidate, x, nullptr);
      auto vy = candidate_value(ctx, candidate, y, nullptr);
      if (!ctx.leq(vx.first, vy.first) || !ctx.leq(vx.second, vy.second)) {
        report.rejection = "condition (ii) fails: candidate not "
                           "order-preserving on " +
                           subset_str(x) + " ⊆ " + subset_str(y);
        return report;
      }
    }
  {
    auto vg = candidate_value(ctx, candidate, ground_mask(inst), nullptr);
    if (!ctx.leq(vg.first, a0)) {
      report.rejection = "condition (iii) fails: mu0(ground) = " +
                         ctx.str(vg.first) + " is not below a0";
      return report;
    }
    if (!ctx.leq(vg.second, a1)) {
      report.rejection = "condition (iii) fails: mu1(ground) = " +
                         ctx.str(vg.second) + " is not below a1";
      return report;
    }
  }
  report.candidate_accepted = true;

  auto add_step = [&](const std::string& what, TraceStatus status,
                      const std::string& detail) {
    report.steps.push_back({what, status, detail});
    if ((status == TraceStatus::failed || status == TraceStatus::boundary) &&
        !report.first_failure)
      report.first_failure = static_cast<int>(report.steps.size()) - 1;
  };
  bool alive = true;

  // Per block: mu1 of the block lands in (a0] ∩ (a1], has a norm, and the
  // block contains an element at or above max(block index, that norm).
  std::vector<int> chosen(num_blocks, -1);
  for (int b = 0; b < num_blocks && alive; ++b) {
    SubsetMask zb = block_mask(inst, b);
    auto v = candidate_value(ctx, candidate, zb, nullptr).second;
    std::string tag = "block " + std::to_string(b);
    if (!ctx.leq(v, a0) || !ctx.leq(v, a1)) {
      add_step(tag + ": mu1(Z) in (a0] ∩ (a1]", TraceStatus::failed,
               "mu1(Z) = " + ctx.str(v));
      alive = false;
      break;
    }
    add_step(tag + ": mu1(Z) in (a0] ∩ (a1]", TraceStatus::ok,
             "mu1(Z) = " + ctx.str(v));
    auto nrm = try_norm(ctx, sel, v);
    if (!nrm) {
      add_step(tag + ": norm of mu1(Z) defined", TraceStatus::failed,
               "value outside the selection's ideal chain");
      alive = false;
      break;
    }
    add_step(tag + ": norm of mu1(Z) defined", TraceStatus::ok,
             "norm = " + std::to_string(*nrm));
    const int need = std::max(b, *nrm);
    for (int e : inst.blocks[b])
      if (e >= need && (chosen[b] < 0 || e < chosen[b])) chosen[b] = e;
    if (chosen[b] < 0) {
      add_step(tag + ": pick element >= max(index, norm)", TraceStatus::failed,
               "block has no element at or above " + std::to_string(need) +
                   " (finite block exhausted)");
      alive = false;
      break;
    }
    add_step(tag + ": pick element >= max(index, norm)", TraceStatus::ok,
             "picked " + std::to_string(chosen[b]));
  }

  SubsetMask z = 0;
  int beta = -1;
  if (alive) {
    for (int b = 0; b < num_blocks; ++b) z |= SubsetMask{1} << chosen[b];
    bool thin_not_small = subset_thin(inst, z) && !subset_small(inst, z);
    add_step("transversal Z in thin \\ small",
             thin_not_small ? TraceStatus::ok : TraceStatus::boundary,
             "Z = " + subset_str(z) +
                 (thin_not_small ? "" : " (emulation boundary: the measure "
                                        "does not assign a1 here)"));
    alive = thin_not_small;
  }
  if (alive) {
    bool is_a1 = mu.at(z) == a1;
    add_step("measure(Z) = a1", is_a1 ? TraceStatus::ok : TraceStatus::failed,
             "measure(Z) = " + ctx.str(mu.at(z)));
    alive = is_a1;
  }
  if (alive) {
    auto v0 = candidate_value(ctx, candidate, z, nullptr).first;
    bool in_q = ctx.leq(v0, a0) && ctx.leq(v0, a1);
    add_step("mu0(Z) in (a0] ∩ (a1]", in_q ? TraceStatus::ok : TraceStatus::failed,
             "mu0(Z) = " + ctx.str(v0));
    alive = in_q;
    if (alive) {
      auto nrm = try_norm(ctx, sel, v0);
      if (!nrm) {
        add_step("norm of mu0(Z) defined", TraceStatus::failed,
                 "value outside the selection's ideal chain");
        alive = false;
      } else {
        beta = *nrm;
        add_step("norm of mu0(Z) defined", TraceStatus::ok,
                 "beta = " + std::to_string(beta));
      }
    }
  }
  if (alive && beta >= num_blocks) {
    add_step("beta indexes a block", TraceStatus::boundary,
             "beta = " + std::to_string(beta) + " but only " +
                 std::to_string(num_blocks) +
                 " blocks exist (emulation boundary)");
    alive = false;
  }

  if (alive) {
    const int xi = chosen[beta];
    const SubsetMask xi_mask = SubsetMask{1} << xi;
    auto q = sel.picked[xi];
    int norm_q = norm(ctx, sel, q);
    add_step("norm(q at picked index) = index + 1",
             norm_q == xi + 1 ? TraceStatus::ok : TraceStatus::failed,
             "norm = " + std::to_string(norm_q) + ", index + 1 = " +
                 std::to_string(xi + 1));

    bool singleton_matches = mu.at(xi_mask) == q;
    add_step("measure({xi}) equals the picked element",
             singleton_matches ? TraceStatus::ok : TraceStatus::failed,
             "measure = " + ctx.str(mu.at(xi_mask)));

    auto [s0, s1] = candidate_value(ctx, candidate, xi_mask, nullptr);
    auto n0 = try_norm(ctx, sel, s0);
    auto n1 = try_norm(ctx, sel, s1);
    if (!n0 || !n1) {
      add_step("norms of the candidate singleton values defined",
               TraceStatus::failed, "a value escapes the ideal chain");
    } else {
      add_step("norm(mu0) v norm(mu1) = norm(measure) at {xi}",
               std::max(*n0, *n1) == norm_q ? TraceStatus::ok
                                            : TraceStatus::failed,
               "norms " + std::to_string(*n0) + ", " + std::to_string(*n1) +
                   " vs " + std::to_string(norm_q));
      auto vz0 = candidate_value(ctx, candidate, z, nullptr).first;
      auto vzb1 = candidate_value(ctx, candidate, block_mask(inst, beta),
                                  nullptr).second;
      int norm_vz0 = norm(ctx, sel, vz0);       // = beta
      int norm_vzb1 = norm(ctx, sel, vzb1);
      bool mono = *n0 <= norm_vz0 && *n1 <= norm_vzb1;
      add_step("monotonicity: norms at {xi} below norms at Z and Z_beta",
               mono ? TraceStatus::ok : TraceStatus::failed,
               std::to_string(*n0) + " <= " + std::to_string(norm_vz0) +
                   ", " + std::to_string(*n1) + " <= " +
                   std::to_string(norm_vzb1));
      const int bound = std::max(beta, norm_vzb1);
      add_step("choice of xi: max(beta, norm mu1(Z_beta)) <= xi",
               bound <= xi ? TraceStatus::ok : TraceStatus::failed,
               std::to_string(bound) + " vs xi = " + std::to_string(xi));
      add_step("assembled chain: xi + 1 <= xi", TraceStatus::failed,
               std::to_string(xi + 1) + " <= " + std::to_string(xi) +
                   " is false; a finite run always breaks one of the links "
                   "above");
    }
  }

  report.reached_contradiction =
      report.candidate_accepted && !report.first_failure;
  return report;
}

template TraceReport trace_split_refutation<DContext>(
    const DContext&, const PartitionInstance&, const PartitionMeasure<DContext>&,
    const GreedySelection<DContext>&, DValue, DValue,
    const SplitCandidate<DContext>&);

template TraceReport trace_split_refutation<FiniteContext>(
    const FiniteContext&, const PartitionInstance&,
    const PartitionMeasure<FiniteContext>&, const GreedySelection<FiniteContext>&,
    int, int, const SplitCandidate<FiniteContext>&);

}  // namespace conlat
