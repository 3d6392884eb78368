#ifndef CONLAT_GROWTH_HPP
#define CONLAT_GROWTH_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "conlat/dvalue.hpp"
#include "conlat/errors.hpp"
#include "conlat/presentation.hpp"

namespace conlat {

// A family of m pairwise distinct bitstrings of a common length. Bit i of
// row x is (rows[x] >> i) & 1; bit 0 is the least index.
struct CodeSet {
  int m = 0;
  int bit_length = 0;
  std::vector<std::uint64_t> rows;
};

// All m codes of length max(1, ceil(log2 m)): row x encodes the integer x.
CodeSet all_codes(int m);

// m distinct random codes of the given length, deterministic in the seed.
CodeSet random_codes(int m, int bit_length, std::uint64_t seed);

// first_diff(x, y) = least bit index where the codes of x and y differ, and
// 0 on the diagonal. Symmetric, and strictly below the code length off the
// diagonal.
struct FirstDiffTable {
  int m = 0;
  std::vector<int> table;

  int at(int x, int y) const { return table[x * m + y]; }
};

// Throws DomainError when two codes coincide.
FirstDiffTable build_first_diff(const CodeSet& codes);

// Capacity check: if all distinct pairs in `subset` first-differ strictly
// below n, then the subset has at most 2^n members (codes restricted to
// their first n bits are pairwise distinct). The verdict reports the
// hypothesis, the bound, and -- whenever the subset exceeds the bound -- a
// pair of members whose first n bits coincide.
struct PrefixCapacityVerdict {
  bool hypothesis_holds = false;
  std::optional<std::pair<int, int>> hypothesis_violation;
  std::size_t subset_size = 0;
  std::uint64_t capacity = 0;  // 2^n
  bool within_capacity = false;
  std::optional<std::pair<int, int>> prefix_collision;
};

PrefixCapacityVerdict check_prefix_capacity(const CodeSet& codes,
                                            const FirstDiffTable& diff,
                                            std::span<const int> subset, int n);

// The presented Boolean algebra built from a code set: generator families
// u0, u1 of size m and v of size bit_length, one relation
// u0.x ^ u1.y <= v.first_diff(x,y) per ordered pair, and the three ideal
// generator sets (v family alone, and each u family together with v).
struct GrowthInstance {
  CodeSet codes;
  FirstDiffTable diff;
  Presentation presentation;
  std::vector<int> ideal_v_gens;   // {v.k}
  std::vector<int> ideal_u0_gens;  // {u0.x} ∪ {v.k}
  std::vector<int> ideal_u1_gens;  // {u1.y} ∪ {v.k}
};

GrowthInstance build_instance(const CodeSet& codes);

// v.0 v ... v v.n.
TermPtr v_prefix_term(const GrowthInstance& inst, int n);

// The measure into D: elements below some v-prefix get the least such
// level; elements in only one u-side ideal get a0 or a1; everything else
// gets inf. The two-sided membership case coincides with membership in the
// v-ideal (a consequence of the relations that build_instance asserts via
// instance_consistent below, not an assumption).
DValue measure(const GrowthInstance& inst, const TermPtr& x);

// Checks that membership in both u-side ideals coincides with membership in
// the v-ideal on the given terms; measure() relies on this identity.
bool instance_consistent(const GrowthInstance& inst,
                         std::span<const TermPtr> probes);

// Join preservation of the measure on sampled pairs, plus the fixed points
// measure(0) = 0 and measure(1) = inf.
struct MeasureHomReport {
  bool zero_ok = false;
  bool one_is_top = false;
  int pairs_checked = 0;
  std::optional<std::string> violation;

  bool ok() const { return zero_ok && one_is_top && !violation; }
};

MeasureHomReport check_measure_is_hom(
    const GrowthInstance& inst,
    std::span<const std::pair<TermPtr, TermPtr>> samples);

// --- The split experiment ------------------------------------------------

// The finite test poset the split experiment works over: 0, 1, the u
// generators, their pairwise meets, and the v-prefixes. Order and measure
// values are computed through the entailment engine once and cached.
class TestPoset {
 public:
  struct Element {
    enum class Kind : unsigned char { zero, one, u0, u1, meet, prefix };
    Kind kind;
    int a = -1;  // u index, or meet row, or prefix level
    int b = -1;  // meet column
  };

  explicit TestPoset(const GrowthInstance& inst);

  int size() const { return static_cast<int>(elements_.size()); }
  const Element& element(int i) const { return elements_[i]; }
  const TermPtr& term(int i) const { return terms_[i]; }
  bool leq(int i, int j) const { return leq_[i * size() + j] != 0; }
  DValue measure_of(int i) const { return measure_[i]; }
  std::string label(int i) const;

  int zero_index() const { return 0; }
  int one_index() const { return 1; }
  int u0_index(int x) const { return 2 + x; }
  int u1_index(int y) const { return 2 + m_ + y; }
  int meet_index(int x, int y) const { return 2 + 2 * m_ + x * m_ + y; }
  int prefix_index(int n) const { return 2 + 2 * m_ + m_ * m_ + n; }

  int code_count() const { return m_; }
  int prefix_count() const { return levels_; }

 private:
  int m_ = 0;
  int levels_ = 0;
  std::vector<Element> elements_;
  std::vector<TermPtr> terms_;
  std::vector<std::uint8_t> leq_;
  std::vector<DValue> measure_;
};

// A candidate splitting of the measure on the test poset: two value tables
// indexed like TestPoset elements.
struct MeasureSplit {
  std::vector<DValue> mu0;
  std::vector<DValue> mu1;
};

struct SplitVerdict {
  bool valid = false;
  std::string violation;  // empty when valid
};

// A split is valid when both tables are order-preserving on the test poset,
// their pointwise join equals the measure everywhere, and the values at the
// top are below a0 and a1 respectively.
SplitVerdict validate_split(const TestPoset& poset, const MeasureSplit& split);

// Level sets of a valid split, for n = 0..prefix_count():
//   x_levels[n] = { x : mu1(u0.x) <= n },
//   y_levels[n] = { y : mu0(u1.y) <= n },
//   z_levels[n] = intersection.
struct SplitLevelSets {
  std::vector<std::vector<int>> x_levels;
  std::vector<std::vector<int>> y_levels;
  std::vector<std::vector<int>> z_levels;
};

SplitLevelSets level_sets(const TestPoset& poset, const MeasureSplit& split);

// For each n, every pair inside z_levels[n] must first-differ at or below
// n, which caps |z_levels[n]| at 2^(n+1). Returns the per-level occupancy.
struct LevelCapacityRow {
  int n = 0;
  int z_size = 0;
  std::uint64_t capacity = 0;  // 2^(n+1)
  bool pairs_ok = false;
  bool within_capacity = false;
};

struct LevelCapacityReport {
  bool ok = false;
  std::vector<LevelCapacityRow> rows;
  std::optional<std::pair<int, int>> offending_pair;
};

LevelCapacityReport verify_level_capacity(const TestPoset& poset,
                                          const FirstDiffTable& diff,
                                          const MeasureSplit& split);

// Least N such that 2^(N+1) covers all m indices; every valid split must
// assign some u generator a natural at least this large.
int certified_level_bound(int m);

// Minimum over valid splits of the largest natural assigned to a u
// generator. Exact (exhaustive over the u-generator value vectors, with
// canonical completion of the remaining table entries, validated before
// acceptance) for m <= 4 and within budget; otherwise the certified lower
// bound. The witness split realizes the exact minimum.
struct MinLevelResult {
  enum class Mode { exact, bound };
  Mode mode = Mode::bound;
  int value = 0;
  std::optional<MeasureSplit> witness;
  std::string certificate;
  std::uint64_t assignments_examined = 0;
};

MinLevelResult min_forced_level(const GrowthInstance& inst,
                                std::uint64_t assignment_budget = 1u << 22);

}  // namespace conlat

#endif  // CONLAT_GROWTH_HPP
