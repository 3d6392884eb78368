#include "conlat/oracles.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "conlat/cofinal.hpp"
#include "conlat/growth.hpp"
#include "conlat/io.hpp"

namespace conlat {

std::vector<Congruence> oracle_all_congruences(const FiniteLattice& l) {
  const int n = l.size();
  std::vector<Congruence> out;
  // Restricted growth strings enumerate every set partition exactly once.
  std::vector<int> rgs(n, 0);
  while (true) {
    Congruence cand{std::vector<int>(rgs)};
    if (is_congruence(l, cand)) out.push_back(std::move(cand));
    int i = n - 1;
    for (; i > 0; --i) {
      int max_prefix = 0;
      for (int j = 0; j < i; ++j) max_prefix = std::max(max_prefix, rgs[j]);
      if (rgs[i] <= max_prefix) break;
    }
    if (i == 0) break;
    ++rgs[i];
    for (int j = i + 1; j < n; ++j) rgs[j] = 0;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Congruence oracle_principal_congruence(const FiniteLattice& l, int a, int b) {
  std::optional<std::vector<int>> meet_labels;
  for (const Congruence& c : oracle_all_congruences(l)) {
    if (!c.same(a, b)) continue;
    if (!meet_labels) {
      meet_labels.emplace();
      for (int x = 0; x < l.size(); ++x) meet_labels->push_back(c.label(x));
      continue;
    }
    // Blockwise intersection with the accumulator.
    std::vector<int> combined(l.size());
    for (int x = 0; x < l.size(); ++x)
      combined[x] = (*meet_labels)[x] * l.size() + c.label(x);
    // Renumber into range.
    std::vector<int> remap(static_cast<std::size_t>(l.size()) * l.size(), -1);
    int next = 0;
    for (int& v : combined) {
      if (remap[v] < 0) remap[v] = next++;
      v = remap[v];
    }
    meet_labels = std::move(combined);
  }
  if (!meet_labels)
    throw DomainError("oracle_principal_congruence: no compatible partition");
  return Congruence(std::move(*meet_labels));
}

bool oracle_distributive(const FiniteJoinSemilattice& s) {
  const int n = s.size();
  for (int t = 0; t < n; ++t)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (!s.leq(t, s.join(a, b))) continue;
        bool found = false;
        for (int ap = 0; ap < n && !found; ++ap)
          for (int bp = 0; bp < n; ++bp)
            if (s.leq(ap, a) && s.leq(bp, b) && s.join(ap, bp) == t) {
              found = true;
              break;
            }
        if (!found) return false;
      }
  return true;
}

bool oracle_entails(const Presentation& p, const TermPtr& s, const TermPtr& t) {
  const int n = p.generator_count();
  if (n > 24) throw BudgetError("oracle_entails: too many generators");
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    Valuation val;
    val.bits.resize(n);
    for (int g = 0; g < n; ++g)
      val.bits[g] = static_cast<std::uint8_t>((x >> g) & 1);
    bool ok = true;
    for (const auto& [g, h, v] : p.relations())
      if (val.bits[g] && val.bits[h] && !val.bits[v]) {
        ok = false;
        break;
      }
    if (!ok) continue;
    if (eval_term(*s, val) && !eval_term(*t, val)) return false;
  }
  return true;
}

namespace {

struct SuiteBuilder {
  SuiteResult result;

  explicit SuiteBuilder(std::string name) { result.name = std::move(name); }

  void check(bool ok, const std::string& what) {
    ++result.checks;
    if (!ok && result.detail.empty()) result.detail = what;
  }

  SuiteResult finish() {
    result.passed = result.detail.empty();
    return result;
  }
};

std::vector<FiniteJoinSemilattice> builtin_semilattices() {
  std::vector<FiniteJoinSemilattice> out;
  out.push_back(chain_semilattice(1));
  out.push_back(chain_semilattice(4));
  out.push_back(powerset_semilattice(2));
  out.push_back(powerset_semilattice(3));
  out.push_back(as_join_semilattice(diamond_m3()));
  out.push_back(as_join_semilattice(pentagon_n5()));
  return out;
}

void run_ideal_checks(SuiteBuilder& suite, const FiniteJoinSemilattice& s) {
  for (int a = 0; a < s.size(); ++a) {
    Ideal ideal = principal_ideal(s, a);
    for (int x : ideal.members) {
      for (int y = 0; y < s.size(); ++y)
        if (s.leq(y, x))
          suite.check(ideal.contains(y), "principal ideal not downward closed");
      for (int y : ideal.members)
        suite.check(ideal.contains(s.join(x, y)),
                    "principal ideal not join closed");
    }
    suite.check(ideal.contains(s.zero()), "principal ideal misses zero");
  }
}

SuiteResult suite_semilattice_fixtures(const SelfcheckOptions& options) {
  SuiteBuilder suite("semilattice-fixtures");
  if (options.fixtures_dir) {
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    for (const auto& entry :
         std::filesystem::directory_iterator(*options.fixtures_dir, ec))
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    if (ec) {
      suite.check(false, "cannot read fixtures directory");
      return suite.finish();
    }
    std::sort(files.begin(), files.end());
    suite.check(!files.empty(), "no fixture files found");
    for (const auto& file : files) {
      try {
        FiniteJoinSemilattice s = semilattice_from_json(load_json_file(file));
        suite.check(true, "");
        run_ideal_checks(suite, s);
      } catch (const Error& e) {
        suite.check(false, file.filename().string() + ": " + e.what());
      }
    }
    return suite.finish();
  }
  for (const auto& s : builtin_semilattices()) {
    std::vector<int> table;
    for (int x = 0; x < s.size(); ++x)
      for (int y = 0; y < s.size(); ++y) table.push_back(s.join(x, y));
    suite.check(!FiniteJoinSemilattice::validate(s.ids(), s.zero(), table),
                "built-in fixture failed validation");
    run_ideal_checks(suite, s);
  }
  return suite.finish();
}

SuiteResult suite_dvalue_algebra() {
  SuiteBuilder suite("dvalue-algebra");
  std::vector<DValue> pool;
  for (std::uint32_t n = 0; n <= 10; ++n) pool.push_back(DValue::nat(n));
  pool.push_back(DValue::a0());
  pool.push_back(DValue::a1());
  pool.push_back(DValue::top());
  for (DValue x : pool) {
    suite.check(d_join(x, x) == x, "join not idempotent");
    suite.check(d_join(d_zero(), x) == x, "zero not neutral");
    for (DValue y : pool) {
      suite.check(d_join(x, y) == d_join(y, x), "join not commutative");
      suite.check(d_leq(x, d_join(x, y)), "join not an upper bound");
      for (DValue z : pool)
        suite.check(d_join(d_join(x, y), z) == d_join(x, d_join(y, z)),
                    "join not associative");
    }
  }
  suite.check(d_join(DValue::a0(), DValue::a1()) == DValue::top(),
              "a0 v a1 differs from inf");
  return suite.finish();
}

SuiteResult suite_distributivity_oracle() {
  SuiteBuilder suite("distributivity-oracle");
  for (const auto& s : builtin_semilattices()) {
    DistributivityResult fast = is_distributive_semilattice(s);
    suite.check(fast.distributive == oracle_distributive(s),
                "disagreement with the brute-force oracle");
    if (!fast.distributive) {
      suite.check(fast.violation.has_value(), "missing violation witness");
    }
  }
  return suite.finish();
}

std::vector<FiniteLattice> small_lattice_corpus() {
  std::vector<FiniteLattice> corpus;
  for (int n = 1; n <= 5; ++n)
    for (FiniteLattice& l : enumerate_lattices(n)) corpus.push_back(std::move(l));
  corpus.push_back(diamond_m3());
  corpus.push_back(pentagon_n5());
  return corpus;
}

SuiteResult suite_congruence_oracle() {
  SuiteBuilder suite("congruence-oracle");
  for (const FiniteLattice& l : small_lattice_corpus()) {
    std::vector<Congruence> expected = oracle_all_congruences(l);
    ConcSemilattice cs = conc(l);
    std::vector<Congruence> got = cs.congruences;
    std::sort(got.begin(), got.end());
    suite.check(got == expected, "conc misses or invents congruences");
    for (int a = 0; a < l.size(); ++a)
      for (int b = a + 1; b < l.size(); ++b)
        suite.check(principal_congruence(l, a, b) ==
                        oracle_principal_congruence(l, a, b),
                    "principal congruence differs from the oracle");
  }
  return suite.finish();
}

SuiteResult suite_conc_join_table() {
  SuiteBuilder suite("conc-join-table");
  for (const FiniteLattice& l : small_lattice_corpus()) {
    ConcSemilattice cs = conc(l);
    const int n = cs.semilattice.size();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::vector<std::pair<int, int>> pairs;
        for (int x = 0; x < l.size(); ++x)
          for (int y = x + 1; y < l.size(); ++y)
            if (cs.congruences[i].same(x, y) || cs.congruences[j].same(x, y))
              pairs.emplace_back(x, y);
        suite.check(cs.semilattice.join(i, j) ==
                        cs.index_of(generated_congruence(l, pairs)),
                    "join table entry differs from the generated congruence");
      }
  }
  return suite.finish();
}

TermPtr random_term(std::mt19937& rng, const Presentation& p, int depth) {
  std::uniform_int_distribution<int> kind(0, depth > 0 ? 5 : 2);
  switch (kind(rng)) {
    case 0:
      return t_zero();
    case 1:
      return t_one();
    case 2: {
      std::uniform_int_distribution<int> gen(0, p.generator_count() - 1);
      return t_gen(gen(rng));
    }
    case 3:
      return t_not(random_term(rng, p, depth - 1));
    case 4:
      return t_and(random_term(rng, p, depth - 1),
                   random_term(rng, p, depth - 1));
    default:
      return t_or(random_term(rng, p, depth - 1),
                  random_term(rng, p, depth - 1));
  }
}

Presentation random_presentation(std::mt19937& rng, int max_generators) {
  std::uniform_int_distribution<int> family(1, std::max(1, max_generators / 3));
  const int u0 = family(rng), u1 = family(rng);
  std::uniform_int_distribution<int> vdist(
      1, std::max(1, max_generators - u0 - u1));
  const int v = vdist(rng);
  std::set<std::array<int, 3>> rels;
  std::uniform_int_distribution<int> count(0, u0 * u1);
  std::uniform_int_distribution<int> xd(0, u0 - 1), yd(0, u1 - 1), kd(0, v - 1);
  const int wanted = count(rng);
  for (int i = 0; i < wanted; ++i)
    rels.insert({xd(rng), u0 + yd(rng), u0 + u1 + kd(rng)});
  return Presentation(u0, u1, v,
                      std::vector<std::array<int, 3>>(rels.begin(), rels.end()));
}

SuiteResult suite_entailment_oracle() {
  SuiteBuilder suite("entailment-oracle");
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    Presentation p = random_presentation(rng, 10);
    for (int q = 0; q < 8; ++q) {
      TermPtr s = random_term(rng, p, 3);
      TermPtr t = random_term(rng, p, 3);
      EntailResult fast = entails(p, s, t);
      suite.check(fast.holds == oracle_entails(p, s, t),
                  "entails disagrees with the valuation sweep");
      if (!fast.holds) {
        suite.check(fast.certificate.has_value() &&
                        satisfies_relations(p, *fast.certificate) &&
                        eval_term(*s, *fast.certificate) &&
                        !eval_term(*t, *fast.certificate),
                    "separating valuation fails its own re-check");
      }
    }
  }
  return suite.finish();
}

SuiteResult suite_prefix_iff() {
  SuiteBuilder suite("prefix-iff");
  for (int m : {2, 4}) {
    GrowthInstance inst = build_instance(all_codes(m));
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y)
        for (int n = 0; n < inst.codes.bit_length; ++n) {
          TermPtr meet = t_and(t_gen(inst.presentation.u0(x)),
                               t_gen(inst.presentation.u1(y)));
          bool below = entails(inst.presentation, meet,
                               v_prefix_term(inst, n)).holds;
          suite.check(below == (inst.diff.at(x, y) <= n),
                      "meet-below-prefix differs from the first-diff level");
        }
  }
  return suite.finish();
}

SuiteResult suite_norm_laws() {
  SuiteBuilder suite("norm-laws");
  DContext ctx;
  std::mt19937 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<int> len(1, 15), val(0, 30);
    CofinalInput<DContext> input{DValue::a0(), DValue::a1(), {}};
    const int length = len(rng);
    for (int i = 0; i < length; ++i)
      input.sequence.push_back(DValue::nat(val(rng)));
    GreedySelection<DContext> sel = greedy_selection(ctx, input);
    for (int k = 0; k + 1 < static_cast<int>(sel.f.size()); ++k)
      suite.check(sel.f[k] < sel.f[k + 1], "selection indices not increasing");
    for (int k = 0; k < sel.length(); ++k) {
      suite.check(!ctx.leq(sel.picked[k], sel.prefix_join[k]),
                  "picked element inside its own prefix ideal");
      suite.check(norm(ctx, sel, sel.picked[k]) == k + 1,
                  "norm of picked element differs from index + 1");
    }
    std::uint32_t max_nat = 0;
    DValue total = sel.prefix_join.back();
    if (total.is_nat()) max_nat = total.nat_value();
    for (std::uint32_t a = 0; a <= max_nat; ++a)
      for (std::uint32_t b = 0; b <= max_nat; ++b) {
        int na = norm(ctx, sel, DValue::nat(a));
        int nb = norm(ctx, sel, DValue::nat(b));
        suite.check(norm(ctx, sel, d_join(DValue::nat(a), DValue::nat(b))) ==
                        std::max(na, nb),
                    "norm of join differs from max of norms");
      }
  }
  return suite.finish();
}

SuiteResult suite_partition_ideals() {
  SuiteBuilder suite("partition-ideals");
  struct Config {
    std::vector<std::vector<int>> blocks;
    int t;
  };
  std::vector<Config> configs = {
      {{{0, 1}, {2, 3}}, 1},
      {{{0, 1, 2}, {3, 4, 5}}, 1},
      {{{0, 1, 2}, {3, 4, 5}}, 2},
      {{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {9, 10, 11}}, 1},
      {{{0, 1}, {2, 3}, {4, 5}}, 1},
  };
  for (const auto& config : configs) {
    PartitionInstance inst = make_partition_instance(config.blocks, config.t);
    for (SubsetMask x = 0; x <= ground_mask(inst); ++x)
      suite.check(subset_small(inst, x) ==
                      (subset_block_bounded(inst, x) && subset_thin(inst, x)),
                  "small differs from block-bounded ∩ thin at " + subset_str(x));
  }
  return suite.finish();
}

SuiteResult suite_growth_bound() {
  SuiteBuilder suite("growth-bound");
  for (int m : {1, 2, 4}) {
    GrowthInstance inst = build_instance(all_codes(m));
    MinLevelResult result = min_forced_level(inst);
    suite.check(result.mode == MinLevelResult::Mode::exact,
                "exact search did not complete");
    suite.check(result.value == certified_level_bound(m),
                "exact minimum differs from the certified bound");
    if (result.witness) {
      TestPoset poset(inst);
      suite.check(validate_split(poset, *result.witness).valid,
                  "witness split fails validation");
    }
  }
  return suite.finish();
}

}  // namespace

std::vector<SuiteResult> run_selfcheck(const SelfcheckOptions& options) {
  std::vector<SuiteResult> results;
  results.push_back(suite_semilattice_fixtures(options));
  results.push_back(suite_dvalue_algebra());
  results.push_back(suite_distributivity_oracle());
  results.push_back(suite_congruence_oracle());
  results.push_back(suite_conc_join_table());
  results.push_back(suite_entailment_oracle());
  results.push_back(suite_prefix_iff());
  results.push_back(suite_norm_laws());
  results.push_back(suite_partition_ideals());
  results.push_back(suite_growth_bound());
  return results;
}

}  // namespace conlat
