// Command-line front end for the congruence workbench: finite lattices and
// their congruence semilattices, presented Boolean algebras, the prefix-code
// growth experiment, and the cofinal-selection diagnostics.

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "conlat/cofinal.hpp"
#include "conlat/congruence.hpp"
#include "conlat/growth.hpp"
#include "conlat/io.hpp"
#include "conlat/oracles.hpp"

namespace {

using namespace conlat;
using nlohmann::json;

struct GlobalConfig {
  std::string config_path;
  int generator_cap = 40;
  int conc_bound = 10;
  long long budget_ms = 0;  // 0 = unlimited

  void load() {
    if (const char* env = std::getenv("CONLAT_BUDGET_MS"))
      budget_ms = std::atoll(env);
    if (config_path.empty()) return;
    json j = load_json_file(config_path);
    if (!j.is_object()) throw SchemaError("config: expected a JSON object");
    if (j.contains("generator_cap")) generator_cap = j["generator_cap"].get<int>();
    if (j.contains("conc_bound")) conc_bound = j["conc_bound"].get<int>();
    if (j.contains("budget_ms") && budget_ms == 0)
      budget_ms = j["budget_ms"].get<long long>();
  }

  Deadline deadline() const {
    if (budget_ms <= 0) return {};
    return Deadline::after(std::chrono::milliseconds(budget_ms));
  }
};

std::string blocks_str(const Congruence& c, const FiniteLattice& l) {
  std::string out;
  for (const auto& block : c.blocks()) {
    out += "{";
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i) out += ",";
      out += l.id(block[i]);
    }
    out += "}";
  }
  return out;
}

void print_conc(const FiniteLattice& l, const ConcSemilattice& cs) {
  std::cout << "Conc: " << cs.semilattice.size() << " congruences\n";
  for (int i = 0; i < cs.semilattice.size(); ++i)
    std::cout << "  " << cs.semilattice.id(i) << " = "
              << blocks_str(cs.congruences[i], l)
              << (i == cs.semilattice.zero() ? "  (zero)" : "") << "\n";
  std::cout << "join table:\n";
  for (int i = 0; i < cs.semilattice.size(); ++i) {
    std::cout << "  " << cs.semilattice.id(i) << ":";
    for (int j = 0; j < cs.semilattice.size(); ++j)
      std::cout << " " << cs.semilattice.id(cs.semilattice.join(i, j));
    std::cout << "\n";
  }
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int value = std::stoi(item, &used);
      if (used != item.size() || value < 0) throw std::invalid_argument(item);
      out.push_back(value);
    } catch (const std::exception&) {
      throw SchemaError(std::string(what) + ": bad integer '" + item + "'");
    }
  }
  if (out.empty()) throw SchemaError(std::string(what) + ": empty list");
  return out;
}

std::string certificate_str(const Presentation& p, const Valuation& val) {
  std::string ones;
  for (int g = 0; g < p.generator_count(); ++g)
    if (val.bits[g]) {
      if (!ones.empty()) ones += ", ";
      ones += p.generator_name(g);
    }
  return ones.empty() ? "(all generators 0)" : ones + " = 1, all others 0";
}

// --- experiment rows -------------------------------------------------------

struct ExperimentRow {
  int m = 0;
  int bits = 0;
  std::string mode;
  int n_min = 0;
  long long runtime_ms = 0;
  std::string witness_path;
};

std::string rows_to_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream out;
  out << "# conlat-csv v1\n";
  out << "m,L,exact_or_bound,N_min,runtime_ms\n";
  for (const auto& r : rows)
    out << r.m << "," << r.bits << "," << r.mode << "," << r.n_min << ","
        << r.runtime_ms << "\n";
  return out.str();
}

void print_rows_human(const std::vector<ExperimentRow>& rows) {
  std::cout << std::left << std::setw(6) << "m" << std::setw(5) << "L"
            << std::setw(8) << "mode" << std::setw(7) << "N_min"
            << std::setw(12) << "runtime_ms" << "witness\n";
  for (const auto& r : rows)
    std::cout << std::left << std::setw(6) << r.m << std::setw(5) << r.bits
              << std::setw(8) << r.mode << std::setw(7) << r.n_min
              << std::setw(12) << r.runtime_ms
              << (r.witness_path.empty() ? "-" : r.witness_path) << "\n";
}

// --- subcommand actions ------------------------------------------------------

int run_conc(const GlobalConfig& cfg, const std::string& lattice_path,
             const std::string& format) {
  FiniteLattice l = lattice_from_json(load_json_file(lattice_path));
  ConcSemilattice cs = conc(l, cfg.conc_bound);
  if (format == "json") {
    json out = semilattice_to_json(cs.semilattice);
    json blocks = json::array();
    for (const auto& c : cs.congruences)
      blocks.push_back(congruence_to_json(c, l)["blocks"]);
    out["congruences"] = blocks;
    std::cout << out.dump(2) << "\n";
  } else {
    print_conc(l, cs);
  }
  return 0;
}

int run_theta(const std::string& lattice_path, const std::string& a,
              const std::string& b, const std::string& format) {
  FiniteLattice l = lattice_from_json(load_json_file(lattice_path));
  Congruence theta = principal_congruence(l, l.index(a), l.index(b));
  if (format == "json")
    std::cout << congruence_to_json(theta, l).dump(2) << "\n";
  else
    std::cout << "theta(" << a << ", " << b << ") = " << blocks_str(theta, l)
              << "\n";
  return 0;
}

int run_lift(const GlobalConfig& cfg, const std::string& k_path,
             const std::string& s_path, const std::string& phi_path,
             int max_size) {
  FiniteLattice k = lattice_from_json(load_json_file(k_path));
  FiniteJoinSemilattice s = semilattice_from_json(load_json_file(s_path));
  ConcSemilattice conc_k = conc(k, cfg.conc_bound);
  json phi_json = load_json_file(phi_path);
  if (!phi_json.is_object() || !phi_json.contains("map") ||
      !phi_json["map"].is_object())
    throw SchemaError("phi: expected { \"map\": { conc-id: target-id } }");
  std::vector<int> phi(conc_k.semilattice.size(), -1);
  for (const auto& [key, value] : phi_json["map"].items()) {
    int src = conc_k.semilattice.index(key);
    if (!value.is_string()) throw SchemaError("phi: values must be target ids");
    phi[src] = s.index(value.get<std::string>());
  }
  for (int i = 0; i < conc_k.semilattice.size(); ++i)
    if (phi[i] < 0)
      throw SchemaError("phi: missing entry for " + conc_k.semilattice.id(i));

  LiftOutcome outcome = brute_force_lift(k, s, phi, max_size, cfg.deadline());
  if (outcome.witness) {
    const LiftWitness& w = *outcome.witness;
    std::cout << "lift found: lattice with " << w.lattice.size()
              << " elements\n";
    std::cout << lattice_to_json(w.lattice).dump(2) << "\n";
    std::cout << "f:";
    for (int x = 0; x < k.size(); ++x)
      std::cout << " " << k.id(x) << "->" << w.lattice.id(w.f[x]);
    std::cout << "\nalpha:";
    for (int i = 0; i < w.conc_l.semilattice.size(); ++i)
      std::cout << " " << blocks_str(w.conc_l.congruences[i], w.lattice)
                << "->" << s.id(w.alpha[i]);
    std::cout << "\n";
  } else {
    std::cout << "no lift up to size " << outcome.max_size_searched
              << " (examined " << outcome.lattices_examined << " lattices, "
              << outcome.homs_examined << " homomorphisms)\n";
  }
  return 0;
}

int run_check_distributive(const std::string& path) {
  FiniteJoinSemilattice s = semilattice_from_json(load_json_file(path));
  DistributivityResult result = is_distributive_semilattice(s);
  if (result.distributive) {
    std::cout << "distributive\n";
  } else {
    const auto& [t, a, b] = *result.violation;
    std::cout << "not distributive: " << s.id(t) << " <= " << s.id(a) << " v "
              << s.id(b) << " has no matching split\n";
  }
  return 0;
}

int run_weakdist(const std::string& hom_path, const std::string& at,
                 const std::string& splits_path) {
  auto base = std::filesystem::path(hom_path).parent_path();
  LoadedHom hom = hom_from_json(load_json_file(hom_path), base);
  WeakDistResult result;
  if (std::holds_alternative<JoinHom>(hom)) {
    const auto& h = std::get<JoinHom>(hom);
    result = is_weakly_distributive_at(h, h.source.index(at));
    if (result.status == WeakDistStatus::fails)
      std::cout << "not weakly distributive: split " << h.target.id(result.witness->first)
                << " v " << h.target.id(result.witness->second)
                << " does not lift\n";
  } else {
    const auto& h = std::get<JoinHomToD>(hom);
    std::vector<std::pair<DValue, DValue>> splits;
    if (!splits_path.empty()) {
      json j = load_json_file(splits_path);
      if (!j.is_array()) throw SchemaError("splits: expected an array of pairs");
      for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2)
          throw SchemaError("splits: each entry must be [dvalue, dvalue]");
        splits.emplace_back(dvalue_from_json(pair[0]), dvalue_from_json(pair[1]));
      }
    }
    result = is_weakly_distributive_at(h, h.source.index(at), splits);
    if (result.status == WeakDistStatus::fails)
      std::cout << "not weakly distributive: split "
                << result.witness_d->first.str() << " v "
                << result.witness_d->second.str() << " does not lift\n";
  }
  if (result.status == WeakDistStatus::holds)
    std::cout << "weakly distributive at " << at << "\n";
  if (result.status == WeakDistStatus::undecidable)
    std::cout << "undecidable at this scale: " << result.note << "\n";
  return 0;
}

int run_entail(const GlobalConfig& cfg, const std::string& pres_path,
               const std::string& s_text, const std::string& t_text) {
  Presentation p = presentation_from_json(load_json_file(pres_path));
  TermPtr s = parse_term(s_text, p);
  TermPtr t = parse_term(t_text, p);
  EntailResult result = entails(p, s, t, cfg.generator_cap);
  if (result.holds) {
    std::cout << "entails\n";
  } else {
    std::cout << "does not entail; separating valuation: "
              << certificate_str(p, *result.certificate) << "\n";
  }
  return 0;
}

int run_thmb_build(int m, int bits, std::uint64_t seed,
                   const std::string& out_path) {
  CodeSet codes;
  if (bits == 0) {
    codes = all_codes(m);
  } else {
    codes = all_codes(m);
    if (bits < codes.bit_length)
      throw SchemaError("--bits below the minimum for this m");
    if (bits > codes.bit_length) codes = random_codes(m, bits, seed);
  }
  GrowthInstance inst = build_instance(codes);
  atomic_write_file(out_path, instance_to_json(inst).dump(2) + "\n");
  std::cout << "wrote instance with m=" << inst.codes.m
            << ", bits=" << inst.codes.bit_length << " to " << out_path << "\n";
  return 0;
}

int run_thmb_mu(const std::string& inst_path, const std::string& term_text) {
  GrowthInstance inst = instance_from_json(load_json_file(inst_path));
  TermPtr term = parse_term(term_text, inst.presentation);
  std::cout << measure(inst, term).str() << "\n";
  return 0;
}

int run_thmb_check_lineq(const std::string& inst_path) {
  GrowthInstance inst = instance_from_json(load_json_file(inst_path));
  const int m = inst.codes.m;
  bool ok = true;
  for (int n = 0; n < inst.codes.bit_length; ++n) {
    int agree = 0;
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) {
        TermPtr meet = t_and(t_gen(inst.presentation.u0(x)),
                             t_gen(inst.presentation.u1(y)));
        bool below =
            entails(inst.presentation, meet, v_prefix_term(inst, n)).holds;
        if (below == (inst.diff.at(x, y) <= n)) {
          ++agree;
        } else {
          ok = false;
          std::cout << "MISMATCH at pair (" << x << ", " << y << "), level "
                    << n << "\n";
        }
      }
    std::cout << "level " << n << ": " << agree << "/" << m * m
              << " pairs consistent\n";
  }
  std::cout << (ok ? "[PASS]" : "[FAIL]")
            << " meet-below-prefix coincides with the first-difference level\n";
  return ok ? 0 : 1;
}

int run_thmb_scan(const std::string& m_list, const std::string& csv_path,
                  std::uint64_t budget, const std::string& witness_dir,
                  bool timings) {
  std::vector<ExperimentRow> rows;
  for (int m : parse_int_list(m_list, "--m")) {
    auto start = std::chrono::steady_clock::now();
    GrowthInstance inst = build_instance(all_codes(m));
    MinLevelResult result = min_forced_level(inst, budget);
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    ExperimentRow row;
    row.m = m;
    row.bits = inst.codes.bit_length;
    row.mode = result.mode == MinLevelResult::Mode::exact ? "exact" : "bound";
    row.n_min = result.value;
    // The CSV is documented byte-stable for a fixed seed; measured times go
    // in only on request.
    row.runtime_ms = timings ? elapsed : 0;
    if (!witness_dir.empty() && result.witness) {
      TestPoset poset(inst);
      std::filesystem::path path =
          std::filesystem::path(witness_dir) /
          ("witness_m" + std::to_string(m) + ".json");
      atomic_write_file(path, split_to_json(poset, *result.witness).dump(2) + "\n");
      row.witness_path = path.string();
    }
    rows.push_back(std::move(row));
  }
  if (csv_path.empty()) {
    print_rows_human(rows);
  } else {
    atomic_write_file(csv_path, rows_to_csv(rows));
    std::cout << "wrote " << rows.size() << " rows to " << csv_path << "\n";
  }
  return 0;
}

int run_kappa_select(const std::string& seq) {
  DContext ctx;
  CofinalInput<DContext> input{DValue::a0(), DValue::a1(), {}};
  for (int v : parse_int_list(seq, "--seq"))
    input.sequence.push_back(DValue::nat(static_cast<std::uint32_t>(v)));
  GreedySelection<DContext> sel = greedy_selection(ctx, input);
  std::cout << "selected " << sel.length() << " of " << input.sequence.size()
            << " elements\n";
  std::cout << std::left << std::setw(5) << "k" << std::setw(7) << "f(k)"
            << std::setw(9) << "picked" << "norm\n";
  for (int k = 0; k < sel.length(); ++k)
    std::cout << std::left << std::setw(5) << k << std::setw(7) << sel.f[k]
              << std::setw(9) << sel.picked[k].str()
              << norm(ctx, sel, sel.picked[k]) << "\n";
  return 0;
}

int run_kappa_norms(int trials, int max_len, std::uint64_t seed) {
  DContext ctx;
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
  int violations = 0, checks = 0;
  for (int trial = 0; trial < trials; ++trial) {
    std::uniform_int_distribution<int> len(1, max_len), val(0, 40);
    CofinalInput<DContext> input{DValue::a0(), DValue::a1(), {}};
    const int length = len(rng);
    for (int i = 0; i < length; ++i)
      input.sequence.push_back(DValue::nat(val(rng)));
    GreedySelection<DContext> sel = greedy_selection(ctx, input);
    for (int k = 0; k < sel.length(); ++k) {
      ++checks;
      if (norm(ctx, sel, sel.picked[k]) != k + 1) ++violations;
    }
    std::uint32_t max_nat =
        sel.prefix_join.back().is_nat() ? sel.prefix_join.back().nat_value() : 0;
    for (std::uint32_t a = 0; a <= max_nat; ++a)
      for (std::uint32_t b = 0; b <= max_nat; ++b) {
        ++checks;
        int na = norm(ctx, sel, DValue::nat(a));
        int nb = norm(ctx, sel, DValue::nat(b));
        if (norm(ctx, sel, d_join(DValue::nat(a), DValue::nat(b))) !=
            std::max(na, nb))
          ++violations;
      }
  }
  std::cout << "norm laws: " << checks << " checks, " << violations
            << " violations\n";
  return violations == 0 ? 0 : 1;
}

int run_kappa_trace(const std::string& blocks_spec, int threshold,
                    const std::string& candidate_path, const std::string& q_list) {
  // "BxS": B blocks of S consecutive elements each.
  auto x_pos = blocks_spec.find('x');
  if (x_pos == std::string::npos)
    throw SchemaError("--blocks: expected BxS, e.g. 4x3");
  int num_blocks = 0, block_size = 0;
  try {
    num_blocks = std::stoi(blocks_spec.substr(0, x_pos));
    block_size = std::stoi(blocks_spec.substr(x_pos + 1));
  } catch (const std::exception&) {
    throw SchemaError("--blocks: expected BxS, e.g. 4x3");
  }
  if (num_blocks < 1 || block_size < 1)
    throw SchemaError("--blocks: sizes must be positive");
  std::vector<std::vector<int>> blocks(num_blocks);
  for (int b = 0; b < num_blocks; ++b)
    for (int i = 0; i < block_size; ++i)
      blocks[b].push_back(b * block_size + i);
  PartitionInstance inst = make_partition_instance(std::move(blocks), threshold);

  DContext ctx;
  CofinalInput<DContext> input{DValue::a0(), DValue::a1(), {}};
  if (q_list.empty()) {
    for (int i = 1; i <= inst.ground_size; ++i)
      input.sequence.push_back(DValue::nat(static_cast<std::uint32_t>(i)));
  } else {
    for (int v : parse_int_list(q_list, "--q"))
      input.sequence.push_back(DValue::nat(static_cast<std::uint32_t>(v)));
  }
  GreedySelection<DContext> sel = greedy_selection(ctx, input);
  PartitionMeasure<DContext> mu =
      build_partition_measure(ctx, inst, sel, DValue::a0(), DValue::a1());
  SplitCandidate<DContext> candidate =
      split_candidate_from_json(load_json_file(candidate_path));
  TraceReport report =
      trace_split_refutation(ctx, inst, mu, sel, DValue::a0(), DValue::a1(),
                             candidate);
  if (!report.candidate_accepted) {
    std::cout << "candidate rejected: " << report.rejection << "\n";
    return 0;
  }
  std::cout << "candidate accepted; trace:\n";
  for (std::size_t i = 0; i < report.steps.size(); ++i) {
    const TraceStep& step = report.steps[i];
    const char* mark = step.status == TraceStatus::ok         ? "ok      "
                       : step.status == TraceStatus::failed   ? "FAILED  "
                       : step.status == TraceStatus::boundary ? "BOUNDARY"
                                                              : "skipped ";
    std::cout << "  [" << mark << "] " << step.what;
    if (!step.detail.empty()) std::cout << " -- " << step.detail;
    std::cout << "\n";
  }
  if (report.first_failure)
    std::cout << "first failing step: #" << *report.first_failure << " ("
              << report.steps[*report.first_failure].what << ")\n";
  return 0;
}

int run_selfcheck_cmd(const std::string& fixtures) {
  SelfcheckOptions options;
  if (!fixtures.empty()) options.fixtures_dir = fixtures;
  bool all_passed = true;
  for (const SuiteResult& suite : conlat::run_selfcheck(options)) {
    all_passed = all_passed && suite.passed;
    std::cout << (suite.passed ? "[PASS] " : "[FAIL] ") << suite.name << " ("
              << suite.checks << " checks)";
    if (!suite.passed) std::cout << ": " << suite.detail;
    std::cout << "\n";
  }
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conlat: a workbench for congruence semilattices of finite "
               "lattices, presented Boolean algebras and split experiments"};
  app.require_subcommand(1);

  GlobalConfig cfg;
  app.add_option("--config", cfg.config_path, "JSON config file");

  std::function<int()> action;

  // conc
  {
    auto* sub = app.add_subcommand("conc", "congruence semilattice of a lattice");
    auto lattice = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("human");
    sub->add_option("--lattice", *lattice, "lattice JSON file")->required();
    sub->add_option("--format", *format, "human or json")
        ->check(CLI::IsMember({"human", "json"}));
    sub->callback([&action, &cfg, lattice, format] {
      action = [&cfg, lattice, format] { return run_conc(cfg, *lattice, *format); };
    });
  }
  // theta
  {
    auto* sub = app.add_subcommand("theta", "principal congruence of a pair");
    auto lattice = std::make_shared<std::string>();
    auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("human");
    sub->add_option("--lattice", *lattice, "lattice JSON file")->required();
    sub->add_option("a", *a, "first element id")->required();
    sub->add_option("b", *b, "second element id")->required();
    sub->add_option("--format", *format, "human or json")
        ->check(CLI::IsMember({"human", "json"}));
    sub->callback([&action, lattice, a, b, format] {
      action = [lattice, a, b, format] {
        return run_theta(*lattice, *a, *b, *format);
      };
    });
  }
  // lift
  {
    auto* sub = app.add_subcommand("lift", "search for a congruence lift");
    auto k = std::make_shared<std::string>(), s = std::make_shared<std::string>(),
         phi = std::make_shared<std::string>();
    auto max_size = std::make_shared<int>(4);
    sub->add_option("--k", *k, "source lattice JSON")->required();
    sub->add_option("--s", *s, "target semilattice JSON")->required();
    sub->add_option("--phi", *phi, "map JSON {\"map\": {conc-id: s-id}}")
        ->required();
    sub->add_option("--max-size", *max_size, "largest lattice size to try");
    sub->callback([&action, &cfg, k, s, phi, max_size] {
      action = [&cfg, k, s, phi, max_size] {
        return run_lift(cfg, *k, *s, *phi, *max_size);
      };
    });
  }
  // semi
  {
    auto* semi = app.add_subcommand("semi", "join-semilattice checks");
    semi->require_subcommand(1);
    {
      auto* sub = semi->add_subcommand("check-distributive",
                                       "refinement-style distributivity");
      auto path = std::make_shared<std::string>();
      sub->add_option("--semilattice", *path, "semilattice JSON")->required();
      sub->callback([&action, path] {
        action = [path] { return run_check_distributive(*path); };
      });
    }
    {
      auto* sub = semi->add_subcommand("weakdist",
                                       "weak distributivity of a join-hom");
      auto hom = std::make_shared<std::string>(), at = std::make_shared<std::string>(),
           splits = std::make_shared<std::string>();
      sub->add_option("--hom", *hom, "homomorphism JSON")->required();
      sub->add_option("--at", *at, "source element id")->required();
      sub->add_option("--splits", *splits,
                      "candidate splits JSON (required for non-natural images "
                      "in D)");
      sub->callback([&action, hom, at, splits] {
        action = [hom, at, splits] { return run_weakdist(*hom, *at, *splits); };
      });
    }
  }
  // ba
  {
    auto* ba = app.add_subcommand("ba", "presented Boolean algebras");
    ba->require_subcommand(1);
    auto* sub = ba->add_subcommand("entail", "decide s <= t modulo relations");
    auto pres = std::make_shared<std::string>(), s = std::make_shared<std::string>(),
         t = std::make_shared<std::string>();
    sub->add_option("--presentation", *pres, "presentation JSON")->required();
    sub->add_option("s", *s, "left term")->required();
    sub->add_option("t", *t, "right term")->required();
    sub->callback([&action, &cfg, pres, s, t] {
      action = [&cfg, pres, s, t] { return run_entail(cfg, *pres, *s, *t); };
    });
  }
  // thmb
  {
    auto* thmb = app.add_subcommand("thmb", "prefix-code growth experiment");
    thmb->require_subcommand(1);
    {
      auto* sub = thmb->add_subcommand("build", "build and save an instance");
      auto m = std::make_shared<int>(0);
      auto bits = std::make_shared<int>(0);
      auto seed = std::make_shared<std::uint64_t>(0);
      auto out = std::make_shared<std::string>();
      sub->add_option("--m", *m, "number of codes")->required();
      sub->add_option("--bits", *bits, "code length (default: minimal)");
      sub->add_option("--seed", *seed, "seed for sparse random codes");
      sub->add_option("-o,--out", *out, "output path")->required();
      sub->callback([&action, m, bits, seed, out] {
        action = [m, bits, seed, out] {
          return run_thmb_build(*m, *bits, *seed, *out);
        };
      });
    }
    {
      auto* sub = thmb->add_subcommand("mu", "evaluate the measure on a term");
      auto inst = std::make_shared<std::string>(), term = std::make_shared<std::string>();
      sub->add_option("instance", *inst, "instance JSON")->required();
      sub->add_option("term", *term, "term, e.g. \"(and u0.3 u1.5)\"")->required();
      sub->callback([&action, inst, term] {
        action = [inst, term] { return run_thmb_mu(*inst, *term); };
      });
    }
    {
      auto* sub = thmb->add_subcommand("scan", "minimum forced level per m");
      auto m_list = std::make_shared<std::string>();
      auto csv = std::make_shared<std::string>();
      auto budget = std::make_shared<std::uint64_t>(1u << 22);
      auto witness_dir = std::make_shared<std::string>();
      auto timings = std::make_shared<bool>(false);
      sub->add_option("--m", *m_list, "comma-separated list of m")->required();
      sub->add_option("--csv", *csv, "CSV output path");
      sub->add_option("--budget", *budget, "assignment budget for exact search");
      sub->add_option("--witness-dir", *witness_dir, "directory for witness splits");
      sub->add_flag("--timings", *timings,
                    "record measured runtimes (breaks byte-stable output)");
      sub->callback([&action, m_list, csv, budget, witness_dir, timings] {
        action = [m_list, csv, budget, witness_dir, timings] {
          return run_thmb_scan(*m_list, *csv, *budget, *witness_dir, *timings);
        };
      });
    }
    {
      auto* sub = thmb->add_subcommand(
          "check-lineq", "meet-below-prefix vs first-difference level");
      auto inst = std::make_shared<std::string>();
      sub->add_option("instance", *inst, "instance JSON")->required();
      sub->callback([&action, inst] {
        action = [inst] { return run_thmb_check_lineq(*inst); };
      });
    }
  }
  // kappa
  {
    auto* kappa = app.add_subcommand("kappa", "cofinal selection diagnostics");
    kappa->require_subcommand(1);
    {
      auto* sub = kappa->add_subcommand("select", "greedy minimal-index selection");
      auto seq = std::make_shared<std::string>();
      sub->add_option("--seq", *seq, "comma-separated naturals")->required();
      sub->callback([&action, seq] {
        action = [seq] { return run_kappa_select(*seq); };
      });
    }
    {
      auto* sub = kappa->add_subcommand("norms", "randomized norm-law check");
      auto check = std::make_shared<bool>(false);
      auto trials = std::make_shared<int>(50);
      auto max_len = std::make_shared<int>(20);
      auto seed = std::make_shared<std::uint64_t>(0);
      sub->add_flag("--check", *check, "run the randomized check");
      sub->add_option("--trials", *trials, "number of random sequences");
      sub->add_option("--max-len", *max_len, "maximum sequence length");
      sub->add_option("--seed", *seed, "random seed");
      sub->callback([&action, check, trials, max_len, seed] {
        action = [check, trials, max_len, seed] {
          if (!*check)
            throw SchemaError("kappa norms: pass --check to run the suite");
          return run_kappa_norms(*trials, *max_len, *seed);
        };
      });
    }
    {
      auto* sub = kappa->add_subcommand("trace", "split refutation trace");
      auto blocks = std::make_shared<std::string>();
      auto t = std::make_shared<int>(1);
      auto candidate = std::make_shared<std::string>();
      auto q = std::make_shared<std::string>();
      sub->add_option("--blocks", *blocks, "partition shape BxS, e.g. 4x3")
          ->required();
      sub->add_option("--t", *t, "smallness threshold");
      sub->add_option("--candidate", *candidate, "candidate split JSON")
          ->required();
      sub->add_option("--q", *q, "custom selection sequence (naturals)");
      sub->callback([&action, blocks, t, candidate, q] {
        action = [blocks, t, candidate, q] {
          return run_kappa_trace(*blocks, *t, *candidate, *q);
        };
      });
    }
  }
  // selfcheck
  {
    auto* sub = app.add_subcommand("selfcheck", "run every invariant suite");
    auto fixtures = std::make_shared<std::string>();
    sub->add_option("--fixtures", *fixtures,
                    "directory of semilattice fixture files");
    sub->callback([&action, fixtures] {
      action = [fixtures] { return run_selfcheck_cmd(*fixtures); };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }

  try {
    cfg.load();
    return action ? action() : 2;
  } catch (const SchemaError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
