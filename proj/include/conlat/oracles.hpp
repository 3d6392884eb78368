#ifndef CONLAT_ORACLES_HPP
#define CONLAT_ORACLES_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "conlat/congruence.hpp"
#include "conlat/lattice.hpp"
#include "conlat/presentation.hpp"
#include "conlat/semilattice.hpp"

namespace conlat {

// Brute-force reference implementations, deliberately independent of the
// production code paths they are used to check.

// Every compatible partition, found by filtering all set partitions.
std::vector<Congruence> oracle_all_congruences(const FiniteLattice& l);

// Refinement-least compatible partition collapsing (a, b), as the
// blockwise intersection of all compatible partitions that collapse it.
Congruence oracle_principal_congruence(const FiniteLattice& l, int a, int b);

// Five-fold loop over the refinement definition.
bool oracle_distributive(const FiniteJoinSemilattice& s);

// Entailment by sweeping every valuation.
bool oracle_entails(const Presentation& p, const TermPtr& s, const TermPtr& t);

// --- Selfcheck -------------------------------------------------------------

struct SuiteResult {
  std::string name;
  bool passed = false;
  int checks = 0;
  std::string detail;  // first failure, empty when passed
};

struct SelfcheckOptions {
  // When set, semilattice fixture files (*.json) are loaded and validated
  // from this directory instead of the built-in fixtures.
  std::optional<std::filesystem::path> fixtures_dir;
};

// Runs every suite at its default size. Output is deterministic: no
// timing, fixed seeds.
std::vector<SuiteResult> run_selfcheck(const SelfcheckOptions& options = {});

}  // namespace conlat

#endif  // CONLAT_ORACLES_HPP
