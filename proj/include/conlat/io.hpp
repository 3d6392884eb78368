#ifndef CONLAT_IO_HPP
#define CONLAT_IO_HPP

#include <filesystem>
#include <string>
#include <variant>

#include "json.hpp"

#include "conlat/cofinal.hpp"
#include "conlat/congruence.hpp"
#include "conlat/dvalue.hpp"
#include "conlat/growth.hpp"
#include "conlat/lattice.hpp"
#include "conlat/presentation.hpp"
#include "conlat/semilattice.hpp"

namespace conlat {

// File loading with distinct messages for missing files and parse errors;
// both throw SchemaError.
nlohmann::json load_json_file(const std::filesystem::path& path);

// Writes via a temporary file in the same directory and renames on success,
// so failures leave nothing behind at `path`.
void atomic_write_file(const std::filesystem::path& path,
                       const std::string& content);

// --- DValue: {"nat": n} | "a0" | "a1" | "top" ---------------------------
nlohmann::json dvalue_to_json(DValue v);
DValue dvalue_from_json(const nlohmann::json& j);

// --- Semilattice: { "elements": [...], "zero": id, "join": [[x,y,z],...] }
// The triple list must cover every unordered pair; conflicting entries are
// rejected.
FiniteJoinSemilattice semilattice_from_json(const nlohmann::json& j);
nlohmann::json semilattice_to_json(const FiniteJoinSemilattice& s);

// --- Lattice: { "elements": [...], "meet": triples, "join": triples } ----
FiniteLattice lattice_from_json(const nlohmann::json& j);
nlohmann::json lattice_to_json(const FiniteLattice& l);

// --- Congruence: { "blocks": [[ids]] }, relative to a lattice ------------
Congruence congruence_from_json(const nlohmann::json& j, const FiniteLattice& l);
nlohmann::json congruence_to_json(const Congruence& c, const FiniteLattice& l);

// --- Join-homomorphism files ---------------------------------------------
// { "source": ref, "target": ref-or-"D", "map": { id: id-or-DValue } }
// where a ref is either an inline semilattice object or a path string
// resolved against `base_dir`.
using LoadedHom = std::variant<JoinHom, JoinHomToD>;
LoadedHom hom_from_json(const nlohmann::json& j,
                        const std::filesystem::path& base_dir);

// --- Presentation: { "u0": m, "u1": m, "v": L, "relations": [[x,y,k]] } --
Presentation presentation_from_json(const nlohmann::json& j);
nlohmann::json presentation_to_json(const Presentation& p);

// --- Growth instance: codes as bit rows plus the presentation ------------
nlohmann::json instance_to_json(const GrowthInstance& inst);
GrowthInstance instance_from_json(const nlohmann::json& j);

// --- Measure split over a test poset --------------------------------------
nlohmann::json split_to_json(const TestPoset& poset, const MeasureSplit& split);
MeasureSplit split_from_json(const nlohmann::json& j, const TestPoset& poset);

// --- Partition split candidate ---------------------------------------------
// { "entries": [ { "set": [ints], "mu0": dvalue, "mu1": dvalue }, ... ] }
SplitCandidate<DContext> split_candidate_from_json(const nlohmann::json& j);

}  // namespace conlat

#endif  // CONLAT_IO_HPP
