#include "conlat/io.hpp"

#include <fstream>
#include <set>

namespace conlat {

using nlohmann::json;

nlohmann::json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw SchemaError("cannot open file '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

void atomic_write_file(const std::filesystem::path& path,
                       const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw SchemaError("cannot write file '" + tmp.string() + "'");
    out << content;
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw SchemaError("write failed for '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw SchemaError("cannot move temporary file onto '" + path.string() + "'");
  }
}

json dvalue_to_json(DValue v) {
  switch (v.tag()) {
    case DValue::Tag::nat:
      return json{{"nat", v.nat_value()}};
    case DValue::Tag::a0:
      return "a0";
    case DValue::Tag::a1:
      return "a1";
    case DValue::Tag::top:
      return "top";
  }
  return nullptr;
}

DValue dvalue_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "a0") return DValue::a0();
    if (s == "a1") return DValue::a1();
    if (s == "top") return DValue::top();
    throw SchemaError("bad D value '" + s + "'");
  }
  if (j.is_object() && j.contains("nat") && j["nat"].is_number_unsigned())
    return DValue::nat(j["nat"].get<std::uint32_t>());
  throw SchemaError("bad D value: expected {\"nat\": n}, \"a0\", \"a1\" or \"top\"");
}

namespace {

std::vector<std::string> element_list(const json& j, const char* what) {
  if (!j.is_array() || j.empty())
    throw SchemaError(std::string(what) + ": 'elements' must be a nonempty array");
  std::vector<std::string> ids;
  for (const auto& e : j) {
    if (!e.is_string())
      throw SchemaError(std::string(what) + ": element ids must be strings");
    ids.push_back(e.get<std::string>());
  }
  return ids;
}

// Fills an n*n table from [id, id, id] triples; both orders of a pair are
// accepted and checked for agreement.
std::vector<int> table_from_triples(const json& triples,
                                    const std::vector<std::string>& ids,
                                    const char* what) {
  const int n = static_cast<int>(ids.size());
  auto find = [&](const json& id_json) {
    if (!id_json.is_string())
      throw SchemaError(std::string(what) + ": ids in triples must be strings");
    const std::string id = id_json.get<std::string>();
    for (int i = 0; i < n; ++i)
      if (ids[i] == id) return i;
    throw SchemaError(std::string(what) + ": unknown element id '" + id + "'");
  };
  std::vector<int> table(static_cast<std::size_t>(n) * n, -1);
  if (!triples.is_array())
    throw SchemaError(std::string(what) + ": expected an array of triples");
  for (const auto& t : triples) {
    if (!t.is_array() || t.size() != 3)
      throw SchemaError(std::string(what) + ": each entry must be [x, y, z]");
    int x = find(t[0]), y = find(t[1]), z = find(t[2]);
    for (auto [a, b] : {std::pair{x, y}, std::pair{y, x}}) {
      int& slot = table[a * n + b];
      if (slot != -1 && slot != z)
        throw SchemaError(std::string(what) + ": conflicting entries for (" +
                          ids[a] + ", " + ids[b] + ")");
      slot = z;
    }
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (table[x * n + y] == -1)
        throw SchemaError(std::string(what) + ": missing entry for (" + ids[x] +
                          ", " + ids[y] + ")");
  return table;
}

json triples_to_json(const std::vector<std::string>& ids,
                     std::span<const int> table) {
  const int n = static_cast<int>(ids.size());
  json out = json::array();
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y)
      out.push_back({ids[x], ids[y], ids[table[x * n + y]]});
  return out;
}

}  // namespace

FiniteJoinSemilattice semilattice_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("semilattice: expected an object");
  if (!j.contains("elements") || !j.contains("zero") || !j.contains("join"))
    throw SchemaError("semilattice: need 'elements', 'zero' and 'join'");
  auto ids = element_list(j["elements"], "semilattice");
  auto table = table_from_triples(j["join"], ids, "semilattice join");
  if (!j["zero"].is_string())
    throw SchemaError("semilattice: 'zero' must be an element id");
  const std::string zero_id = j["zero"].get<std::string>();
  int zero = -1;
  for (int i = 0; i < static_cast<int>(ids.size()); ++i)
    if (ids[i] == zero_id) zero = i;
  if (zero < 0) throw SchemaError("semilattice: unknown zero id '" + zero_id + "'");
  try {
    return FiniteJoinSemilattice(std::move(ids), zero, std::move(table));
  } catch (const DomainError& e) {
    throw SchemaError(std::string("semilattice: ") + e.what());
  }
}

json semilattice_to_json(const FiniteJoinSemilattice& s) {
  std::vector<int> table;
  table.reserve(static_cast<std::size_t>(s.size()) * s.size());
  for (int x = 0; x < s.size(); ++x)
    for (int y = 0; y < s.size(); ++y) table.push_back(s.join(x, y));
  return json{{"elements", s.ids()},
              {"zero", s.id(s.zero())},
              {"join", triples_to_json(s.ids(), table)}};
}

FiniteLattice lattice_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("lattice: expected an object");
  if (!j.contains("elements") || !j.contains("meet") || !j.contains("join"))
    throw SchemaError("lattice: need 'elements', 'meet' and 'join'");
  auto ids = element_list(j["elements"], "lattice");
  auto meet = table_from_triples(j["meet"], ids, "lattice meet");
  auto join = table_from_triples(j["join"], ids, "lattice join");
  try {
    return FiniteLattice(std::move(ids), std::move(meet), std::move(join));
  } catch (const DomainError& e) {
    throw SchemaError(std::string("lattice: ") + e.what());
  }
}

json lattice_to_json(const FiniteLattice& l) {
  std::vector<int> meet(l.meet_table().begin(), l.meet_table().end());
  std::vector<int> join(l.join_table().begin(), l.join_table().end());
  return json{{"elements", l.ids()},
              {"meet", triples_to_json(l.ids(), meet)},
              {"join", triples_to_json(l.ids(), join)}};
}

Congruence congruence_from_json(const json& j, const FiniteLattice& l) {
  if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array())
    throw SchemaError("congruence: expected { \"blocks\": [[ids]] }");
  std::vector<int> labels(l.size(), -1);
  int block_index = 0;
  for (const auto& block : j["blocks"]) {
    if (!block.is_array()) throw SchemaError("congruence: blocks must be arrays");
    for (const auto& id : block) {
      if (!id.is_string()) throw SchemaError("congruence: ids must be strings");
      auto found = l.find(id.get<std::string>());
      if (!found)
        throw SchemaError("congruence: unknown element id '" +
                          id.get<std::string>() + "'");
      if (labels[*found] != -1)
        throw SchemaError("congruence: element '" + id.get<std::string>() +
                          "' appears twice");
      labels[*found] = block_index;
    }
    ++block_index;
  }
  for (int x = 0; x < l.size(); ++x)
    if (labels[x] == -1)
      throw SchemaError("congruence: element '" + l.id(x) + "' not covered");
  return Congruence(std::move(labels));
}

json congruence_to_json(const Congruence& c, const FiniteLattice& l) {
  json blocks = json::array();
  for (const auto& block : c.blocks()) {
    json b = json::array();
    for (int x : block) b.push_back(l.id(x));
    blocks.push_back(b);
  }
  return json{{"blocks", blocks}};
}

namespace {

FiniteJoinSemilattice resolve_semilattice_ref(const json& ref,
                                              const std::filesystem::path& base) {
  if (ref.is_object()) return semilattice_from_json(ref);
  if (ref.is_string())
    return semilattice_from_json(load_json_file(base / ref.get<std::string>()));
  throw SchemaError("hom: source/target must be an object or a path string");
}

}  // namespace

LoadedHom hom_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object() || !j.contains("source") || !j.contains("target") ||
      !j.contains("map"))
    throw SchemaError("hom: need 'source', 'target' and 'map'");
  FiniteJoinSemilattice source = resolve_semilattice_ref(j["source"], base_dir);
  if (!j["map"].is_object()) throw SchemaError("hom: 'map' must be an object");

  const bool d_target = j["target"].is_string() && j["target"] == "D";
  if (d_target) {
    std::vector<DValue> map(source.size());
    std::vector<char> seen(source.size(), 0);
    for (const auto& [key, value] : j["map"].items()) {
      auto idx = source.find(key);
      if (!idx) throw SchemaError("hom: unknown source id '" + key + "'");
      map[*idx] = dvalue_from_json(value);
      seen[*idx] = 1;
    }
    for (int x = 0; x < source.size(); ++x)
      if (!seen[x])
        throw SchemaError("hom: map missing source element '" + source.id(x) + "'");
    return JoinHomToD{std::move(source), std::move(map)};
  }

  FiniteJoinSemilattice target = resolve_semilattice_ref(j["target"], base_dir);
  std::vector<int> map(source.size(), -1);
  for (const auto& [key, value] : j["map"].items()) {
    auto idx = source.find(key);
    if (!idx) throw SchemaError("hom: unknown source id '" + key + "'");
    if (!value.is_string())
      throw SchemaError("hom: map values must be target ids");
    auto tgt = target.find(value.get<std::string>());
    if (!tgt)
      throw SchemaError("hom: unknown target id '" + value.get<std::string>() + "'");
    map[*idx] = *tgt;
  }
  for (int x = 0; x < source.size(); ++x)
    if (map[x] < 0)
      throw SchemaError("hom: map missing source element '" + source.id(x) + "'");
  return JoinHom{std::move(source), std::move(target), std::move(map)};
}

Presentation presentation_from_json(const json& j) {
  if (!j.is_object() || !j.contains("u0") || !j.contains("u1") ||
      !j.contains("v") || !j.contains("relations"))
    throw SchemaError("presentation: need 'u0', 'u1', 'v' and 'relations'");
  if (!j["u0"].is_number_unsigned() || !j["u1"].is_number_unsigned() ||
      !j["v"].is_number_unsigned())
    throw SchemaError("presentation: family sizes must be nonnegative integers");
  const int u0 = j["u0"].get<int>();
  const int u1 = j["u1"].get<int>();
  const int v = j["v"].get<int>();
  if (!j["relations"].is_array())
    throw SchemaError("presentation: 'relations' must be an array");
  std::vector<std::array<int, 3>> relations;
  for (const auto& r : j["relations"]) {
    if (!r.is_array() || r.size() != 3 || !r[0].is_number_unsigned() ||
        !r[1].is_number_unsigned() || !r[2].is_number_unsigned())
      throw SchemaError("presentation: each relation must be [x, y, k]");
    const int x = r[0].get<int>(), y = r[1].get<int>(), k = r[2].get<int>();
    if (x >= u0 || y >= u1 || k >= v)
      throw SchemaError("presentation: relation index out of family range");
    relations.push_back({x, u0 + y, u0 + u1 + k});
  }
  try {
    return Presentation(u0, u1, v, std::move(relations));
  } catch (const DomainError& e) {
    throw SchemaError(std::string("presentation: ") + e.what());
  }
}

json presentation_to_json(const Presentation& p) {
  json relations = json::array();
  for (const auto& [g, h, v] : p.relations()) {
    // Family-indexed form; relations built elsewhere always fit it.
    if (g >= p.u0_count() || h < p.u0_count() ||
        h >= p.u0_count() + p.u1_count() || v < p.u0_count() + p.u1_count())
      throw SchemaError("presentation: relation outside the u0/u1/v layout");
    relations.push_back(
        {g, h - p.u0_count(), v - p.u0_count() - p.u1_count()});
  }
  return json{{"u0", p.u0_count()},
              {"u1", p.u1_count()},
              {"v", p.v_count()},
              {"relations", relations}};
}

json instance_to_json(const GrowthInstance& inst) {
  json codes = json::array();
  for (int x = 0; x < inst.codes.m; ++x) {
    json row = json::array();
    for (int b = 0; b < inst.codes.bit_length; ++b)
      row.push_back(static_cast<int>((inst.codes.rows[x] >> b) & 1));
    codes.push_back(row);
  }
  return json{{"m", inst.codes.m},
              {"bits", inst.codes.bit_length},
              {"codes", codes},
              {"presentation", presentation_to_json(inst.presentation)}};
}

GrowthInstance instance_from_json(const json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("bits") ||
      !j.contains("codes"))
    throw SchemaError("instance: need 'm', 'bits' and 'codes'");
  CodeSet codes;
  codes.m = j["m"].get<int>();
  codes.bit_length = j["bits"].get<int>();
  if (codes.m < 1 || codes.bit_length < 1 || codes.bit_length > 62)
    throw SchemaError("instance: bad dimensions");
  if (!j["codes"].is_array() || static_cast<int>(j["codes"].size()) != codes.m)
    throw SchemaError("instance: 'codes' must list m bit rows");
  for (const auto& row : j["codes"]) {
    if (!row.is_array() || static_cast<int>(row.size()) != codes.bit_length)
      throw SchemaError("instance: each code row must have 'bits' entries");
    std::uint64_t bits = 0;
    for (int b = 0; b < codes.bit_length; ++b) {
      if (!row[b].is_number_unsigned() || row[b].get<int>() > 1)
        throw SchemaError("instance: code bits must be 0 or 1");
      bits |= static_cast<std::uint64_t>(row[b].get<int>()) << b;
    }
    codes.rows.push_back(bits);
  }
  try {
    GrowthInstance inst = build_instance(codes);
    // When the file carries a presentation, it must agree with the rebuilt
    // one; the codes are authoritative.
    if (j.contains("presentation")) {
      Presentation stored = presentation_from_json(j["presentation"]);
      if (presentation_to_json(stored) !=
          presentation_to_json(inst.presentation))
        throw SchemaError(
            "instance: stored presentation disagrees with the codes");
    }
    return inst;
  } catch (const DomainError& e) {
    throw SchemaError(std::string("instance: ") + e.what());
  }
}

json split_to_json(const TestPoset& poset, const MeasureSplit& split) {
  json labels = json::array(), mu0 = json::array(), mu1 = json::array();
  for (int i = 0; i < poset.size(); ++i) {
    labels.push_back(poset.label(i));
    mu0.push_back(dvalue_to_json(split.mu0[i]));
    mu1.push_back(dvalue_to_json(split.mu1[i]));
  }
  return json{{"labels", labels}, {"mu0", mu0}, {"mu1", mu1}};
}

MeasureSplit split_from_json(const json& j, const TestPoset& poset) {
  if (!j.is_object() || !j.contains("mu0") || !j.contains("mu1"))
    throw SchemaError("split: need 'mu0' and 'mu1'");
  if (!j["mu0"].is_array() || !j["mu1"].is_array() ||
      static_cast<int>(j["mu0"].size()) != poset.size() ||
      static_cast<int>(j["mu1"].size()) != poset.size())
    throw SchemaError("split: tables must match the test poset size");
  MeasureSplit split;
  for (const auto& v : j["mu0"]) split.mu0.push_back(dvalue_from_json(v));
  for (const auto& v : j["mu1"]) split.mu1.push_back(dvalue_from_json(v));
  return split;
}

SplitCandidate<DContext> split_candidate_from_json(const json& j) {
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
    throw SchemaError("candidate: expected { \"entries\": [...] }");
  SplitCandidate<DContext> candidate;
  for (const auto& entry : j["entries"]) {
    if (!entry.is_object() || !entry.contains("set") ||
        !entry.contains("mu0") || !entry.contains("mu1") ||
        !entry["set"].is_array())
      throw SchemaError("candidate: entries need 'set', 'mu0' and 'mu1'");
    SubsetMask mask = 0;
    for (const auto& e : entry["set"]) {
      if (!e.is_number_unsigned() || e.get<int>() >= 64)
        throw SchemaError("candidate: set members must be small integers");
      mask |= SubsetMask{1} << e.get<int>();
    }
    if (!candidate.entries
             .emplace(mask, std::make_pair(dvalue_from_json(entry["mu0"]),
                                           dvalue_from_json(entry["mu1"])))
             .second)
      throw SchemaError("candidate: duplicate entry for " + subset_str(mask));
  }
  return candidate;
}

}  // namespace conlat
