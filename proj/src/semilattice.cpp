#include "conlat/semilattice.hpp"

#include <algorithm>
#include <sstream>

namespace conlat {

namespace {

std::string describe(std::span<const std::string> ids, int x) {
  if (x < 0 || x >= static_cast<int>(ids.size())) return "#" + std::to_string(x);
  return ids[x];
}

}  // namespace

std::optional<std::string> FiniteJoinSemilattice::validate(
    std::span<const std::string> ids, int zero, std::span<const int> join_table) {
  const int n = static_cast<int>(ids.size());
  if (n == 0) return "semilattice must have at least one element";
  if (zero < 0 || zero >= n) return "zero index out of range";
  if (static_cast<int>(join_table.size()) != n * n)
    return "join table has " + std::to_string(join_table.size()) +
           " entries, expected " + std::to_string(n * n);
  for (int e : join_table)
    if (e < 0 || e >= n) return "join table entry out of range";

  auto jn = [&](int x, int y) { return join_table[x * n + y]; };

  for (int x = 0; x < n; ++x) {
    if (jn(x, x) != x)
      return "join not idempotent at " + describe(ids, x);
    if (jn(zero, x) != x || jn(x, zero) != x)
      return "zero not neutral at " + describe(ids, x);
    for (int y = 0; y < n; ++y) {
      if (jn(x, y) != jn(y, x))
        return "join not commutative at (" + describe(ids, x) + ", " +
               describe(ids, y) + ")";
      for (int z = 0; z < n; ++z) {
        if (jn(jn(x, y), z) != jn(x, jn(y, z)))
          return "join not associative at (" + describe(ids, x) + ", " +
                 describe(ids, y) + ", " + describe(ids, z) + ")";
      }
    }
  }
  return std::nullopt;
}

FiniteJoinSemilattice::FiniteJoinSemilattice(std::vector<std::string> ids,
                                             int zero,
                                             std::vector<int> join_table)
    : ids_(std::move(ids)), zero_(zero), join_(std::move(join_table)) {
  if (auto err = validate(ids_, zero_, join_))
    throw DomainError("invalid join-semilattice: " + *err);
  for (int i = 0; i < size(); ++i) {
    if (!index_.emplace(ids_[i], i).second)
      throw DomainError("duplicate element id '" + ids_[i] + "'");
  }
}

int FiniteJoinSemilattice::index(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end())
    throw DomainError("unknown element id '" + std::string(id) + "'");
  return it->second;
}

std::optional<int> FiniteJoinSemilattice::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FiniteJoinSemilattice chain_semilattice(int n) {
  std::vector<std::string> ids;
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) table[x * n + y] = std::max(x, y);
  return FiniteJoinSemilattice(std::move(ids), 0, std::move(table));
}

FiniteJoinSemilattice powerset_semilattice(int atoms) {
  const int n = 1 << atoms;
  std::vector<std::string> ids;
  ids.reserve(n);
  for (int mask = 0; mask < n; ++mask) {
    if (mask == 0) {
      ids.push_back("0");
      continue;
    }
    std::string id;
    for (int a = 0; a < atoms; ++a)
      if (mask & (1 << a)) id += static_cast<char>('a' + a);
    ids.push_back(id);
  }
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) table[x * n + y] = x | y;
  return FiniteJoinSemilattice(std::move(ids), 0, std::move(table));
}

bool Ideal::contains(int x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

Ideal principal_ideal(const FiniteJoinSemilattice& s, int a) {
  if (a < 0 || a >= s.size()) throw DomainError("principal_ideal: unknown element");
  Ideal ideal;
  for (int x = 0; x < s.size(); ++x)
    if (s.leq(x, a)) ideal.members.push_back(x);
  return ideal;
}

Ideal generated_ideal(const FiniteJoinSemilattice& s, std::span<const int> gens) {
  int top = s.zero();
  for (int g : gens) {
    if (g < 0 || g >= s.size()) throw DomainError("generated_ideal: unknown element");
    top = s.join(top, g);
  }
  return principal_ideal(s, top);
}

IntersectionLargest intersection_has_largest(const FiniteJoinSemilattice& s,
                                             int a0, int a1) {
  if (a0 < 0 || a0 >= s.size() || a1 < 0 || a1 >= s.size())
    throw DomainError("intersection_has_largest: unknown element");
  IntersectionLargest result;
  for (int x = 0; x < s.size(); ++x)
    if (s.leq(x, a0) && s.leq(x, a1)) result.intersection.push_back(x);
  int total = s.zero();
  for (int x : result.intersection) total = s.join(total, x);
  bool member = std::binary_search(result.intersection.begin(),
                                   result.intersection.end(), total);
  if (member) result.largest = total;
  return result;
}

DIntersectionLargest d_intersection_has_largest(DValue a0, DValue a1,
                                                int certificate_length) {
  DIntersectionLargest result;
  bool unbounded = (a0 == DValue::a0() && a1 == DValue::a1()) ||
                   (a0 == DValue::a1() && a1 == DValue::a0());
  if (!unbounded) {
    // All other pairs have a meet in D; the meet is the largest element.
    if (d_leq(a0, a1)) {
      result.largest = a0;
    } else if (d_leq(a1, a0)) {
      result.largest = a1;
    } else {
      result.largest = DValue::top();  // unreachable: only {a0,a1} incomparable
    }
    return result;
  }
  for (int i = 0; i < certificate_length; ++i)
    result.certificate.push_back(DValue::nat(static_cast<std::uint32_t>(i)));
  return result;
}

DistributivityResult is_distributive_semilattice(const FiniteJoinSemilattice& s) {
  const int n = s.size();
  std::vector<char> reachable(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      std::fill(reachable.begin(), reachable.end(), 0);
      for (int ap = 0; ap < n; ++ap) {
        if (!s.leq(ap, a)) continue;
        for (int bp = 0; bp < n; ++bp)
          if (s.leq(bp, b)) reachable[s.join(ap, bp)] = 1;
      }
      const int ab = s.join(a, b);
      for (int t = 0; t < n; ++t) {
        if (s.leq(t, ab) && !reachable[t])
          return DistributivityResult{false, std::array<int, 3>{t, a, b}};
      }
    }
  }
  return DistributivityResult{true, std::nullopt};
}

std::optional<std::string> check_join_hom(const JoinHom& h) {
  const auto& s = h.source;
  const auto& t = h.target;
  if (static_cast<int>(h.map.size()) != s.size())
    return "map size does not match source";
  for (int v : h.map)
    if (v < 0 || v >= t.size()) return "map value out of target range";
  if (h.map[s.zero()] != t.zero()) return "zero not preserved";
  for (int x = 0; x < s.size(); ++x)
    for (int y = 0; y < s.size(); ++y)
      if (h.map[s.join(x, y)] != t.join(h.map[x], h.map[y]))
        return "join not preserved at (" + s.id(x) + ", " + s.id(y) + ")";
  return std::nullopt;
}

std::optional<std::string> check_join_hom(const JoinHomToD& h) {
  const auto& s = h.source;
  if (static_cast<int>(h.map.size()) != s.size())
    return "map size does not match source";
  if (h.map[s.zero()] != d_zero()) return "zero not preserved";
  for (int x = 0; x < s.size(); ++x)
    for (int y = 0; y < s.size(); ++y)
      if (h.map[s.join(x, y)] != d_join(h.map[x], h.map[y]))
        return "join not preserved at (" + s.id(x) + ", " + s.id(y) + ")";
  return std::nullopt;
}

bool is_monotone(const FiniteJoinSemilattice& source,
                 const FiniteJoinSemilattice& target,
                 std::span<const int> map) {
  for (int x = 0; x < source.size(); ++x)
    for (int y = 0; y < source.size(); ++y)
      if (source.leq(x, y) && !target.leq(map[x], map[y])) return false;
  return true;
}

bool is_monotone_to_d(const FiniteJoinSemilattice& source,
                      std::span<const DValue> map) {
  for (int x = 0; x < source.size(); ++x)
    for (int y = 0; y < source.size(); ++y)
      if (source.leq(x, y) && !d_leq(map[x], map[y])) return false;
  return true;
}

std::vector<int> pointwise_join(const FiniteJoinSemilattice& source,
                                const FiniteJoinSemilattice& target,
                                std::span<const int> map0,
                                std::span<const int> map1) {
  if (map0.size() != map1.size() ||
      static_cast<int>(map0.size()) != source.size())
    throw DomainError("pointwise_join: domain mismatch");
  std::vector<int> out(map0.size());
  for (std::size_t x = 0; x < map0.size(); ++x)
    out[x] = target.join(map0[x], map1[x]);
  return out;
}

std::vector<DValue> pointwise_join_to_d(std::span<const DValue> map0,
                                        std::span<const DValue> map1) {
  if (map0.size() != map1.size())
    throw DomainError("pointwise_join: domain mismatch");
  std::vector<DValue> out(map0.size());
  for (std::size_t x = 0; x < map0.size(); ++x)
    out[x] = d_join(map0[x], map1[x]);
  return out;
}

WeakDistResult is_weakly_distributive_at(const JoinHom& mu, int a) {
  if (auto err = check_join_hom(mu))
    throw DomainError("is_weakly_distributive_at: not a join-hom: " + *err);
  if (a < 0 || a >= mu.source.size())
    throw DomainError("is_weakly_distributive_at: unknown element");
  const auto& s = mu.source;
  const auto& t = mu.target;
  const int image = mu.apply(a);
  for (int b0 = 0; b0 < t.size(); ++b0) {
    for (int b1 = 0; b1 < t.size(); ++b1) {
      if (t.join(b0, b1) != image) continue;
      bool liftable = false;
      for (int a0 = 0; a0 < s.size() && !liftable; ++a0) {
        if (!t.leq(mu.apply(a0), b0)) continue;
        for (int a1 = 0; a1 < s.size(); ++a1) {
          if (s.join(a0, a1) == a && t.leq(mu.apply(a1), b1)) {
            liftable = true;
            break;
          }
        }
      }
      if (!liftable) {
        WeakDistResult r;
        r.status = WeakDistStatus::fails;
        r.witness = std::make_pair(b0, b1);
        return r;
      }
    }
  }
  return WeakDistResult{};
}

namespace {

// All splits b0 v b1 = v for a natural v; the only splits of a natural are
// pairs of naturals with max equal to it.
std::vector<std::pair<DValue, DValue>> d_splits_of_nat(std::uint32_t v) {
  std::vector<std::pair<DValue, DValue>> out;
  for (std::uint32_t i = 0; i <= v; ++i) {
    out.emplace_back(DValue::nat(i), DValue::nat(v));
    if (i != v) out.emplace_back(DValue::nat(v), DValue::nat(i));
  }
  return out;
}

}  // namespace

WeakDistResult is_weakly_distributive_at(
    const JoinHomToD& mu, int a,
    std::span<const std::pair<DValue, DValue>> candidate_splits) {
  if (auto err = check_join_hom(mu))
    throw DomainError("is_weakly_distributive_at: not a join-hom: " + *err);
  if (a < 0 || a >= mu.source.size())
    throw DomainError("is_weakly_distributive_at: unknown element");
  const auto& s = mu.source;
  const DValue image = mu.apply(a);

  std::vector<std::pair<DValue, DValue>> splits(candidate_splits.begin(),
                                                candidate_splits.end());
  if (splits.empty()) {
    if (image.is_nat()) {
      splits = d_splits_of_nat(image.nat_value());
    } else {
      WeakDistResult r;
      r.status = WeakDistStatus::undecidable;
      r.note = "image " + image.str() +
               " has infinitely many splits in D; supply candidate splits";
      return r;
    }
  }

  for (const auto& [b0, b1] : splits) {
    if (d_join(b0, b1) != image) continue;
    bool liftable = false;
    for (int a0 = 0; a0 < s.size() && !liftable; ++a0) {
      if (!d_leq(mu.apply(a0), b0)) continue;
      for (int a1 = 0; a1 < s.size(); ++a1) {
        if (s.join(a0, a1) == a && d_leq(mu.apply(a1), b1)) {
          liftable = true;
          break;
        }
      }
    }
    if (!liftable) {
      WeakDistResult r;
      r.status = WeakDistStatus::fails;
      r.witness_d = std::make_pair(b0, b1);
      return r;
    }
  }
  return WeakDistResult{};
}

}  // namespace conlat
