#include "conlat/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace conlat {

namespace {

std::optional<std::string> validate_one_table(std::span<const int> table, int n,
                                              const char* name) {
  if (static_cast<int>(table.size()) != n * n)
    return std::string(name) + " table has wrong size";
  for (int e : table)
    if (e < 0 || e >= n) return std::string(name) + " table entry out of range";
  auto op = [&](int x, int y) { return table[x * n + y]; };
  for (int x = 0; x < n; ++x) {
    if (op(x, x) != x) return std::string(name) + " not idempotent";
    for (int y = 0; y < n; ++y) {
      if (op(x, y) != op(y, x)) return std::string(name) + " not commutative";
      for (int z = 0; z < n; ++z)
        if (op(op(x, y), z) != op(x, op(y, z)))
          return std::string(name) + " not associative";
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> FiniteLattice::validate(
    std::span<const std::string> ids, std::span<const int> meet_table,
    std::span<const int> join_table) {
  const int n = static_cast<int>(ids.size());
  if (n == 0) return "lattice must have at least one element";
  if (auto err = validate_one_table(meet_table, n, "meet")) return err;
  if (auto err = validate_one_table(join_table, n, "join")) return err;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (meet_table[x * n + join_table[x * n + y]] != x)
        return "absorption x ^ (x v y) = x fails at (" + ids[x] + ", " + ids[y] + ")";
      if (join_table[x * n + meet_table[x * n + y]] != x)
        return "absorption x v (x ^ y) = x fails at (" + ids[x] + ", " + ids[y] + ")";
    }
  return std::nullopt;
}

FiniteLattice::FiniteLattice(std::vector<std::string> ids,
                             std::vector<int> meet_table,
                             std::vector<int> join_table)
    : ids_(std::move(ids)),
      meet_(std::move(meet_table)),
      join_(std::move(join_table)) {
  if (auto err = validate(ids_, meet_, join_))
    throw DomainError("invalid lattice: " + *err);
  for (int i = 0; i < size(); ++i)
    if (!index_.emplace(ids_[i], i).second)
      throw DomainError("duplicate element id '" + ids_[i] + "'");
  bottom_ = 0;
  top_ = 0;
  for (int x = 1; x < size(); ++x) {
    bottom_ = meet(bottom_, x);
    top_ = join(top_, x);
  }
}

int FiniteLattice::index(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end())
    throw DomainError("unknown element id '" + std::string(id) + "'");
  return it->second;
}

std::optional<int> FiniteLattice::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FiniteLattice chain_lattice(int n) {
  std::vector<std::string> ids;
  std::vector<int> meet(static_cast<std::size_t>(n) * n),
      join(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      meet[x * n + y] = std::min(x, y);
      join[x * n + y] = std::max(x, y);
    }
  return FiniteLattice(std::move(ids), std::move(meet), std::move(join));
}

FiniteLattice boolean_lattice(int atoms) {
  const int n = 1 << atoms;
  std::vector<std::string> ids;
  for (int mask = 0; mask < n; ++mask) {
    if (mask == 0) {
      ids.push_back("0");
    } else if (mask == n - 1) {
      ids.push_back("1");
    } else {
      std::string id;
      for (int a = 0; a < atoms; ++a)
        if (mask & (1 << a)) id += static_cast<char>('a' + a);
      ids.push_back(id);
    }
  }
  std::vector<int> meet(static_cast<std::size_t>(n) * n),
      join(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      meet[x * n + y] = x & y;
      join[x * n + y] = x | y;
    }
  return FiniteLattice(std::move(ids), std::move(meet), std::move(join));
}

namespace {

// Builds tables from a <= relation known to be a lattice order.
FiniteLattice lattice_from_order(std::vector<std::string> ids,
                                 const std::vector<char>& leq, int n) {
  std::vector<int> meet(static_cast<std::size_t>(n) * n, -1),
      join(static_cast<std::size_t>(n) * n, -1);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      for (int m = 0; m < n; ++m) {
        if (!(leq[m * n + x] && leq[m * n + y])) continue;
        bool greatest = true;
        for (int o = 0; o < n; ++o)
          if (leq[o * n + x] && leq[o * n + y] && !leq[o * n + m]) {
            greatest = false;
            break;
          }
        if (greatest) {
          meet[x * n + y] = m;
          break;
        }
      }
      for (int j = 0; j < n; ++j) {
        if (!(leq[x * n + j] && leq[y * n + j])) continue;
        bool least = true;
        for (int o = 0; o < n; ++o)
          if (leq[x * n + o] && leq[y * n + o] && !leq[j * n + o]) {
            least = false;
            break;
          }
        if (least) {
          join[x * n + y] = j;
          break;
        }
      }
    }
  return FiniteLattice(std::move(ids), std::move(meet), std::move(join));
}

}  // namespace

FiniteLattice diamond_m3() {
  // 0 below atoms a, b, c, all below 1; atoms pairwise incomparable.
  const int n = 5;
  std::vector<std::string> ids = {"0", "a", "b", "c", "1"};
  std::vector<char> leq(n * n, 0);
  auto set = [&](int x, int y) { leq[x * n + y] = 1; };
  for (int x = 0; x < n; ++x) set(x, x);
  for (int x = 0; x < n; ++x) {
    set(0, x);
    set(x, 4);
  }
  return lattice_from_order(std::move(ids), leq, n);
}

FiniteLattice pentagon_n5() {
  // 0 < a < b < 1 and 0 < c < 1 with c incomparable to a and b.
  const int n = 5;
  std::vector<std::string> ids = {"0", "a", "b", "c", "1"};
  std::vector<char> leq(n * n, 0);
  auto set = [&](int x, int y) { leq[x * n + y] = 1; };
  for (int x = 0; x < n; ++x) set(x, x);
  for (int x = 0; x < n; ++x) {
    set(0, x);
    set(x, 4);
  }
  set(1, 2);
  return lattice_from_order(std::move(ids), leq, n);
}

FiniteJoinSemilattice as_join_semilattice(const FiniteLattice& l) {
  std::vector<int> table(l.join_table().begin(), l.join_table().end());
  return FiniteJoinSemilattice(l.ids(), l.bottom(), std::move(table));
}

std::optional<std::string> check_lattice_hom(const FiniteLattice& k,
                                             const FiniteLattice& l,
                                             std::span<const int> map) {
  if (static_cast<int>(map.size()) != k.size())
    return "map size does not match source";
  for (int v : map)
    if (v < 0 || v >= l.size()) return "map value out of target range";
  for (int x = 0; x < k.size(); ++x)
    for (int y = 0; y < k.size(); ++y) {
      if (map[k.meet(x, y)] != l.meet(map[x], map[y]))
        return "meet not preserved at (" + k.id(x) + ", " + k.id(y) + ")";
      if (map[k.join(x, y)] != l.join(map[x], map[y]))
        return "join not preserved at (" + k.id(x) + ", " + k.id(y) + ")";
    }
  return std::nullopt;
}

namespace {

// Canonical key of a lattice: the lexicographically least (meet, join)
// table pair over all relabelings.
std::vector<int> canonical_key(const FiniteLattice& l) {
  const int n = l.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best;
  std::vector<int> inv(n), key;
  key.reserve(2 * n * n);
  do {
    for (int i = 0; i < n; ++i) inv[perm[i]] = i;
    key.clear();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        key.push_back(inv[l.meet(perm[x], perm[y])]);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        key.push_back(inv[l.join(perm[x], perm[y])]);
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

std::vector<FiniteLattice> enumerate_lattices(int n) {
  if (n < 1 || n > 6)
    throw BudgetError("enumerate_lattices: size " + std::to_string(n) +
                      " outside supported range 1..6");
  // Enumerate partial orders as assignments over unordered pairs
  // (below / above / incomparable), then keep those whose order is a
  // lattice, deduplicated by canonical form.
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  const int num_slots = static_cast<int>(slots.size());

  std::vector<FiniteLattice> out;
  std::vector<std::vector<int>> seen_keys;
  std::vector<int> choice(num_slots, 0);
  std::vector<char> leq(static_cast<std::size_t>(n) * n, 0);

  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back(std::to_string(i));

  while (true) {
    std::fill(leq.begin(), leq.end(), 0);
    for (int i = 0; i < n; ++i) leq[i * n + i] = 1;
    for (int s = 0; s < num_slots; ++s) {
      if (choice[s] == 1) leq[slots[s].first * n + slots[s].second] = 1;
      if (choice[s] == 2) leq[slots[s].second * n + slots[s].first] = 1;
    }
    bool transitive = true;
    for (int x = 0; x < n && transitive; ++x)
      for (int y = 0; y < n && transitive; ++y) {
        if (!leq[x * n + y]) continue;
        for (int z = 0; z < n; ++z)
          if (leq[y * n + z] && !leq[x * n + z]) {
            transitive = false;
            break;
          }
      }
    if (transitive) {
      // Lattice check: every pair needs a unique least upper bound and
      // greatest lower bound.
      bool lattice = true;
      for (int x = 0; x < n && lattice; ++x)
        for (int y = x + 1; y < n && lattice; ++y) {
          int lub = -1, glb = -1;
          for (int c = 0; c < n; ++c) {
            if (leq[x * n + c] && leq[y * n + c]) {
              bool least = true;
              for (int o = 0; o < n; ++o)
                if (leq[x * n + o] && leq[y * n + o] && !leq[c * n + o]) {
                  least = false;
                  break;
                }
              if (least) lub = c;
            }
            if (leq[c * n + x] && leq[c * n + y]) {
              bool greatest = true;
              for (int o = 0; o < n; ++o)
                if (leq[o * n + x] && leq[o * n + y] && !leq[o * n + c]) {
                  greatest = false;
                  break;
                }
              if (greatest) glb = c;
            }
          }
          if (lub < 0 || glb < 0) lattice = false;
        }
      if (lattice) {
        FiniteLattice cand = lattice_from_order(ids, leq, n);
        auto key = canonical_key(cand);
        if (std::find(seen_keys.begin(), seen_keys.end(), key) ==
            seen_keys.end()) {
          seen_keys.push_back(std::move(key));
          out.push_back(std::move(cand));
        }
      }
    }
    int s = 0;
    while (s < num_slots && choice[s] == 2) choice[s++] = 0;
    if (s == num_slots) break;
    ++choice[s];
  }
  return out;
}

}  // namespace conlat
