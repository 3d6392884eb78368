#include "conlat/congruence.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace conlat {

Congruence::Congruence(std::vector<int> labels) : label_(std::move(labels)) {
  // Normalize to first-occurrence labeling.
  std::vector<int> remap(label_.size(), -1);
  int next = 0;
  for (int& l : label_) {
    if (l < 0 || l >= static_cast<int>(label_.size()))
      throw DomainError("congruence label out of range");
    if (remap[l] < 0) remap[l] = next++;
    l = remap[l];
  }
  blocks_ = next;
}

Congruence Congruence::equality(int n) {
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 0);
  return Congruence(std::move(labels));
}

Congruence Congruence::everything(int n) {
  return Congruence(std::vector<int>(n, 0));
}

std::vector<std::vector<int>> Congruence::blocks() const {
  std::vector<std::vector<int>> out(blocks_);
  for (int x = 0; x < size(); ++x) out[label_[x]].push_back(x);
  return out;
}

bool Congruence::refines(const Congruence& c) const {
  if (c.size() != size()) throw DomainError("refines: size mismatch");
  for (int x = 0; x < size(); ++x)
    for (int y = x + 1; y < size(); ++y)
      if (same(x, y) && !c.same(x, y)) return false;
  return true;
}

bool is_congruence(const FiniteLattice& l, const Congruence& c) {
  if (c.size() != l.size()) throw DomainError("is_congruence: size mismatch");
  for (int x = 0; x < l.size(); ++x)
    for (int y = 0; y < l.size(); ++y) {
      if (!c.same(x, y)) continue;
      for (int z = 0; z < l.size(); ++z) {
        if (!c.same(l.meet(x, z), l.meet(y, z))) return false;
        if (!c.same(l.join(x, z), l.join(y, z))) return false;
      }
    }
  return true;
}

namespace {

// Union-find with the least element of each class as representative, which
// keeps closure results independent of merge order.
class Partition {
 public:
  explicit Partition(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns true if the classes were distinct.
  bool merge(int x, int y) {
    int rx = find(x), ry = find(y);
    if (rx == ry) return false;
    if (rx > ry) std::swap(rx, ry);
    parent_[ry] = rx;
    return true;
  }

  Congruence to_congruence() {
    std::vector<int> labels(parent_.size());
    for (int x = 0; x < static_cast<int>(parent_.size()); ++x)
      labels[x] = find(x);
    return Congruence(std::move(labels));
  }

 private:
  std::vector<int> parent_;
};

Congruence close_under_operations(const FiniteLattice& l,
                                  std::span<const std::pair<int, int>> seed) {
  Partition part(l.size());
  std::deque<std::pair<int, int>> work(seed.begin(), seed.end());
  while (!work.empty()) {
    auto [x, y] = work.front();
    work.pop_front();
    if (!part.merge(x, y)) continue;
    for (int z = 0; z < l.size(); ++z) {
      int mx = l.meet(x, z), my = l.meet(y, z);
      if (part.find(mx) != part.find(my)) work.emplace_back(mx, my);
      int jx = l.join(x, z), jy = l.join(y, z);
      if (part.find(jx) != part.find(jy)) work.emplace_back(jx, jy);
    }
  }
  return part.to_congruence();
}

void check_element(const FiniteLattice& l, int x, const char* op) {
  if (x < 0 || x >= l.size())
    throw DomainError(std::string(op) + ": unknown element index " +
                      std::to_string(x));
}

}  // namespace

Congruence principal_congruence(const FiniteLattice& l, int a, int b) {
  check_element(l, a, "principal_congruence");
  check_element(l, b, "principal_congruence");
  std::pair<int, int> seed[] = {{a, b}};
  return close_under_operations(l, seed);
}

Congruence generated_congruence(const FiniteLattice& l,
                                std::span<const std::pair<int, int>> pairs) {
  for (const auto& [a, b] : pairs) {
    check_element(l, a, "generated_congruence");
    check_element(l, b, "generated_congruence");
  }
  return close_under_operations(l, pairs);
}

Congruence congruence_join(const FiniteLattice& l, const Congruence& c1,
                           const Congruence& c2) {
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < l.size(); ++x)
    for (int y = x + 1; y < l.size(); ++y)
      if (c1.same(x, y) || c2.same(x, y)) pairs.emplace_back(x, y);
  return close_under_operations(l, pairs);
}

int ConcSemilattice::index_of(const Congruence& c) const {
  for (int i = 0; i < static_cast<int>(congruences.size()); ++i)
    if (congruences[i] == c) return i;
  throw DomainError("congruence not found in Conc semilattice");
}

ConcSemilattice conc(const FiniteLattice& l, int size_bound) {
  if (l.size() > size_bound)
    throw BudgetError("conc: lattice size " + std::to_string(l.size()) +
                      " exceeds bound " + std::to_string(size_bound));

  // Every congruence is a join of principal ones, so closing the principal
  // congruences (plus equality) under binary join reaches all of them.
  std::set<Congruence> found;
  found.insert(Congruence::equality(l.size()));
  std::deque<Congruence> fresh;
  for (int a = 0; a < l.size(); ++a)
    for (int b = a + 1; b < l.size(); ++b) {
      Congruence theta = principal_congruence(l, a, b);
      if (found.insert(theta).second) fresh.push_back(theta);
    }
  while (!fresh.empty()) {
    Congruence c = fresh.front();
    fresh.pop_front();
    for (const Congruence& d : std::vector<Congruence>(found.begin(), found.end())) {
      Congruence j = congruence_join(l, c, d);
      if (found.insert(j).second) fresh.push_back(j);
    }
  }

  std::vector<Congruence> congruences(found.begin(), found.end());
  // Deterministic order with equality first (it is the semilattice zero).
  std::sort(congruences.begin(), congruences.end(),
            [](const Congruence& a, const Congruence& b) {
              if (a.block_count() != b.block_count())
                return a.block_count() > b.block_count();
              return a < b;
            });

  const int n = static_cast<int>(congruences.size());
  std::vector<std::string> ids;
  ids.reserve(n);
  for (int i = 0; i < n; ++i) ids.push_back("c" + std::to_string(i));

  std::map<Congruence, int> index;
  for (int i = 0; i < n; ++i) index.emplace(congruences[i], i);

  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Congruence jn = congruence_join(l, congruences[i], congruences[j]);
      auto it = index.find(jn);
      if (it == index.end())
        throw DomainError("conc: join escaped the enumerated congruence set");
      table[i * n + j] = it->second;
      table[j * n + i] = it->second;
    }

  ConcSemilattice result{
      FiniteJoinSemilattice(std::move(ids), 0, std::move(table)),
      std::move(congruences)};
  return result;
}

ConcFunctorResult conc_functor(const FiniteLattice& k, const FiniteLattice& l,
                               std::span<const int> f, int size_bound) {
  if (auto err = check_lattice_hom(k, l, f))
    throw DomainError("conc_functor: " + *err);
  ConcFunctorResult result{conc(k, size_bound), conc(l, size_bound), {}};
  result.map.reserve(result.conc_source.congruences.size());
  for (const Congruence& alpha : result.conc_source.congruences) {
    std::vector<std::pair<int, int>> pairs;
    for (int x = 0; x < k.size(); ++x)
      for (int y = x + 1; y < k.size(); ++y)
        if (alpha.same(x, y)) pairs.emplace_back(f[x], f[y]);
    result.map.push_back(
        result.conc_target.index_of(generated_congruence(l, pairs)));
  }
  return result;
}

ChainDecomposition decompose_from_chain(
    const FiniteLattice& b, const FiniteLattice& l, std::span<const int> f,
    const ConcSemilattice& conc_l, const FiniteJoinSemilattice& s,
    std::span<const int> alpha, std::span<const int> chain,
    const Congruence& psi0, const Congruence& psi1) {
  if (auto err = check_lattice_hom(b, l, f))
    throw DomainError("decompose_from_chain: f is not a homomorphism: " + *err);
  JoinHom alpha_hom{conc_l.semilattice, s,
                    std::vector<int>(alpha.begin(), alpha.end())};
  if (auto err = check_join_hom(alpha_hom))
    throw DomainError("decompose_from_chain: alpha is not a join-hom: " + *err);
  if (!is_congruence(l, psi0) || !is_congruence(l, psi1))
    throw DomainError("decompose_from_chain: psi0/psi1 not congruences");

  if (chain.empty() || chain.size() % 2 == 0)
    throw DomainError("decompose_from_chain: chain must have 2n+1 elements");
  for (std::size_t i = 0; i < chain.size(); ++i)
    if (chain[i] < 0 || chain[i] >= l.size())
      throw DomainError("decompose_from_chain: chain element out of range at index " +
                        std::to_string(i));
  const int n = static_cast<int>(chain.size()) / 2;
  const int f_bottom = f[b.bottom()];
  const int f_top = f[b.top()];
  if (chain.front() != f_bottom)
    throw DomainError("decompose_from_chain: chain start differs from f(bottom)");
  if (chain.back() != f_top)
    throw DomainError("decompose_from_chain: chain end differs from f(top)");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!l.leq(chain[i], chain[i + 1]))
      throw DomainError("decompose_from_chain: chain not increasing at index " +
                        std::to_string(i));
  for (int i = 0; i < n; ++i) {
    if (!psi0.same(chain[2 * i], chain[2 * i + 1]))
      throw DomainError(
          "decompose_from_chain: psi0 does not collapse step at index " +
          std::to_string(2 * i));
    if (!psi1.same(chain[2 * i + 1], chain[2 * i + 2]))
      throw DomainError(
          "decompose_from_chain: psi1 does not collapse step at index " +
          std::to_string(2 * i + 1));
  }
  Congruence theta_f = principal_congruence(l, f_bottom, f_top);
  if (!(congruence_join(l, psi0, psi1) == theta_f))
    throw DomainError(
        "decompose_from_chain: psi0 v psi1 differs from Theta(f(bottom), f(top))");

  ChainDecomposition out;
  auto alpha_theta = [&](int u, int v) {
    return alpha[conc_l.index_of(principal_congruence(l, u, v))];
  };
  for (int x = 0; x < b.size(); ++x) {
    int acc0 = s.zero(), acc1 = s.zero();
    for (int i = 0; i < n; ++i) {
      acc0 = s.join(acc0, alpha_theta(l.meet(chain[2 * i], f[x]),
                                      l.meet(chain[2 * i + 1], f[x])));
      acc1 = s.join(acc1, alpha_theta(l.meet(chain[2 * i + 1], f[x]),
                                      l.meet(chain[2 * i + 2], f[x])));
    }
    out.mu0.push_back(acc0);
    out.mu1.push_back(acc1);
  }

  // Re-verify the guarantees on the constructed maps.
  auto& ver = out.verification;
  ver.join_recovers_composite = true;
  for (int x = 0; x < b.size(); ++x) {
    std::vector<std::pair<int, int>> pairs;
    Congruence theta_b = principal_congruence(b, b.bottom(), x);
    for (int u = 0; u < b.size(); ++u)
      for (int v = u + 1; v < b.size(); ++v)
        if (theta_b.same(u, v)) pairs.emplace_back(f[u], f[v]);
    int composite = alpha[conc_l.index_of(generated_congruence(l, pairs))];
    if (s.join(out.mu0[x], out.mu1[x]) != composite) {
      ver.join_recovers_composite = false;
      ver.detail = "join differs from composite at element " + b.id(x);
      break;
    }
  }
  FiniteJoinSemilattice b_semi = as_join_semilattice(b);
  ver.mu0_monotone = is_monotone(b_semi, s, out.mu0);
  ver.mu1_monotone = is_monotone(b_semi, s, out.mu1);
  ver.mu0_bounded = s.leq(out.mu0[b.top()], alpha[conc_l.index_of(psi0)]);
  ver.mu1_bounded = s.leq(out.mu1[b.top()], alpha[conc_l.index_of(psi1)]);
  return out;
}

namespace {

// Enumerates lattice homomorphisms k -> l in lexicographic order of the
// value vector, invoking fn on each; fn returns true to stop.
template <typename Fn>
bool for_each_lattice_hom(const FiniteLattice& k, const FiniteLattice& l,
                          Fn&& fn, std::uint64_t& counter) {
  std::vector<int> map(k.size(), 0);
  while (true) {
    if (!check_lattice_hom(k, l, map)) {
      ++counter;
      if (fn(map)) return true;
    }
    int i = k.size() - 1;
    while (i >= 0 && map[i] == l.size() - 1) map[i--] = 0;
    if (i < 0) return false;
    ++map[i];
  }
}

}  // namespace

LiftOutcome brute_force_lift(const FiniteLattice& k,
                             const FiniteJoinSemilattice& s,
                             std::span<const int> phi, int max_size,
                             const Deadline& deadline) {
  if (k.size() > 5 || s.size() > 5)
    throw BudgetError("brute_force_lift: inputs larger than the supported 5");
  if (max_size < 1 || max_size > 5)
    throw BudgetError("brute_force_lift: max_size must be in 1..5");
  ConcSemilattice conc_k = conc(k);
  JoinHom phi_hom{conc_k.semilattice, s, std::vector<int>(phi.begin(), phi.end())};
  if (auto err = check_join_hom(phi_hom))
    throw DomainError("brute_force_lift: phi is not a join-hom: " + *err);

  LiftOutcome outcome;
  for (int size = 1; size <= max_size; ++size) {
    outcome.max_size_searched = size;
    for (const FiniteLattice& cand : enumerate_lattices(size)) {
      deadline.check("brute_force_lift");
      ++outcome.lattices_examined;
      ConcSemilattice conc_l = conc(cand);
      if (static_cast<int>(conc_l.congruences.size()) != s.size()) continue;

      // Candidate isomorphisms conc(cand) -> s: bijective join-homs. The
      // inverse of a bijective join-hom is again one, so bijectivity plus
      // the hom check suffices.
      std::vector<int> perm(s.size());
      std::iota(perm.begin(), perm.end(), 0);
      std::vector<std::vector<int>> isos;
      do {
        JoinHom cand_iso{conc_l.semilattice, s,
                         std::vector<int>(perm.begin(), perm.end())};
        if (!check_join_hom(cand_iso)) isos.push_back(cand_iso.map);
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (isos.empty()) continue;

      std::optional<LiftWitness> found;
      for_each_lattice_hom(
          k, cand,
          [&](const std::vector<int>& f) {
            // Conc f on the congruences of k.
            std::vector<int> conc_f;
            conc_f.reserve(conc_k.congruences.size());
            for (const Congruence& a : conc_k.congruences) {
              std::vector<std::pair<int, int>> pairs;
              for (int x = 0; x < k.size(); ++x)
                for (int y = x + 1; y < k.size(); ++y)
                  if (a.same(x, y)) pairs.emplace_back(f[x], f[y]);
              conc_f.push_back(
                  conc_l.index_of(generated_congruence(cand, pairs)));
            }
            for (const auto& alpha : isos) {
              bool match = true;
              for (std::size_t i = 0; i < conc_f.size(); ++i)
                if (alpha[conc_f[i]] != phi[i]) {
                  match = false;
                  break;
                }
              if (match) {
                found = LiftWitness{cand, f, conc_l, alpha};
                return true;
              }
            }
            return false;
          },
          outcome.homs_examined);
      if (found) {
        outcome.witness = std::move(found);
        return outcome;
      }
    }
  }
  return outcome;
}

}  // namespace conlat
