#ifndef CONLAT_PRESENTATION_HPP
#define CONLAT_PRESENTATION_HPP

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "conlat/errors.hpp"
#include "conlat/term.hpp"

namespace conlat {

// A Boolean algebra presented by three generator families -- u0.*, u1.* and
// v.* -- and inequational relations of the fixed shape g ^ h <= v between
// generators. Elements are compared through the relation-satisfying
// two-valued valuations; no canonical forms are computed.
class Presentation {
 public:
  Presentation(int u0_count, int u1_count, int v_count,
               std::vector<std::array<int, 3>> relations);

  int u0_count() const { return u0_count_; }
  int u1_count() const { return u1_count_; }
  int v_count() const { return v_count_; }
  int generator_count() const { return u0_count_ + u1_count_ + v_count_; }

  // Global generator indices of the family members.
  int u0(int i) const;
  int u1(int i) const;
  int v(int k) const;

  const std::string& generator_name(int g) const { return names_[g]; }
  int generator_index(std::string_view name) const;  // throws DomainError

  // Relations (g, h, v) meaning g ^ h <= v, as global generator indices.
  std::span<const std::array<int, 3>> relations() const { return relations_; }

 private:
  int u0_count_, u1_count_, v_count_;
  std::vector<std::array<int, 3>> relations_;
  std::vector<std::string> names_;
};

// Total assignment of bits to the presentation's generators, in generator
// order.
struct Valuation {
  std::vector<std::uint8_t> bits;

  bool operator==(const Valuation&) const = default;
};

bool eval_term(const Term& t, const Valuation& val);

// val(g) ^ val(h) <= val(v) for every relation.
bool satisfies_relations(const Presentation& p, const Valuation& val);

struct EntailResult {
  bool holds = false;
  // When the entailment fails: a relation-satisfying valuation with s = 1
  // and t = 0, re-checked before being returned.
  std::optional<Valuation> certificate;
};

// Decides s <= t in the presented algebra: true iff every
// relation-satisfying valuation making s true makes t true. The search
// branches only on generators appearing in s and t (in generator order,
// zeros first) and uses the relations as definite Horn clauses to prune and
// to extend a consistent branch to a total valuation. Throws BudgetError
// when the presentation exceeds `generator_cap`.
EntailResult entails(const Presentation& p, const TermPtr& s, const TermPtr& t,
                     int generator_cap = 40);

// x lies in the ideal generated by `gens` iff x <= join of gens (the ideal
// generated by finitely many elements is principal on their join).
bool in_ideal(const Presentation& p, const TermPtr& x, std::span<const int> gens,
              int generator_cap = 40);

// All relation-satisfying valuations, in lexicographic order of the bit
// tuples (generator order). The presented algebra is isomorphic to the
// powerset of this list. Throws BudgetError above `cap` generators.
std::vector<Valuation> enumerate_atoms(const Presentation& p, int cap = 20);

// S-expression term syntax: `0`, `1`, generator tokens such as `u0.3`,
// `(not t)`, `(and t t ...)`, `(or t t ...)`. Errors carry the byte offset.
TermPtr parse_term(std::string_view text, const Presentation& p);

std::string term_to_string(const Term& t, const Presentation& p);

}  // namespace conlat

#endif  // CONLAT_PRESENTATION_HPP
