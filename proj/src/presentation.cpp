#include "conlat/presentation.hpp"

#include <algorithm>
#include <set>

namespace conlat {

Presentation::Presentation(int u0_count, int u1_count, int v_count,
                           std::vector<std::array<int, 3>> relations)
    : u0_count_(u0_count),
      u1_count_(u1_count),
      v_count_(v_count),
      relations_(std::move(relations)) {
  if (u0_count_ < 0 || u1_count_ < 0 || v_count_ < 0)
    throw DomainError("presentation: negative family size");
  const int n = generator_count();
  names_.reserve(n);
  for (int i = 0; i < u0_count_; ++i) names_.push_back("u0." + std::to_string(i));
  for (int i = 0; i < u1_count_; ++i) names_.push_back("u1." + std::to_string(i));
  for (int k = 0; k < v_count_; ++k) names_.push_back("v." + std::to_string(k));

  std::set<std::array<int, 3>> seen;
  for (const auto& rel : relations_) {
    for (int g : rel)
      if (g < 0 || g >= n)
        throw DomainError("presentation: relation names an undeclared generator");
    if (!seen.insert(rel).second)
      throw DomainError("presentation: duplicate relation");
  }
}

int Presentation::u0(int i) const {
  if (i < 0 || i >= u0_count_) throw DomainError("u0 index out of range");
  return i;
}

int Presentation::u1(int i) const {
  if (i < 0 || i >= u1_count_) throw DomainError("u1 index out of range");
  return u0_count_ + i;
}

int Presentation::v(int k) const {
  if (k < 0 || k >= v_count_) throw DomainError("v index out of range");
  return u0_count_ + u1_count_ + k;
}

int Presentation::generator_index(std::string_view name) const {
  for (int g = 0; g < generator_count(); ++g)
    if (names_[g] == name) return g;
  throw DomainError("undeclared generator '" + std::string(name) + "'");
}

bool eval_term(const Term& t, const Valuation& val) {
  switch (t.kind) {
    case Term::Kind::zero:
      return false;
    case Term::Kind::one:
      return true;
    case Term::Kind::gen:
      if (t.gen < 0 || t.gen >= static_cast<int>(val.bits.size()))
        throw DomainError("eval: undeclared generator index " +
                          std::to_string(t.gen));
      return val.bits[t.gen] != 0;
    case Term::Kind::neg:
      return !eval_term(*t.lhs, val);
    case Term::Kind::conj:
      return eval_term(*t.lhs, val) && eval_term(*t.rhs, val);
    case Term::Kind::disj:
      return eval_term(*t.lhs, val) || eval_term(*t.rhs, val);
  }
  return false;
}

bool satisfies_relations(const Presentation& p, const Valuation& val) {
  for (const auto& [g, h, v] : p.relations())
    if (val.bits[g] && val.bits[h] && !val.bits[v]) return false;
  return true;
}

namespace {

// Three-valued evaluation under a partial assignment: -1 unknown, else 0/1.
int eval3(const Term& t, const std::vector<signed char>& state) {
  switch (t.kind) {
    case Term::Kind::zero:
      return 0;
    case Term::Kind::one:
      return 1;
    case Term::Kind::gen:
      if (t.gen < 0 || t.gen >= static_cast<int>(state.size()))
        throw DomainError("eval: undeclared generator index " +
                          std::to_string(t.gen));
      return state[t.gen];
    case Term::Kind::neg: {
      int v = eval3(*t.lhs, state);
      return v < 0 ? -1 : 1 - v;
    }
    case Term::Kind::conj: {
      int a = eval3(*t.lhs, state);
      if (a == 0) return 0;
      int b = eval3(*t.rhs, state);
      if (b == 0) return 0;
      return (a == 1 && b == 1) ? 1 : -1;
    }
    case Term::Kind::disj: {
      int a = eval3(*t.lhs, state);
      if (a == 1) return 1;
      int b = eval3(*t.rhs, state);
      if (b == 1) return 1;
      return (a == 0 && b == 0) ? 0 : -1;
    }
  }
  return -1;
}

// Least model of the relations above the positively assigned generators.
// Returns false when the closure forces a generator that is assigned 0.
bool horn_closure(const Presentation& p, const std::vector<signed char>& state,
                  std::vector<std::uint8_t>& closure) {
  std::fill(closure.begin(), closure.end(), 0);
  for (std::size_t g = 0; g < state.size(); ++g)
    if (state[g] == 1) closure[g] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [g, h, v] : p.relations())
      if (closure[g] && closure[h] && !closure[v]) {
        closure[v] = 1;
        changed = true;
      }
  }
  for (std::size_t g = 0; g < state.size(); ++g)
    if (closure[g] && state[g] == 0) return false;
  return true;
}

struct EntailSearch {
  const Presentation& p;
  const Term& s;
  const Term& t;
  std::vector<int> branch_vars;
  std::vector<signed char> state;
  std::vector<std::uint8_t> closure;

  // Depth-first over the branch variables, zeros first; returns a
  // separating valuation if one exists.
  std::optional<Valuation> search(std::size_t depth) {
    int sv = eval3(s, state);
    if (sv == 0) return std::nullopt;
    int tv = eval3(t, state);
    if (tv == 1) return std::nullopt;
    if (!horn_closure(p, state, closure)) return std::nullopt;

    if (depth == branch_vars.size()) {
      if (sv != 1 || tv != 0) return std::nullopt;
      Valuation val;
      val.bits.assign(closure.begin(), closure.end());
      return val;
    }
    const int g = branch_vars[depth];
    for (signed char bit : {static_cast<signed char>(0), static_cast<signed char>(1)}) {
      state[g] = bit;
      if (auto found = search(depth + 1)) return found;
    }
    state[g] = -1;
    return std::nullopt;
  }
};

}  // namespace

EntailResult entails(const Presentation& p, const TermPtr& s, const TermPtr& t,
                     int generator_cap) {
  if (p.generator_count() > generator_cap)
    throw BudgetError("entails: presentation has " +
                      std::to_string(p.generator_count()) +
                      " generators, above the cap of " +
                      std::to_string(generator_cap) +
                      "; refusing rather than approximating");
  const int n = p.generator_count();
  EntailSearch search{p, *s, *t, {}, {}, {}};
  // Validate generators up front so errors surface as domain errors.
  std::vector<int> vars = term_generators(*s);
  for (int g : term_generators(*t)) vars.push_back(g);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  for (int g : vars)
    if (g < 0 || g >= n)
      throw DomainError("entails: term names undeclared generator index " +
                        std::to_string(g));
  search.branch_vars = std::move(vars);
  search.state.assign(n, -1);
  search.closure.assign(n, 0);

  EntailResult result;
  if (auto separating = search.search(0)) {
    // Re-check the certificate before returning it.
    if (!satisfies_relations(p, *separating) || !eval_term(*s, *separating) ||
        eval_term(*t, *separating))
      throw DomainError("entails: internal error, certificate failed re-check");
    result.holds = false;
    result.certificate = std::move(separating);
  } else {
    result.holds = true;
  }
  return result;
}

bool in_ideal(const Presentation& p, const TermPtr& x, std::span<const int> gens,
              int generator_cap) {
  for (int g : gens)
    if (g < 0 || g >= p.generator_count())
      throw DomainError("in_ideal: undeclared generator index " +
                        std::to_string(g));
  return entails(p, x, t_or_gens(gens), generator_cap).holds;
}

std::vector<Valuation> enumerate_atoms(const Presentation& p, int cap) {
  const int n = p.generator_count();
  if (n > cap)
    throw BudgetError("enumerate_atoms: " + std::to_string(n) +
                      " generators exceed the cap of " + std::to_string(cap));
  std::vector<Valuation> out;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    Valuation val;
    val.bits.resize(n);
    for (int g = 0; g < n; ++g)
      val.bits[g] = static_cast<std::uint8_t>((x >> (n - 1 - g)) & 1);
    if (satisfies_relations(p, val)) out.push_back(std::move(val));
  }
  return out;
}

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  const Presentation& p;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' ||
                                 text[pos] == '\n' || text[pos] == '\r'))
      ++pos;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw SchemaError("term parse error at offset " + std::to_string(pos) +
                      ": " + what);
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  std::string_view next_token() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    if (text[pos] == '(' || text[pos] == ')') return text.substr(pos++, 1);
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != '(' && text[pos] != ')' &&
           text[pos] != ' ' && text[pos] != '\t' && text[pos] != '\n' &&
           text[pos] != '\r')
      ++pos;
    return text.substr(start, pos - start);
  }

  std::string_view peek_token() {
    std::size_t saved = pos;
    std::string_view tok = next_token();
    pos = saved;
    return tok;
  }

  TermPtr parse() {
    std::string_view tok = next_token();
    if (tok == ")") fail("unexpected ')'");
    if (tok != "(") return atom(tok);

    std::size_t head_pos = pos;
    std::string_view head = next_token();
    std::vector<TermPtr> args;
    while (true) {
      if (at_end()) fail("missing ')'");
      if (peek_token() == ")") {
        next_token();
        break;
      }
      args.push_back(parse());
    }
    if (head == "not") {
      if (args.size() != 1) {
        pos = head_pos;
        fail("'not' takes exactly one argument");
      }
      return t_not(args[0]);
    }
    if (head == "and" || head == "or") {
      if (args.size() < 2) {
        pos = head_pos;
        fail("'" + std::string(head) + "' takes at least two arguments");
      }
      TermPtr acc = args[0];
      for (std::size_t i = 1; i < args.size(); ++i)
        acc = head == "and" ? t_and(acc, args[i]) : t_or(acc, args[i]);
      return acc;
    }
    pos = head_pos;
    fail("unknown operator '" + std::string(head) + "'");
  }

  TermPtr atom(std::string_view tok) {
    if (tok == "0") return t_zero();
    if (tok == "1") return t_one();
    for (int g = 0; g < p.generator_count(); ++g)
      if (p.generator_name(g) == tok) return t_gen(g);
    pos -= tok.size();
    fail("undeclared generator '" + std::string(tok) + "'");
  }
};

}  // namespace

TermPtr parse_term(std::string_view text, const Presentation& p) {
  Parser parser{text, 0, p};
  TermPtr t = parser.parse();
  if (!parser.at_end()) parser.fail("trailing input after term");
  return t;
}

std::string term_to_string(const Term& t, const Presentation& p) {
  switch (t.kind) {
    case Term::Kind::zero:
      return "0";
    case Term::Kind::one:
      return "1";
    case Term::Kind::gen:
      return p.generator_name(t.gen);
    case Term::Kind::neg:
      return "(not " + term_to_string(*t.lhs, p) + ")";
    case Term::Kind::conj:
      return "(and " + term_to_string(*t.lhs, p) + " " +
             term_to_string(*t.rhs, p) + ")";
    case Term::Kind::disj:
      return "(or " + term_to_string(*t.lhs, p) + " " +
             term_to_string(*t.rhs, p) + ")";
  }
  return "?";
}

}  // namespace conlat
