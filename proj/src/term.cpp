#include "conlat/term.hpp"

#include <algorithm>

namespace conlat {

namespace {

TermPtr make(Term::Kind kind, int gen, TermPtr lhs, TermPtr rhs) {
  auto t = std::make_shared<Term>();
  t->kind = kind;
  t->gen = gen;
  t->lhs = std::move(lhs);
  t->rhs = std::move(rhs);
  return t;
}

void collect(const Term& t, std::vector<int>& out) {
  switch (t.kind) {
    case Term::Kind::zero:
    case Term::Kind::one:
      return;
    case Term::Kind::gen:
      out.push_back(t.gen);
      return;
    case Term::Kind::neg:
      collect(*t.lhs, out);
      return;
    case Term::Kind::conj:
    case Term::Kind::disj:
      collect(*t.lhs, out);
      collect(*t.rhs, out);
      return;
  }
}

}  // namespace

TermPtr t_zero() {
  static const TermPtr instance = make(Term::Kind::zero, -1, nullptr, nullptr);
  return instance;
}

TermPtr t_one() {
  static const TermPtr instance = make(Term::Kind::one, -1, nullptr, nullptr);
  return instance;
}

TermPtr t_gen(int gen) { return make(Term::Kind::gen, gen, nullptr, nullptr); }

TermPtr t_not(TermPtr t) {
  return make(Term::Kind::neg, -1, std::move(t), nullptr);
}

TermPtr t_and(TermPtr a, TermPtr b) {
  return make(Term::Kind::conj, -1, std::move(a), std::move(b));
}

TermPtr t_or(TermPtr a, TermPtr b) {
  return make(Term::Kind::disj, -1, std::move(a), std::move(b));
}

TermPtr t_or_gens(std::span<const int> gens) {
  if (gens.empty()) return t_zero();
  TermPtr acc = t_gen(gens[0]);
  for (std::size_t i = 1; i < gens.size(); ++i) acc = t_or(acc, t_gen(gens[i]));
  return acc;
}

std::vector<int> term_generators(const Term& t) {
  std::vector<int> out;
  collect(t, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace conlat
