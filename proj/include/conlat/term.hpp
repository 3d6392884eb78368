#ifndef CONLAT_TERM_HPP
#define CONLAT_TERM_HPP

#include <memory>
#include <span>
#include <vector>

namespace conlat {

// Boolean term over named generators. Terms are immutable trees shared via
// pointers; generators are stored as indices into the ambient presentation's
// generator list.
struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind : unsigned char { zero, one, gen, neg, conj, disj };

  Kind kind;
  int gen = -1;      // for Kind::gen
  TermPtr lhs, rhs;  // rhs unused for neg
};

TermPtr t_zero();
TermPtr t_one();
TermPtr t_gen(int gen);
TermPtr t_not(TermPtr t);
TermPtr t_and(TermPtr a, TermPtr b);
TermPtr t_or(TermPtr a, TermPtr b);

// Join of several generators; the empty span gives the zero term.
TermPtr t_or_gens(std::span<const int> gens);

// Sorted, duplicate-free generator indices appearing in t.
std::vector<int> term_generators(const Term& t);

}  // namespace conlat

#endif  // CONLAT_TERM_HPP
