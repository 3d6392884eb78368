#ifndef CONLAT_DVALUE_HPP
#define CONLAT_DVALUE_HPP

#include <cstdint>
#include <string>

namespace conlat {

// Element of the join-semilattice D = omega ∪ {a0, a1, inf}: the naturals
// form a chain, a0 and a1 sit incomparably above every natural, and
// a0 v a1 = inf. Values are symbolic; no truncation of the natural chain.
class DValue {
 public:
  enum class Tag : std::uint8_t { nat, a0, a1, top };

  constexpr DValue() = default;  // Nat(0), the zero of D

  static constexpr DValue nat(std::uint32_t n) { return DValue(Tag::nat, n); }
  static constexpr DValue a0() { return DValue(Tag::a0, 0); }
  static constexpr DValue a1() { return DValue(Tag::a1, 0); }
  static constexpr DValue top() { return DValue(Tag::top, 0); }

  constexpr Tag tag() const { return tag_; }
  constexpr bool is_nat() const { return tag_ == Tag::nat; }
  constexpr std::uint32_t nat_value() const { return n_; }

  friend constexpr bool operator==(DValue x, DValue y) {
    return x.tag_ == y.tag_ && (x.tag_ != Tag::nat || x.n_ == y.n_);
  }
  friend constexpr bool operator!=(DValue x, DValue y) { return !(x == y); }

  std::string str() const;

 private:
  constexpr DValue(Tag tag, std::uint32_t n) : tag_(tag), n_(n) {}

  Tag tag_ = Tag::nat;
  std::uint32_t n_ = 0;
};

constexpr bool d_leq(DValue x, DValue y) {
  switch (x.tag()) {
    case DValue::Tag::nat:
      return y.tag() != DValue::Tag::nat || x.nat_value() <= y.nat_value();
    case DValue::Tag::a0:
      return y.tag() == DValue::Tag::a0 || y.tag() == DValue::Tag::top;
    case DValue::Tag::a1:
      return y.tag() == DValue::Tag::a1 || y.tag() == DValue::Tag::top;
    case DValue::Tag::top:
      return y.tag() == DValue::Tag::top;
  }
  return false;
}

// Total: the only incomparable pair is {a0, a1}, whose join is inf.
constexpr DValue d_join(DValue x, DValue y) {
  if (d_leq(x, y)) return y;
  if (d_leq(y, x)) return x;
  return DValue::top();
}

constexpr DValue d_zero() { return DValue::nat(0); }

}  // namespace conlat

#endif  // CONLAT_DVALUE_HPP
