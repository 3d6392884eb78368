#include "conlat/dvalue.hpp"

namespace conlat {

std::string DValue::str() const {
  switch (tag_) {
    case Tag::nat:
      return std::to_string(n_);
    case Tag::a0:
      return "a0";
    case Tag::a1:
      return "a1";
    case Tag::top:
      return "inf";
  }
  return "?";
}

}  // namespace conlat
