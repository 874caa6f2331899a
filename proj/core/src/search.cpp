#include "ctrc/search.hpp"

#include <algorithm>

namespace ctrc {

std::string Cost::to_string() const {
  switch (kind_) {
    case Kind::infinite:
      return "inf";
    case Kind::at_least:
      return ">=" + std::to_string(value_);
    case Kind::finite:
      break;
  }
  return std::to_string(value_);
}

Cost combine_max(const Cost& a, const Cost& b) {
  if (a.is_infinite() || b.is_infinite()) return Cost::infinite();
  std::uint64_t v = std::max(a.value(), b.value());
  if (a.is_at_least() || b.is_at_least()) return Cost::at_least(v);
  return Cost::finite(v);
}

}  // namespace ctrc
