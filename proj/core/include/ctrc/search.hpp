#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ctrc {

struct SearchBudget {
  std::size_t max_states = 20000;
  std::size_t max_depth = 12;
};

class Cost {
 public:
  enum class Kind { finite, infinite, at_least };

  static Cost finite(std::uint64_t n) { return Cost(Kind::finite, n); }
  static Cost infinite() { return Cost(Kind::infinite, 0); }
  static Cost at_least(std::uint64_t n) { return Cost(Kind::at_least, n); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_infinite() const { return kind_ == Kind::infinite; }
  bool is_at_least() const { return kind_ == Kind::at_least; }
  std::uint64_t value() const { return value_; }

  // inf, >=n, or n.
  std::string to_string() const;

  friend bool operator==(const Cost& a, const Cost& b) {
    return a.kind_ == b.kind_ && a.value_ == b.value_;
  }

 private:
  Cost(Kind kind, std::uint64_t value) : kind_(kind), value_(value) {}
  Kind kind_;
  std::uint64_t value_;
};

// Worst case of several verdicts: INFINITE dominates, then AT_LEAST, then FINITE.
Cost combine_max(const Cost& a, const Cost& b);

// Result sets of bounded searches; complete is false when the budget cut
// the search short.
template <class T>
struct Bounded {
  std::vector<T> items;
  bool complete = true;
};

}  // namespace ctrc
