#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "ctrc/search.hpp"
#include "ctrc/term.hpp"
#include "ctrc/xi.hpp"

namespace ctrc {

struct CsStep {
  Term target;
  unsigned cost;
  std::string rule;
  Position position;
};

// Context-sensitive rewriting with cost-tagged rules. Any rule list over a
// signature with a replacement map can be used, not only output of transform.
class CsEngine {
 public:
  explicit CsEngine(const TransformedTrs& trs, SearchBudget budget = {});
  CsEngine(const TransformedTrs& trs, ReplacementMap mu, SearchBudget budget = {});

  std::vector<CsStep> steps(const Term& t) const;
  Cost derivation_height(const Term& t);
  // Normal forms reachable from t; incomplete when the state budget ran out.
  Bounded<Term> normal_forms(const Term& t) const;

  const ReplacementMap& mu() const { return mu_; }

 private:
  const TransformedTrs& trs_;
  ReplacementMap mu_;
  SearchBudget budget_;
  std::vector<std::vector<std::size_t>> by_root_;
  std::unordered_map<Term, std::uint64_t, TermHash> longest_;
};

}  // namespace ctrc
