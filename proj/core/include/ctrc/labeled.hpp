#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ctrc/cctrs.hpp"
#include "ctrc/search.hpp"
#include "ctrc/term.hpp"

namespace ctrc {

Term label(const Term& t, const Cctrs& system);
Term erase(const Term& t);
std::size_t label_weight(const Term& t);
bool is_labeled_normal_form(const Term& t, const Signature& sig);

struct Generalization {
  Term pattern;  // linear labeled normal form
  Substitution binding;
};

// Replaces every maximal subterm whose root is a defined symbol with a
// non-empty label by a fresh variable drawn from names.
Generalization lnf_generalization(const Term& t, const Signature& sig, FreshNames& names);
Generalization lnf_generalization(const Term& t, const Signature& sig);

enum class StepKind { bot, success, fail };
const char* to_string(StepKind kind);

struct ConditionWitness {
  std::size_t condition;  // 1-based
  Term start;             // label(a_i)sigma
  Term reached;           // the term reached by the sub-reduction
  std::uint64_t cost;
};

struct LabeledStep {
  Term source;
  Term target;
  StepKind kind;
  Position position;
  std::size_t rule;  // rule id
  std::uint64_t cost;
  std::vector<ConditionWitness> witnesses;
};

enum class Verdict { complete, diverges, budget_exceeded };

struct StepSet {
  std::vector<LabeledStep> steps;
  Verdict verdict = Verdict::complete;
};

struct QuasiSet {
  std::vector<Term> targets;
  Verdict verdict = Verdict::complete;
};

struct ReachSet {
  // Every term t with s ⇁* t, paired with the largest cost of such a reduction.
  std::vector<std::pair<Term, std::uint64_t>> terms;
  Verdict verdict = Verdict::complete;
};

// Exhaustive complexity-conscious reduction over ground labeled terms.
// Memo tables live in the engine; reusing one engine for many queries on
// the same system is safe and saves work.
class LabeledEngine {
 public:
  explicit LabeledEngine(const Cctrs& system, SearchBudget budget = {});

  StepSet steps(const Term& s);
  QuasiSet quasi_steps(const Term& s);
  ReachSet reachable(const Term& s);
  Cost derivation_height(const Term& s);

  const Cctrs& system() const { return system_; }
  const SearchBudget& budget() const { return budget_; }

 private:
  struct NodeInfo {
    std::vector<LabeledStep> steps;
    std::vector<Term> quasi;
  };
  using Reach = std::vector<std::pair<Term, std::uint64_t>>;
  struct Diverges {};
  struct OutOfBudget {};

  std::shared_ptr<const NodeInfo> node(const Term& u);
  std::shared_ptr<const NodeInfo> compute(const Term& u);
  std::shared_ptr<const Reach> reach(const Term& t);
  std::uint64_t longest(const Term& s);
  [[noreturn]] void diverge();
  void activate(const Term& t);
  void deactivate(const Term& t);
  void begin_query();
  void require_ground(const Term& s) const;

  const Cctrs& system_;
  SearchBudget budget_;
  std::vector<Term> labeled_rhs_;
  std::vector<std::vector<Term>> labeled_conditions_;

  std::unordered_map<Term, std::shared_ptr<const NodeInfo>, TermHash> nodes_;
  std::unordered_map<Term, std::shared_ptr<const Reach>, TermHash> reaches_;
  std::unordered_map<Term, std::uint64_t, TermHash> longest_;
  std::unordered_set<Term, TermHash> diverging_;

  std::vector<Term> active_;
  std::unordered_set<Term, TermHash> active_set_;
  std::size_t states_ = 0;
  std::size_t depth_ = 0;
  std::uint64_t best_ = 0;
};

enum class ComplexityMode { cdc, crc };

// max dh(label(t)) over ground t with |t| <= n (basic t for crc).
Cost conditional_complexity(const Cctrs& system, std::size_t n, ComplexityMode mode,
                            SearchBudget budget = {});
Cost conditional_complexity(LabeledEngine& engine, std::size_t n, ComplexityMode mode);

}  // namespace ctrc
