#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ctrc/search.hpp"
#include "ctrc/term.hpp"

namespace ctrc {

namespace syntax {
struct RawTerm;
}

struct RawRule {
  std::shared_ptr<const syntax::RawTerm> lhs;
  std::shared_ptr<const syntax::RawTerm> rhs;
  std::vector<std::pair<std::shared_ptr<const syntax::RawTerm>, std::shared_ptr<const syntax::RawTerm>>>
      conditions;
  std::size_t line = 0;
};

struct RawSystem {
  std::vector<std::string> variables;
  std::vector<RawRule> rules;
};

// COPS-style oriented CTRS text: optional (CONDITIONTYPE ORIENTED),
// (VAR ...), (RULES ...); other top-level blocks are skipped.
RawSystem parse_cops(std::string_view text);
RawSystem load_cops(const std::string& path);

enum class ValidationMode { cctrs, strong };

struct Violation {
  std::size_t rule;  // 1-based rule number in file order, 0 for system-wide
  std::string restriction;
  std::string witness;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

struct Condition {
  Term lhs;  // a_i
  Term rhs;  // b_i
};

struct ConditionalRule {
  std::size_t id;     // 1-based, file order
  SymbolId root;
  std::size_t index;  // 1-based position within R|root
  Term lhs;
  Term rhs;
  std::vector<Condition> conditions;
};

ValidationReport validate(const RawSystem& raw, ValidationMode mode);

class Cctrs {
 public:
  // Throws Error(invalid_system) carrying the report text when validation fails.
  static Cctrs build(const RawSystem& raw, ValidationMode mode = ValidationMode::cctrs);
  static Cctrs from_text(std::string_view text, ValidationMode mode = ValidationMode::cctrs);
  static Cctrs from_file(const std::string& path, ValidationMode mode = ValidationMode::cctrs);

  const Signature& signature() const { return signature_; }
  const std::vector<ConditionalRule>& rules() const { return rules_; }
  // Rules of f in order rho_1^f .. rho_m^f.
  const std::vector<std::size_t>& rules_of(SymbolId f) const { return by_symbol_.at(f); }
  const ConditionalRule& rule_of(SymbolId f, std::size_t index) const {
    return rules_[by_symbol_.at(f).at(index - 1)];
  }
  std::size_t rule_count(SymbolId f) const { return signature_[f].rule_count; }

  // True when the system also passes strong validation.
  bool strong() const { return strong_; }
  const ValidationReport& strong_report() const { return strong_report_; }

  std::vector<SymbolId> constructors() const;
  std::vector<SymbolId> defined() const;
  bool is_constructor_term(const Term& t) const;
  bool is_basic(const Term& t) const;

  Term parse_term(std::string_view text) const { return ctrc::parse_term(text, signature_); }
  std::string show(const Term& t) const { return to_string(t, signature_); }
  std::string show(const ConditionalRule& rule) const;

 private:
  Signature signature_;
  std::vector<ConditionalRule> rules_;
  std::vector<std::vector<std::size_t>> by_symbol_;
  bool strong_ = false;
  ValidationReport strong_report_;
};

struct PlainStep {
  Term target;
  std::size_t rule;  // rule id
  Position position;
};

// The unlabeled conditional relation and the quasi-step relation, with
// condition satisfaction decided by bounded breadth-first search.
class ConditionalRewriter {
 public:
  explicit ConditionalRewriter(const Cctrs& system, SearchBudget budget = {});

  Bounded<PlainStep> steps(const Term& s);
  Bounded<Term> quasi_steps(const Term& s);
  // All terms reachable by ->* (including s itself).
  Bounded<Term> reachable(const Term& s);

 private:
  struct Node {
    std::vector<PlainStep> steps;
    std::vector<Term> quasi;
    bool complete = true;
  };
  struct Reach {
    std::vector<Term> terms;
    bool complete = true;
  };

  std::shared_ptr<const Node> node(const Term& s, std::size_t depth);
  std::shared_ptr<const Reach> reach(const Term& s, std::size_t depth);

  const Cctrs& system_;
  SearchBudget budget_;
  std::unordered_map<Term, std::shared_ptr<const Node>, TermHash> nodes_;
  std::unordered_map<Term, std::shared_ptr<const Reach>, TermHash> reaches_;
  std::unordered_set<Term, TermHash> pending_;
};

}  // namespace ctrc
