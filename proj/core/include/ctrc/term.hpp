#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ctrc {

enum class Errc {
  parse,
  unknown_symbol,
  arity,
  invalid_system,
  strong_required,
  not_constructor,
  not_linear,
  not_proper,
  non_ground,
  missing_component,
  unbound_reference,
  no_ground_terms,
  unverified_premise,
  overflow,
  invalid_argument,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

using SymbolId = std::uint32_t;

// Label sets of G-symbols are bit masks over the 1-based rule indices of
// R|f: bit (i - 1) stands for rule i.
using LabelSet = std::uint64_t;
inline constexpr LabelSet kUnlabeled = ~LabelSet{0};
inline constexpr std::size_t kMaxRulesPerSymbol = 63;

inline LabelSet full_label(std::size_t rule_count) {
  return rule_count == 0 ? 0 : (LabelSet{1} << rule_count) - 1;
}
inline bool label_has(LabelSet set, std::size_t rule) {
  return (set >> (rule - 1)) & 1U;
}
inline LabelSet label_without(LabelSet set, std::size_t rule) {
  return set & ~(LabelSet{1} << (rule - 1));
}

enum class SymbolKind { constructor, defined, auxiliary };
enum class AuxRole { none, top, bot, progress };

struct SymbolInfo {
  std::string name;
  std::size_t arity = 0;
  SymbolKind kind = SymbolKind::constructor;
  AuxRole role = AuxRole::none;
  // m_f for defined symbols.
  std::size_t rule_count = 0;
  // Progress symbols f_i^j: base symbol f, rule index i within R|f, condition j.
  SymbolId base = 0;
  std::size_t rule = 0;
  std::size_t condition = 0;
};

class Signature {
 public:
  SymbolId add(SymbolInfo info);
  std::optional<SymbolId> find(std::string_view name) const;
  const SymbolInfo& operator[](SymbolId id) const { return symbols_.at(id); }
  SymbolInfo& at(SymbolId id) { return symbols_.at(id); }
  std::size_t size() const { return symbols_.size(); }
  const std::vector<SymbolInfo>& symbols() const { return symbols_; }

  bool is_defined(SymbolId id) const { return (*this)[id].kind == SymbolKind::defined; }
  bool is_constructor(SymbolId id) const {
    return (*this)[id].kind == SymbolKind::constructor;
  }

 private:
  std::vector<SymbolInfo> symbols_;
  std::unordered_map<std::string, SymbolId> index_;
};

// 1-based argument indices; the empty position is the root.
using Position = std::vector<std::size_t>;
std::string to_string(const Position& p);
bool is_prefix(const Position& prefix, const Position& p);

class Term {
 public:
  Term();

  static Term variable(std::string name);
  static Term apply(SymbolId symbol, std::vector<Term> args = {}, LabelSet label = kUnlabeled);

  bool is_variable() const;
  const std::string& name() const;
  SymbolId symbol() const;
  LabelSet label() const;
  bool is_labeled() const { return !is_variable() && label() != kUnlabeled; }
  const std::vector<Term>& args() const;
  std::size_t arity() const { return args().size(); }
  // 1-based, matching positions.
  const Term& arg(std::size_t i) const { return args().at(i - 1); }

  bool ground() const;
  std::size_t hash() const;
  // Number of function symbol occurrences.
  std::size_t node_count() const;

  const Term& at(const Position& p) const;
  Term replace_at(const Position& p, const Term& replacement) const;
  Term with_label(LabelSet label) const;
  Term with_args(std::vector<Term> args) const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};

std::vector<Position> positions(const Term& t);

using Substitution = std::map<std::string, Term>;

Term substitute(const Term& t, const Substitution& sigma);
bool match_into(const Term& pattern, const Term& subject, Substitution& sigma);
std::optional<Substitution> match(const Term& pattern, const Term& subject);
std::optional<Substitution> unify(const Term& s, const Term& t);

// Distinct variables in order of first occurrence.
std::vector<std::string> variables(const Term& t);
void collect_variables(const Term& t, std::vector<std::string>& out);
bool is_linear(const Term& t);
bool occurs(const std::string& var, const Term& t);

class FreshNames {
 public:
  explicit FreshNames(std::string base = "x") : base_(std::move(base)) {}
  std::string next();
  Term next_variable() { return Term::variable(next()); }

 private:
  std::string base_;
  std::size_t counter_ = 0;
};

// Number of symbol occurrences that are not the auxiliary constant top.
std::size_t term_size(const Term& t, const Signature& sig);

// Labels render as f{1,3}(...) with 1-based rule indices.
std::string to_string(const Term& t, const Signature& sig);

// Terms use the rule-side grammar: ident, ident(args), ident{labels}(args).
// Identifiers naming a symbol of sig become applications; other identifiers
// without arguments become variables.
Term parse_term(std::string_view text, const Signature& sig);

}  // namespace ctrc
