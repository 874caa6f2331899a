#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "ctrc/cctrs.hpp"
#include "ctrc/term.hpp"

namespace ctrc {

// Active argument indices (1-based, sorted) per symbol id.
using ReplacementMap = std::vector<std::vector<std::size_t>>;

bool is_active(const ReplacementMap& mu, SymbolId f, std::size_t arg);
std::vector<Position> active_positions(const Term& t, const ReplacementMap& mu);

struct XiRule {
  std::string id;  // kind_rule[.j[.k]]
  int kind;        // 1..6
  std::size_t origin;
  std::size_t condition = 0;  // j for kinds 4 and 5, argument index for kind 6
  Term lhs;
  Term rhs;
  unsigned cost;
};

enum class ApMode { full, var };
enum class Star { top, bot };

// The transformed signature keeps the ids of the original symbols (defined
// symbols widened by m_f flag arguments) and appends top, bot and f#i#j.
struct TransformedTrs {
  Signature signature;
  ReplacementMap mu;
  std::vector<XiRule> rules;
  SymbolId top = 0;
  SymbolId bot = 0;
  std::map<std::tuple<SymbolId, std::size_t, std::size_t>, SymbolId> progress;

  // Arity of f in the original signature.
  std::size_t base_arity(SymbolId f) const;
  SymbolId progress_symbol(SymbolId f, std::size_t i, std::size_t j) const;
  std::string show(const Term& t) const { return to_string(t, signature); }
  std::string show(const XiRule& rule) const;
};

TransformedTrs transform(const Cctrs& system, ApMode mode = ApMode::full);

Term xi(const Term& t, const TransformedTrs& h, Star star);

// Fresh variables are drawn from names in enumeration order.
std::vector<Term> anti_patterns(const Term& t, const TransformedTrs& h, FreshNames& names);
std::vector<Term> anti_patterns(const Term& t, const TransformedTrs& h);

struct HTermClass {
  bool proper = false;
  bool bottom_pattern = false;
  bool top_term = false;
};

HTermClass classify(const Term& t, const TransformedTrs& h);
Term zeta(const Term& t, const TransformedTrs& h);
// Throws Error(not_proper) unless classify(t).proper.
Term zeta_inverse(const Term& t, const TransformedTrs& h);

enum class TpdbStyle { context_sensitive, plain };
std::string to_tpdb(const TransformedTrs& h, TpdbStyle style = TpdbStyle::context_sensitive);

}  // namespace ctrc
