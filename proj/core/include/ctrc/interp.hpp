#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctrc/arith.hpp"
#include "ctrc/cctrs.hpp"
#include "ctrc/labeled.hpp"
#include "ctrc/term.hpp"
#include "ctrc/xi.hpp"

namespace ctrc {

enum class Recipe { direct, a, b, c };
const char* to_string(Recipe recipe);
// Accepts A, B, C and direct (case-insensitive).
Recipe parse_recipe(std::string_view text);

enum class EntryKind { direct, fun, cond, size, cost, csize, ccost };

struct InterpEntry {
  EntryKind kind;
  std::string symbol;
  std::size_t i = 0;  // FUN/COST index, or rule index for COND/CSIZE/CCOST
  std::size_t j = 0;  // condition index
  std::vector<std::string> params;
  ArithExpr expr;
  std::string text;
  std::size_t line = 0;
};

struct InterpretationFile {
  std::vector<InterpEntry> entries;
  // MAP lines: 1-based argument indices per symbol name.
  std::map<std::string, std::vector<std::size_t>> usable;
};

InterpretationFile parse_interpretation(std::string_view text);
InterpretationFile load_interpretation(const std::string& path);
Recipe infer_recipe(const InterpretationFile& file);

struct Value {
  std::uint64_t cost = 0;
  std::uint64_t size = 0;
  friend bool operator==(const Value&, const Value&) = default;
  friend auto operator<=>(const Value&, const Value&) = default;
};

enum class Domain { nat, pair };

using Valuation = std::map<std::string, Value>;

// An interpretation of every symbol of a transformed signature. Over the
// naturals only cost is used; over pairs each symbol of arity K has a cost
// and a size expression over c1..cK, s1..sK (references 0..2K-1).
struct Interpretation {
  Recipe recipe = Recipe::direct;
  Domain domain = Domain::nat;
  std::vector<ArithExpr> cost;
  std::vector<ArithExpr> size;
  // Set for recipes B and C when the file has MAP lines; indexed by the
  // symbol ids of the original signature.
  std::optional<ReplacementMap> usable;

  Value apply(SymbolId f, std::span<const Value> args) const;
  Value eval(const Term& t, const Valuation& alpha) const;
  bool greater(const Value& a, const Value& b) const;
  bool greater_equal(const Value& a, const Value& b) const;
  std::string show(const Value& v) const;
  std::string show_symbol(SymbolId f, const TransformedTrs& h) const;
};

Interpretation build(const InterpretationFile& file, const Cctrs& system, const TransformedTrs& h,
                     std::optional<Recipe> recipe = std::nullopt);

enum class Orientation { strict, weak, violated };
const char* to_string(Orientation o);

struct RuleVerdict {
  std::string id;
  unsigned cost = 0;
  Orientation result = Orientation::strict;
  // First valuation (lexicographic grid order) that breaks the requirement.
  std::optional<Valuation> witness;
};

struct MonotonicityVerdict {
  SymbolId symbol = 0;
  std::size_t arg = 0;  // 1-based
  bool ok = true;
  // On failure: the arguments and the incremented component.
  std::vector<Value> args;
  char component = 'c';
};

struct CheckReport {
  std::size_t grid = 4;
  Domain domain = Domain::nat;
  std::vector<RuleVerdict> rules;
  std::vector<MonotonicityVerdict> monotonicity;
  // False when the file's MAP lines do not form a usable replacement map.
  bool map_usable = true;
  bool pass = true;
  std::string to_string(const Interpretation& interp, const TransformedTrs& h) const;
};

CheckReport check(const Interpretation& interp, const Cctrs& system, const TransformedTrs& h,
                  std::size_t grid = 4);

// Argument positions each symbol must be strictly monotone in under the
// interpretation's recipe.
ReplacementMap monotonicity_obligations(const Interpretation& interp, const Cctrs& system,
                                        const TransformedTrs& h);

// Least usable replacement map; indexed by symbol id of the system.
ReplacementMap derive_usable_map(const Cctrs& system);
bool is_usable(const Cctrs& system, const ReplacementMap& upsilon);
std::string show_map(const ReplacementMap& map, const Signature& sig);

struct BoundOptions {
  ComplexityMode mode = ComplexityMode::crc;
  std::size_t n = 1;
  std::size_t grid = 4;
  // Closed form: every symbol's total J bounded by K * sum + M.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> general;
  std::size_t max_values = 1U << 16;
};

struct BoundResult {
  std::uint64_t bound = 0;
  // Exact maximum of the interpreted cost over the measured terms, when the
  // value sets stayed under the cap.
  std::optional<std::uint64_t> exact;
  std::uint64_t size_factor = 0;  // K of the size abstraction (crc)
  std::string method;
  std::string to_string() const;
};

BoundResult bound(const Interpretation& interp, const Cctrs& system, const TransformedTrs& h,
                  const BoundOptions& options);

}  // namespace ctrc
