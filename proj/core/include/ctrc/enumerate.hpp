#pragma once

#include <cstddef>
#include <vector>

#include "ctrc/cctrs.hpp"
#include "ctrc/term.hpp"

namespace ctrc {

struct SymbolVariant {
  SymbolId symbol;
  std::size_t arity;
  LabelSet label = kUnlabeled;
};

// by_size[k] holds every ground term of exactly k symbol occurrences.
std::vector<std::vector<Term>> enumerate_by_size(const std::vector<SymbolVariant>& variants,
                                                 std::size_t max_size);

std::vector<SymbolVariant> plain_variants(const Cctrs& system);
std::vector<SymbolVariant> constructor_variants(const Cctrs& system);
// Defined symbols with every subset of their rules as label.
std::vector<SymbolVariant> labeled_variants(const Cctrs& system);

// Ground terms with 1 <= |t| <= max_size, in size order.
std::vector<Term> ground_terms(const std::vector<SymbolVariant>& variants, std::size_t max_size);
std::vector<Term> ground_basic_terms(const Cctrs& system, std::size_t max_size);

}  // namespace ctrc
