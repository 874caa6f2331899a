#include "ctrc/enumerate.hpp"

#include <functional>

namespace ctrc {

namespace {

void combine(const std::vector<std::vector<Term>>& by_size, std::size_t arity, std::size_t budget,
             std::vector<Term>& prefix, const std::function<void(const std::vector<Term>&)>& emit) {
  if (prefix.size() == arity) {
    if (budget == 0) emit(prefix);
    return;
  }
  std::size_t remaining = arity - prefix.size() - 1;
  for (std::size_t k = 1; k + remaining <= budget; ++k) {
    if (k >= by_size.size()) break;
    for (const Term& t : by_size[k]) {
      prefix.push_back(t);
      combine(by_size, arity, budget - k, prefix, emit);
      prefix.pop_back();
    }
  }
}

}  // namespace

std::vector<std::vector<Term>> enumerate_by_size(const std::vector<SymbolVariant>& variants,
                                                 std::size_t max_size) {
  std::vector<std::vector<Term>> by_size(max_size + 1);
  for (std::size_t k = 1; k <= max_size; ++k) {
    for (const SymbolVariant& v : variants) {
      if (v.arity == 0) {
        if (k == 1) by_size[k].push_back(Term::apply(v.symbol, {}, v.label));
        continue;
      }
      if (k < v.arity + 1) continue;
      std::vector<Term> prefix;
      combine(by_size, v.arity, k - 1, prefix, [&](const std::vector<Term>& args) {
        by_size[k].push_back(Term::apply(v.symbol, args, v.label));
      });
    }
  }
  return by_size;
}

std::vector<SymbolVariant> plain_variants(const Cctrs& system) {
  std::vector<SymbolVariant> out;
  const Signature& sig = system.signature();
  for (SymbolId f = 0; f < sig.size(); ++f) out.push_back({f, sig[f].arity, kUnlabeled});
  return out;
}

std::vector<SymbolVariant> constructor_variants(const Cctrs& system) {
  std::vector<SymbolVariant> out;
  const Signature& sig = system.signature();
  for (SymbolId f : system.constructors()) out.push_back({f, sig[f].arity, kUnlabeled});
  return out;
}

std::vector<SymbolVariant> labeled_variants(const Cctrs& system) {
  std::vector<SymbolVariant> out;
  const Signature& sig = system.signature();
  for (SymbolId f = 0; f < sig.size(); ++f) {
    if (!sig.is_defined(f)) {
      out.push_back({f, sig[f].arity, kUnlabeled});
      continue;
    }
    LabelSet full = full_label(sig[f].rule_count);
    for (LabelSet l = 0; l <= full; ++l) out.push_back({f, sig[f].arity, l});
  }
  return out;
}

std::vector<Term> ground_terms(const std::vector<SymbolVariant>& variants, std::size_t max_size) {
  std::vector<Term> out;
  auto by_size = enumerate_by_size(variants, max_size);
  for (auto& level : by_size) out.insert(out.end(), level.begin(), level.end());
  return out;
}

std::vector<Term> ground_basic_terms(const Cctrs& system, std::size_t max_size) {
  std::vector<Term> out;
  if (max_size == 0) return out;
  auto values = enumerate_by_size(constructor_variants(system), max_size - 1);
  const Signature& sig = system.signature();
  for (std::size_t k = 1; k <= max_size; ++k) {
    for (SymbolId f : system.defined()) {
      std::size_t arity = sig[f].arity;
      if (arity == 0) {
        if (k == 1) out.push_back(Term::apply(f));
        continue;
      }
      if (k < arity + 1) continue;
      std::vector<Term> prefix;
      combine(values, arity, k - 1, prefix,
              [&](const std::vector<Term>& args) { out.push_back(Term::apply(f, args)); });
    }
  }
  return out;
}

}  // namespace ctrc
