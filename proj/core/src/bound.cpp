#include <algorithm>
#include <set>
#include <sstream>

#include "ctrc/interp.hpp"
#include "grid.hpp"

namespace ctrc {

namespace {

constexpr std::size_t kMaxEvaluations = 5'000'000;

struct CapExceeded {};

Value top_value(const Interpretation& interp) {
  return interp.domain == Domain::nat ? Value{1, 0} : Value{0, 1};
}

// Value of xi_top(f(t1..tn)) given the values of the xi_top(ti).
Value apply_top(const Interpretation& interp, const Cctrs& system, SymbolId f,
                const std::vector<Value>& args) {
  std::vector<Value> full = args;
  full.insert(full.end(), system.rule_count(f), top_value(interp));
  return interp.apply(f, full);
}

// Splits total into parts summands of at least 1.
template <class Fn>
void for_each_composition(std::size_t parts, std::size_t total, Fn&& fn) {
  std::vector<std::size_t> sizes(parts, 0);
  auto rec = [&](auto&& self, std::size_t d, std::size_t left) -> void {
    if (d + 1 >= parts) {
      if (parts == 0 ? left == 0 : left >= 1) {
        if (parts > 0) sizes[d] = left;
        fn(static_cast<const std::vector<std::size_t>&>(sizes));
      }
      return;
    }
    for (std::size_t v = 1; v + (parts - d - 1) <= left; ++v) {
      sizes[d] = v;
      self(self, d + 1, left - v);
    }
  };
  rec(rec, 0, total);
}

template <class Fn>
void for_each_bounded_sum(std::size_t dims, std::uint64_t limit, Fn&& fn) {
  std::vector<std::uint64_t> x(dims, 0);
  auto rec = [&](auto&& self, std::size_t d, std::uint64_t left) -> void {
    if (d == dims) {
      fn(static_cast<const std::vector<std::uint64_t>&>(x));
      return;
    }
    for (std::uint64_t v = 0; v <= left; ++v) {
      x[d] = v;
      self(self, d + 1, left - v);
    }
    x[d] = 0;
  };
  rec(rec, 0, limit);
}

// Calls fn with every choice of one value per set.
template <class Fn>
void for_each_product(const std::vector<const std::vector<Value>*>& sets, std::size_t& budget, Fn&& fn) {
  std::vector<Value> pick(sets.size());
  auto rec = [&](auto&& self, std::size_t d) -> void {
    if (d == sets.size()) {
      if (budget == 0) throw CapExceeded{};
      --budget;
      fn(static_cast<const std::vector<Value>&>(pick));
      return;
    }
    for (const Value& v : *sets[d]) {
      pick[d] = v;
      self(self, d + 1);
    }
  };
  rec(rec, 0);
}

std::uint64_t geometric(std::uint64_t k, std::uint64_t m, std::size_t n) {
  std::uint64_t sum = 0, power = 1;
  for (std::size_t i = 0; i < n; ++i) {
    sum = checked_add(sum, power);
    if (i + 1 < n) power = checked_mul(power, k);
  }
  return checked_mul(m, sum);
}

std::string grid_note(std::size_t grid) {
  return "premise sampled on grid {0.." + std::to_string(grid) + "}";
}

BoundResult general_bound(const Interpretation& interp, const Cctrs& system, const BoundOptions& o) {
  if (interp.domain != Domain::nat) {
    throw Error(Errc::invalid_argument, "the closed-form bound needs an interpretation over the naturals");
  }
  auto [k, m] = *o.general;
  const Signature& sig = system.signature();
  for (SymbolId f = 0; f < sig.size(); ++f) {
    std::size_t n = sig[f].arity;
    detail::for_each_point(n, o.grid, [&](const std::vector<std::uint64_t>& x) {
      std::vector<Value> args = detail::to_values(x, Domain::nat);
      std::uint64_t sum = 0;
      for (std::uint64_t v : x) sum += v;
      std::uint64_t value = apply_top(interp, system, f, args).cost;
      std::uint64_t limit = checked_add(checked_mul(k, sum), m);
      if (value > limit) {
        std::ostringstream msg;
        msg << "premise fails at " << sig[f].name << "(";
        for (std::size_t i = 0; i < x.size(); ++i) msg << (i ? "," : "") << x[i];
        msg << "): " << value << " > " << k << "*" << sum << " + " << m;
        throw Error(Errc::unverified_premise, msg.str());
      }
      return true;
    });
  }
  BoundResult r;
  r.bound = geometric(k, m, o.n);
  r.method = "closed form M*(K^0+...+K^(n-1)) with K=" + std::to_string(k) + ", M=" +
             std::to_string(m) + "; " + grid_note(o.grid);
  return r;
}

// Largest excess of a constructor's size over the summed argument sizes.
std::uint64_t constructor_excess(const Interpretation& interp, SymbolId c, std::size_t arity,
                                 std::size_t grid, const Signature& sig) {
  std::uint64_t excess = 0;
  detail::for_each_point(detail::coordinates(arity, interp.domain), grid,
                         [&](const std::vector<std::uint64_t>& point) {
                           std::vector<Value> args = detail::to_values(point, interp.domain);
                           Value v = interp.apply(c, args);
                           std::uint64_t cost_sum = 0, size_sum = 0;
                           for (const Value& a : args) {
                             cost_sum += a.cost;
                             size_sum += a.size;
                           }
                           std::uint64_t grows = interp.domain == Domain::nat ? v.cost : v.size;
                           std::uint64_t base = interp.domain == Domain::nat ? cost_sum : size_sum;
                           if (interp.domain == Domain::pair && v.cost > cost_sum) {
                             throw Error(Errc::unverified_premise,
                                         "constructor " + sig[c].name +
                                             " has a cost above the summed argument costs");
                           }
                           if (grows > base) excess = std::max(excess, grows - base);
                           return true;
                         });
  return excess;
}

std::uint64_t size_factor(const Interpretation& interp, const Cctrs& system, std::size_t grid) {
  const Signature& sig = system.signature();
  std::uint64_t k = 1;
  for (SymbolId c : system.constructors()) {
    std::uint64_t small = constructor_excess(interp, c, sig[c].arity, grid, sig);
    std::uint64_t large = constructor_excess(interp, c, sig[c].arity, 2 * grid, sig);
    if (large > small) {
      throw Error(Errc::unverified_premise,
                  "constructor " + sig[c].name +
                      " is not bounded by the sum of its arguments plus a constant");
    }
    k = std::max(k, small);
  }
  return k;
}

std::uint64_t size_abstracted(const Interpretation& interp, const Cctrs& system, std::size_t n,
                              std::uint64_t k) {
  if (n == 0) return 0;
  const Signature& sig = system.signature();
  std::uint64_t limit = checked_mul(k, n - 1);
  std::uint64_t best = 0;
  for (SymbolId f : system.defined()) {
    std::size_t arity = sig[f].arity;
    if (arity > n - 1) continue;
    for_each_bounded_sum(arity, limit, [&](const std::vector<std::uint64_t>& x) {
      std::vector<Value> args;
      for (std::uint64_t v : x) args.push_back(interp.domain == Domain::nat ? Value{v, 0} : Value{0, v});
      best = std::max(best, apply_top(interp, system, f, args).cost);
    });
  }
  return best;
}

// Values of all ground terms built from symbols, grouped by size.
std::vector<std::vector<Value>> value_sets(const Interpretation& interp, const Cctrs& system,
                                           const std::vector<SymbolId>& symbols, std::size_t max_size,
                                           bool pareto, std::size_t cap, std::size_t& budget) {
  const Signature& sig = system.signature();
  std::vector<std::vector<Value>> by_size(max_size + 1);
  for (std::size_t k = 1; k <= max_size; ++k) {
    std::set<Value> found;
    for (SymbolId f : symbols) {
      std::size_t arity = sig[f].arity;
      for_each_composition(arity, k - 1, [&](const std::vector<std::size_t>& sizes) {
        std::vector<const std::vector<Value>*> sets;
        for (std::size_t s : sizes) sets.push_back(&by_size[s]);
        for_each_product(sets, budget, [&](const std::vector<Value>& args) {
          found.insert(apply_top(interp, system, f, args));
        });
      });
    }
    std::vector<Value> values(found.begin(), found.end());
    if (pareto) {
      std::vector<Value> front;
      std::sort(values.begin(), values.end(),
                [](const Value& a, const Value& b) { return a.cost != b.cost ? a.cost > b.cost : a.size > b.size; });
      for (const Value& v : values) {
        if (front.empty() || v.size > front.back().size) front.push_back(v);
      }
      values = std::move(front);
    }
    if (values.size() > cap) throw CapExceeded{};
    by_size[k] = std::move(values);
  }
  return by_size;
}

std::optional<std::uint64_t> exact_runtime(const Interpretation& interp, const Cctrs& system,
                                           std::size_t n, std::size_t cap) {
  if (n == 0) return 0;
  std::size_t budget = kMaxEvaluations;
  try {
    auto cons = value_sets(interp, system, system.constructors(), n - 1, false, cap, budget);
    const Signature& sig = system.signature();
    std::uint64_t best = 0;
    for (SymbolId f : system.defined()) {
      std::size_t arity = sig[f].arity;
      for (std::size_t total = 0; total + 1 <= n; ++total) {
        for_each_composition(arity, total, [&](const std::vector<std::size_t>& sizes) {
          std::vector<const std::vector<Value>*> sets;
          for (std::size_t s : sizes) sets.push_back(&cons[s]);
          for_each_product(sets, budget, [&](const std::vector<Value>& args) {
            best = std::max(best, apply_top(interp, system, f, args).cost);
          });
        });
      }
    }
    return best;
  } catch (const CapExceeded&) {
    return std::nullopt;
  }
}

void require_weakly_monotone(const Interpretation& interp, const Cctrs& system, std::size_t grid) {
  const Signature& sig = system.signature();
  for (SymbolId f = 0; f < sig.size(); ++f) {
    std::size_t arity = sig[f].arity;
    detail::for_each_point(detail::coordinates(arity, interp.domain), grid,
                           [&](const std::vector<std::uint64_t>& point) {
                             std::vector<Value> args = detail::to_values(point, interp.domain);
                             Value base = apply_top(interp, system, f, args);
                             for (std::size_t a = 0; a < arity; ++a) {
                               for (int component = 0; component < (interp.domain == Domain::nat ? 1 : 2);
                                    ++component) {
                                 std::vector<Value> bumped = args;
                                 ++(component == 0 ? bumped[a].cost : bumped[a].size);
                                 if (!interp.greater_equal(apply_top(interp, system, f, bumped), base)) {
                                   throw Error(Errc::unverified_premise,
                                               sig[f].name + " is not weakly monotone in argument " +
                                                   std::to_string(a + 1));
                                 }
                               }
                             }
                             return true;
                           });
  }
}

bool has_constant(const Cctrs& system) {
  for (const SymbolInfo& info : system.signature().symbols()) {
    if (info.arity == 0) return true;
  }
  return false;
}

}  // namespace

BoundResult bound(const Interpretation& interp, const Cctrs& system, const TransformedTrs& h,
                  const BoundOptions& options) {
  (void)h;
  if (!has_constant(system)) throw Error(Errc::no_ground_terms, "the signature has no constants");
  if (options.general) return general_bound(interp, system, options);
  bool runtime_only = interp.recipe == Recipe::b || (interp.recipe == Recipe::c && interp.usable);
  if (options.mode == ComplexityMode::cdc && runtime_only) {
    throw Error(Errc::invalid_argument,
                "a usable replacement map only bounds runtime complexity; use --mode crc");
  }

  BoundResult r;
  if (options.mode == ComplexityMode::crc) {
    r.size_factor = size_factor(interp, system, options.grid);
    r.bound = size_abstracted(interp, system, options.n, r.size_factor);
    r.exact = exact_runtime(interp, system, options.n, options.max_values);
    r.method = "size-abstracted arguments (K=" + std::to_string(r.size_factor) + "); " +
               grid_note(options.grid);
    return r;
  }

  require_weakly_monotone(interp, system, options.grid);
  std::vector<SymbolId> all;
  for (SymbolId f = 0; f < system.signature().size(); ++f) all.push_back(f);
  std::size_t budget = kMaxEvaluations;
  try {
    auto fronts = value_sets(interp, system, all, options.n, true, options.max_values, budget);
    std::uint64_t best = 0;
    for (const auto& front : fronts) {
      for (const Value& v : front) best = std::max(best, v.cost);
    }
    r.bound = best;
    r.exact = best;
  } catch (const CapExceeded&) {
    throw Error(Errc::invalid_argument, "value sets exceed the enumeration cap");
  }
  r.method = "maximum over all ground terms by size; monotonicity " + grid_note(options.grid);
  return r;
}

std::string BoundResult::to_string() const {
  std::ostringstream out;
  out << "bound = " << bound << '\n';
  if (exact) out << "exact = " << *exact << '\n';
  out << "method = " << method << '\n';
  return out.str();
}

}  // namespace ctrc
