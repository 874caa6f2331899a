#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "../support/naive.hpp"
#include "ctrc/csr.hpp"
#include "ctrc/enumerate.hpp"
#include "ctrc/interp.hpp"
#include "ctrc/labeled.hpp"
#include "ctrc/xi.hpp"

using namespace ctrc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail = what;
    pass = false;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Cctrs load(const char* name) { return Cctrs::from_file(naive::data(name)); }

Term chain(const Cctrs& sys, const char* f, std::size_t n, Term t) {
  SymbolId id = *sys.signature().find(f);
  for (std::size_t i = 0; i < n; ++i) t = Term::apply(id, {t});
  return t;
}

Term canonical(const Term& t) {
  Substitution rename;
  std::size_t k = 0;
  for (const std::string& v : variables(t)) rename.emplace(v, Term::variable("v" + std::to_string(++k)));
  return substitute(t, rename);
}

std::set<std::string> canonical_set(const std::vector<Term>& ts, const TransformedTrs& h) {
  std::set<std::string> out;
  for (const Term& t : ts) out.insert(h.show(canonical(t)));
  return out;
}

std::set<std::string> canonical_set(std::initializer_list<const char*> texts, const TransformedTrs& h) {
  std::vector<Term> ts;
  for (const char* s : texts) ts.push_back(parse_term(s, h.signature));
  return canonical_set(ts, h);
}

Outcome worst_case() {
  Outcome o;
  auto start = Clock::now();
  Cctrs even = load("even.ctrs");
  LabeledEngine engine(even, {1U << 20, 64});
  for (std::size_t n = 0; n <= 8; ++n) {
    std::uint64_t expected = (std::uint64_t{2} << n) - 1;
    for (const char* f : {"even", "odd"}) {
      Term t = label(chain(even, f, 1, chain(even, "s", n, even.parse_term("0"))), even);
      Cost c = engine.derivation_height(t);
      o.require(c == Cost::finite(expected),
                std::string(f) + " n=" + std::to_string(n) + " gave " + c.to_string());
    }
  }
  double s = seconds_since(start);
  o.require(s < 30, "took " + std::to_string(s) + " s");
  return o;
}

Outcome fg_system() {
  Outcome o;
  auto start = Clock::now();
  Cctrs fg = load("fg.ctrs");
  LabeledEngine engine(fg);
  naive::Oracle oracle(fg);
  for (std::size_t n = 0; n <= 4; ++n) {
    for (std::size_t m = 0; m <= 4; ++m) {
      Term t = label(chain(fg, "f", n, chain(fg, "g", 1, chain(fg, "f", m, fg.parse_term("a")))), fg);
      Cost c = engine.derivation_height(t);
      std::string at = " at n=" + std::to_string(n) + ", m=" + std::to_string(m);
      o.require(c.is_finite(), "not finite" + at);
      if (!c.is_finite()) continue;
      o.require(c.value() <= 2 * m + n, "exceeds 2m+n" + at);
      o.require(c.value() == oracle.dh(t), "disagrees with the naive walk" + at);
    }
  }
  double s = seconds_since(start);
  o.require(s < 10, "took " + std::to_string(s) + " s");
  return o;
}

bool has_step(const StepSet& set, const Term& target, StepKind kind, std::uint64_t cost) {
  return std::any_of(set.steps.begin(), set.steps.end(), [&](const LabeledStep& s) {
    return s.target == target && s.kind == kind && s.cost == cost;
  });
}

Outcome worked_reductions() {
  Outcome o;
  Cctrs fib = load("fib.ctrs");
  LabeledEngine fe(fib);
  Term f0 = label(fib.parse_term("fib(+(s(0), 0))"), fib);
  Term f1 = fib.parse_term("fib{1,2}(+{2}(s(0), 0))");
  Term f2 = fib.parse_term("fib{1,2}(s(+{1,2}(0, 0)))");
  Term f3 = fib.parse_term("pair(s(0), s(0))");
  o.require(has_step(fe.steps(f0), f1, StepKind::bot, 0), "fib step 1 (bot, 0)");
  o.require(has_step(fe.steps(f1), f2, StepKind::success, 1), "fib step 2 (success, 1)");
  o.require(has_step(fe.steps(f2), f3, StepKind::success, 4), "fib step 3 (success, 4)");

  Cctrs even = load("even.ctrs");
  LabeledEngine ee(even);
  Term e0 = label(even.parse_term("even(s(0))"), even);
  Term e1 = even.parse_term("even{1,3}(s(0))");
  Term e2 = even.parse_term("even{3}(s(0))");
  o.require(has_step(ee.steps(e0), e1, StepKind::fail, 1), "even step 1 (fail, 1)");
  o.require(has_step(ee.steps(e1), e2, StepKind::bot, 0), "even step 2 (bot, 0)");
  o.require(has_step(ee.steps(e2), even.parse_term("false"), StepKind::success, 2),
            "even step 3 (success, 2)");
  return o;
}

Outcome transformation_equivalence() {
  Outcome o;
  auto start = Clock::now();
  std::size_t checked = 0;
  for (auto [file, size] : {std::make_pair("even.ctrs", 5), std::make_pair("fg.ctrs", 5),
                            std::make_pair("fib.ctrs", 4)}) {
    Cctrs sys = load(file);
    TransformedTrs h = transform(sys);
    LabeledEngine labeled(sys);
    CsEngine cs(h);
    for (const Term& t : ground_terms(labeled_variants(sys), static_cast<std::size_t>(size))) {
      Cost a = labeled.derivation_height(t);
      Cost b = cs.derivation_height(zeta(t, h));
      ++checked;
      o.require(a == b, std::string(file) + ": " + sys.show(t) + " gives " + a.to_string() + " vs " +
                            b.to_string());
    }
  }
  double s = seconds_since(start);
  o.require(s < 120, "took " + std::to_string(s) + " s");
  if (o.pass) o.detail = std::to_string(checked) + " terms";
  return o;
}

Outcome anti_patterns_and_xi() {
  Outcome o;
  Cctrs fib = load("fib.ctrs");
  TransformedTrs hf = transform(fib);
  o.require(canonical_set(anti_patterns(fib.parse_term("pair(z, w)"), hf), hf) ==
                canonical_set({"0", "s(x)", "fib(x, bot, bot)", "+(x, y, bot, bot)"}, hf),
            "AP(pair(z, w))");

  Cctrs even = load("even.ctrs");
  TransformedTrs h = transform(even);
  auto ap = [&](const char* t) { return canonical_set(anti_patterns(even.parse_term(t), h), h); };
  o.require(ap("0") == canonical_set({"true", "false", "s(x)", "even(x, bot, bot, bot)",
                                      "odd(x, bot, bot, bot)"}, h),
            "star list AP(0)");
  o.require(ap("true") == canonical_set({"false", "0", "s(x)", "even(x, bot, bot, bot)",
                                         "odd(x, bot, bot, bot)"}, h),
            "star list AP(true)");
  o.require(ap("s(x)") == canonical_set({"true", "false", "0", "even(x, bot, bot, bot)",
                                         "odd(x, bot, bot, bot)"}, h),
            "star list AP(s(x))");

  auto mu = [&](const char* name) { return h.mu.at(*h.signature.find(name)); };
  using V = std::vector<std::size_t>;
  bool mu_ok = mu("even") == V{1} && mu("odd") == V{1} && mu("even#2#1") == V{3} &&
               mu("odd#2#1") == V{3} && mu("even#3#1") == V{4} && mu("odd#3#1") == V{4} &&
               mu("s") == V{1} && mu("0").empty() && mu("true").empty() && mu("false").empty();
  o.require(mu_ok, "replacement map");

  o.require(h.rules.size() == 60, "rule count " + std::to_string(h.rules.size()));
  std::size_t cost1 = 0;
  for (const XiRule& r : h.rules) cost1 += r.cost;
  o.require(cost1 == 10, "cost-1 rules: expected 10, found " + std::to_string(cost1));
  return o;
}

Term random_proper(const Cctrs& sys, const TransformedTrs& h, std::mt19937& rng, int depth) {
  std::vector<SymbolId> pool;
  for (SymbolId f = 0; f < sys.signature().size(); ++f) {
    if (depth > 0 || sys.signature()[f].arity == 0) pool.push_back(f);
  }
  SymbolId f = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
  std::vector<Term> args;
  for (std::size_t i = 0; i < sys.signature()[f].arity; ++i) {
    args.push_back(random_proper(sys, h, rng, depth - 1));
  }
  for (std::size_t i = 0; i < sys.rule_count(f); ++i) {
    args.push_back(Term::apply(std::bernoulli_distribution(0.7)(rng) ? h.top : h.bot));
  }
  return Term::apply(f, std::move(args));
}

Outcome bottom_patterns() {
  Outcome o;
  Cctrs even = load("even.ctrs");
  TransformedTrs h = transform(even);
  CsEngine engine(h);
  std::mt19937 rng(2024);
  std::size_t generated = 0, forms = 0;
  while (generated < 500) {
    Term t = random_proper(even, h, rng, 4);
    if (!classify(t, h).proper) continue;
    Bounded<Term> nfs = engine.normal_forms(t);
    if (!nfs.complete) continue;
    ++generated;
    for (const Term& nf : nfs.items) {
      ++forms;
      o.require(classify(nf, h).bottom_pattern, "normal form " + h.show(nf) + " of " + h.show(t));
    }
  }
  if (o.pass) o.detail = std::to_string(forms) + " normal forms";
  return o;
}

Outcome simulation() {
  Outcome o;
  for (const char* file : {"even.ctrs", "fg.ctrs"}) {
    Cctrs sys = load(file);
    LabeledEngine engine(sys);
    ConditionalRewriter rw(sys);
    for (const Term& s : ground_terms(plain_variants(sys), 5)) {
      StepSet labeled = engine.steps(label(s, sys));
      for (const PlainStep& step : rw.steps(s).items) {
        Term target = label(step.target, sys);
        bool found = std::any_of(labeled.steps.begin(), labeled.steps.end(),
                                 [&](const LabeledStep& l) { return l.target == target; });
        o.require(found, std::string(file) + ": no labeled step " + sys.show(s) + " to " + sys.show(target));
      }
    }
    for (const Term& s : ground_terms(labeled_variants(sys), 5)) {
      Term from = erase(s);
      std::vector<PlainStep> plain = rw.steps(from).items;
      for (const LabeledStep& step : engine.steps(s).steps) {
        Term to = erase(step.target);
        bool rewrites = std::any_of(plain.begin(), plain.end(),
                                    [&](const PlainStep& p) { return p.target == to; });
        bool shrinks = from == to && label_weight(s) > label_weight(step.target);
        o.require(rewrites || shrinks,
                  std::string(file) + ": " + sys.show(s) + " to " + sys.show(step.target) + " does not project");
      }
    }
  }
  return o;
}

Outcome interpretations() {
  Outcome o;
  auto start = Clock::now();
  for (auto [sys_file, interp_file] : {std::make_pair("even.ctrs", "even_poly.interp"),
                                       std::make_pair("fg.ctrs", "fg.interp"),
                                       std::make_pair("fib.ctrs", "fib_usable.interp"),
                                       std::make_pair("even.ctrs", "even_costsize.interp")}) {
    Cctrs sys = load(sys_file);
    TransformedTrs h = transform(sys);
    Interpretation i = build(load_interpretation(naive::data(interp_file)), sys, h);
    o.require(check(i, sys, h, 4).pass, std::string(interp_file) + " does not pass");
  }

  Cctrs even = load("even.ctrs");
  TransformedTrs h = transform(even);
  Interpretation zero = build(load_interpretation(naive::data("even_zero.interp")), even, h);
  CheckReport r = check(zero, even, h, 4);
  o.require(!r.pass, "zero interpretation passes");
  bool replayed = false;
  for (const RuleVerdict& v : r.rules) {
    if (v.result != Orientation::violated || !v.witness) continue;
    auto rule = std::find_if(h.rules.begin(), h.rules.end(), [&](const XiRule& x) { return x.id == v.id; });
    Value lhs = zero.eval(rule->lhs, *v.witness);
    Value rhs = zero.eval(rule->rhs, *v.witness);
    bool holds = rule->cost ? zero.greater(lhs, rhs) : zero.greater_equal(lhs, rhs);
    o.require(!holds, "witness for " + v.id + " does not replay");
    replayed = true;
  }
  o.require(replayed, "no counterexample reported");

  Interpretation poly = build(load_interpretation(naive::data("even_poly.interp")), even, h);
  for (std::size_t n = 2; n <= 6; ++n) {
    BoundOptions opt;
    opt.n = n;
    std::uint64_t three = 1;
    for (std::size_t i = 1; i < n; ++i) three *= 3;
    std::uint64_t closed = n + 2 * three;
    BoundResult b = bound(poly, even, h, opt);
    o.require(b.bound == closed, "even crc bound at n=" + std::to_string(n) + " is " +
                                     std::to_string(b.bound) + ", expected " + std::to_string(closed));
  }

  Cctrs fg = load("fg.ctrs");
  TransformedTrs hg = transform(fg);
  Interpretation r1 = build(load_interpretation(naive::data("fg.interp")), fg, hg);
  for (std::size_t n = 1; n <= 8; ++n) {
    BoundOptions opt;
    opt.n = n;
    opt.general = std::make_pair(2, 1);
    BoundResult b = bound(r1, fg, hg, opt);
    o.require(b.bound == (std::uint64_t{1} << n) - 1, "fg general bound at n=" + std::to_string(n));
  }
  double s = seconds_since(start);
  o.require(s < 60, "took " + std::to_string(s) + " s");
  return o;
}

Outcome usable_maps() {
  Outcome o;
  using V = std::vector<std::size_t>;
  auto of = [](const Cctrs& s, const ReplacementMap& m, const char* f) { return m.at(*s.signature().find(f)); };
  Cctrs fib = load("fib.ctrs");
  ReplacementMap uf = derive_usable_map(fib);
  o.require(of(fib, uf, "s") == V{1} && of(fib, uf, "+") == V({1, 2}) && of(fib, uf, "pair") == V({1, 2}) &&
                of(fib, uf, "fib").empty() && of(fib, uf, "0").empty(),
            "fib map");
  Cctrs even = load("even.ctrs");
  ReplacementMap ue = derive_usable_map(even);
  o.require(std::all_of(ue.begin(), ue.end(), [](const V& a) { return a.empty(); }), "even map");
  Cctrs odd = load("odd.ctrs");
  ReplacementMap uo = derive_usable_map(odd);
  bool odd_ok = true;
  for (SymbolId f = 0; f < odd.signature().size(); ++f) {
    V expected = odd.signature()[f].name == "not" ? V{1} : V{};
    odd_ok &= uo.at(f) == expected;
  }
  o.require(odd_ok, "odd map");
  return o;
}

Outcome divergence() {
  Outcome o;
  Cctrs loop = load("diverge.ctrs");
  LabeledEngine engine(loop);
  Term a = label(loop.parse_term("a"), loop);
  o.require(engine.derivation_height(a).is_infinite(), "labeled dh is finite");
  TransformedTrs h = transform(loop);
  CsEngine cs(h);
  o.require(cs.derivation_height(zeta(a, h)).is_infinite(), "context-sensitive dh is finite");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"even/odd worst case 2^(n+1)-1 for n = 0..8", worst_case},
      {"f/g derivation heights against the naive walk", fg_system},
      {"worked fib and even reductions with their costs", worked_reductions},
      {"labeled and context-sensitive derivation heights agree", transformation_equivalence},
      {"anti-patterns, star lists, rule counts and replacement map", anti_patterns_and_xi},
      {"normal forms of proper terms are bottom patterns", bottom_patterns},
      {"simulation between plain and labeled steps", simulation},
      {"interpretation checks and bounds", interpretations},
      {"usable replacement maps", usable_maps},
      {"divergence detection", divergence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto start = Clock::now();
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %zu: %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                seconds_since(start), o.detail.empty() ? "" : " - ", o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
