#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "../support/naive.hpp"
#include "ctrc/csr.hpp"
#include "ctrc/enumerate.hpp"
#include "ctrc/labeled.hpp"
#include "ctrc/xi.hpp"

namespace ctrc {
namespace {

// Random proper ground terms: F symbols with random flags on defined ones.
Term random_proper(const Cctrs& sys, const TransformedTrs& h, std::mt19937& rng, int depth) {
  std::vector<SymbolId> pool;
  for (SymbolId f = 0; f < sys.signature().size(); ++f) {
    if (depth > 0 || sys.signature()[f].arity == 0) pool.push_back(f);
  }
  SymbolId f = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
  std::vector<Term> args;
  for (std::size_t i = 0; i < sys.signature()[f].arity; ++i) args.push_back(random_proper(sys, h, rng, depth - 1));
  for (std::size_t i = 0; i < sys.rule_count(f); ++i) {
    args.push_back(Term::apply(std::bernoulli_distribution(0.7)(rng) ? h.top : h.bot));
  }
  return Term::apply(f, std::move(args));
}

class Csr : public ::testing::Test {
 protected:
  Cctrs even_ = Cctrs::from_file(naive::data("even.ctrs"));
  Cctrs fg_ = Cctrs::from_file(naive::data("fg.ctrs"));
  Cctrs fib_ = Cctrs::from_file(naive::data("fib.ctrs"));
};

TEST_F(Csr, SingleStep) {
  TransformedTrs h = transform(fg_);
  CsEngine engine(h);
  auto steps = engine.steps(parse_term("f(a, top)", h.signature));
  ASSERT_EQ(steps.size(), 1U);
  EXPECT_EQ(h.show(steps[0].target), "a");
  EXPECT_EQ(steps[0].cost, 1U);
  EXPECT_EQ(steps[0].rule, "1_1");
  Term nf = parse_term("g(a, bot)", h.signature);
  auto forms = engine.normal_forms(nf);
  ASSERT_EQ(forms.items.size(), 1U);
  EXPECT_EQ(forms.items[0], nf);
}

TEST_F(Csr, InactivePositionsDoNotRewrite) {
  TransformedTrs h = transform(fg_);
  CsEngine engine(h);
  // The second argument of the progress symbol is active, the first is not.
  Term t = parse_term("g#1#1(f(a, top), f(a, top))", h.signature);
  auto steps = engine.steps(t);
  ASSERT_EQ(steps.size(), 1U);
  EXPECT_EQ(steps[0].position, (Position{2}));
}

TEST_F(Csr, DerivationHeightMatchesLabeled) {
  struct Case {
    const Cctrs* sys;
    std::size_t size;
  };
  for (Case c : {Case{&even_, 4}, Case{&fg_, 4}, Case{&fib_, 3}}) {
    TransformedTrs h = transform(*c.sys);
    CsEngine cs(h);
    LabeledEngine labeled(*c.sys);
    for (const Term& t : ground_terms(labeled_variants(*c.sys), c.size)) {
      EXPECT_EQ(labeled.derivation_height(t), cs.derivation_height(zeta(t, h))) << c.sys->show(t);
    }
  }
}

TEST_F(Csr, VarModeAgreesOnDerivationHeight) {
  TransformedTrs full = transform(even_);
  TransformedTrs var = transform(even_, ApMode::var);
  CsEngine a(full), b(var);
  for (const Term& t : ground_terms(labeled_variants(even_), 4)) {
    Cost ca = a.derivation_height(zeta(t, full));
    Cost cb = b.derivation_height(zeta(t, var));
    ASSERT_TRUE(ca.is_finite() && cb.is_finite());
    EXPECT_LE(ca.value(), cb.value());
  }
}

TEST_F(Csr, NormalFormsAreBottomPatterns) {
  TransformedTrs h = transform(even_);
  CsEngine engine(h);
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    Term t = random_proper(even_, h, rng, 3);
    ASSERT_TRUE(classify(t, h).proper);
    auto forms = engine.normal_forms(t);
    ASSERT_TRUE(forms.complete);
    for (const Term& nf : forms.items) EXPECT_TRUE(classify(nf, h).bottom_pattern) << h.show(nf);
  }
}

TEST_F(Csr, GroundBottomPatternsAreNormal) {
  TransformedTrs h = transform(even_);
  CsEngine engine(h);
  for (const Term& t : ground_terms(labeled_variants(even_), 4)) {
    Term z = zeta(t, h);
    if (classify(z, h).bottom_pattern) EXPECT_TRUE(engine.steps(z).empty()) << h.show(z);
  }
}

TEST_F(Csr, ShrinkingMuShrinksSteps) {
  TransformedTrs h = transform(fib_);
  ReplacementMap smaller = h.mu;
  for (auto& args : smaller) {
    if (!args.empty()) args.pop_back();
  }
  CsEngine full(h), reduced(h, smaller);
  for (const Term& t : ground_terms(labeled_variants(fib_), 3)) {
    Term z = zeta(t, h);
    auto big = full.steps(z);
    for (const CsStep& s : reduced.steps(z)) {
      bool found = std::any_of(big.begin(), big.end(), [&](const CsStep& b) {
        return b.target == s.target && b.rule == s.rule && b.position == s.position;
      });
      EXPECT_TRUE(found);
    }
  }
}

TEST_F(Csr, Divergence) {
  Cctrs loop = Cctrs::from_file(naive::data("diverge.ctrs"));
  TransformedTrs h = transform(loop);
  CsEngine engine(h);
  EXPECT_TRUE(engine.derivation_height(zeta(label(loop.parse_term("a"), loop), h)).is_infinite());
}

TEST_F(Csr, HandWrittenSystem) {
  TransformedTrs h;
  SymbolId z = h.signature.add({"z", 0, SymbolKind::constructor});
  SymbolId s = h.signature.add({"s", 1, SymbolKind::constructor});
  SymbolId d = h.signature.add({"d", 1, SymbolKind::defined});
  h.mu = {{}, {}, {1}};
  Term x = Term::variable("x");
  h.rules.push_back({"dz", 1, 0, 0, Term::apply(d, {Term::apply(z)}), Term::apply(z), 1});
  h.rules.push_back({"ds", 1, 0, 0, Term::apply(d, {Term::apply(s, {x})}),
                     Term::apply(s, {Term::apply(s, {Term::apply(d, {x})})}), 1});
  CsEngine engine(h);
  Term t = Term::apply(d, {Term::apply(s, {Term::apply(s, {Term::apply(z)})})});
  EXPECT_EQ(engine.derivation_height(t), Cost::finite(1));
  CsEngine inner(h, {{}, {1}, {1}});
  EXPECT_EQ(inner.derivation_height(t), Cost::finite(3));
}

TEST_F(Csr, BudgetGivesLowerBound) {
  TransformedTrs h = transform(even_);
  CsEngine engine(h, {10, 12});
  Term t = zeta(label(even_.parse_term("even(s(s(s(s(0)))))"), even_), h);
  EXPECT_TRUE(engine.derivation_height(t).is_at_least());
}

}  // namespace
}  // namespace ctrc
