#include <gtest/gtest.h>

#include <algorithm>
#include <ostream>

#include "../support/naive.hpp"
#include "ctrc/enumerate.hpp"
#include "ctrc/interp.hpp"
#include "ctrc/labeled.hpp"

namespace ctrc {
namespace {

struct Loaded {
  Cctrs system;
  TransformedTrs h;
  Interpretation interp;
};

Loaded load(const char* system, const char* interp, std::optional<Recipe> recipe = std::nullopt) {
  Cctrs s = Cctrs::from_file(naive::data(system));
  TransformedTrs h = transform(s);
  Interpretation i = build(load_interpretation(naive::data(interp)), s, h, recipe);
  return {std::move(s), std::move(h), std::move(i)};
}

const XiRule& rule(const TransformedTrs& h, const std::string& id) {
  return *std::find_if(h.rules.begin(), h.rules.end(), [&](const XiRule& r) { return r.id == id; });
}

TEST(Interp, InferRecipe) {
  EXPECT_EQ(infer_recipe(parse_interpretation("DIRECT a = 0")), Recipe::direct);
  EXPECT_EQ(infer_recipe(parse_interpretation("FUN 0 a() = 0")), Recipe::a);
  EXPECT_EQ(infer_recipe(parse_interpretation("FUN 0 a() = 0\nMAP a = {}")), Recipe::b);
  EXPECT_EQ(infer_recipe(parse_interpretation("SIZE a() = 0")), Recipe::c);
  EXPECT_THROW(infer_recipe(parse_interpretation("DIRECT a = 0\nFUN 0 b() = 1")), Error);
  EXPECT_EQ(parse_recipe("direct"), Recipe::direct);
  EXPECT_EQ(parse_recipe("b"), Recipe::b);
  EXPECT_THROW(parse_recipe("D"), Error);
}

TEST(Interp, ParseEntries) {
  InterpretationFile f = parse_interpretation(
      "# comment\nCOND fib 2 1 (x; a) = 3*a  # trailing\nMAP + = {1,2}\nCOST 2 even(c, s) = c\n");
  ASSERT_EQ(f.entries.size(), 2U);
  EXPECT_EQ(f.entries[0].kind, EntryKind::cond);
  EXPECT_EQ(f.entries[0].i, 2U);
  EXPECT_EQ(f.entries[0].j, 1U);
  EXPECT_EQ(f.entries[0].params, (std::vector<std::string>{"x", "a"}));
  EXPECT_EQ(f.usable.at("+"), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(f.entries[1].kind, EntryKind::cost);
  EXPECT_THROW(parse_interpretation("FUN 0 a() = "), Error);
  EXPECT_THROW(parse_interpretation("WHAT a = 1"), Error);
}

TEST(Interp, RecipeAExpansion) {
  Loaded l = load("fg.ctrs", "fg.interp");
  EXPECT_EQ(l.interp.recipe, Recipe::a);
  SymbolId f = *l.h.signature.find("f");
  for (std::uint64_t x = 0; x < 5; ++x) {
    for (std::uint64_t c = 0; c < 3; ++c) {
      std::vector<Value> args{{x, 0}, {c, 0}};
      EXPECT_EQ(l.interp.apply(f, args).cost, x + c);
    }
  }
  EXPECT_EQ(l.interp.apply(l.h.top, {}).cost, 1U);
  EXPECT_EQ(l.interp.apply(l.h.bot, {}).cost, 0U);
}

TEST(Interp, RecipeCFixedValues) {
  Loaded l = load("even.ctrs", "even_costsize.interp");
  EXPECT_EQ(l.interp.domain, Domain::pair);
  EXPECT_EQ(l.interp.apply(l.h.top, {}), (Value{0, 1}));
  EXPECT_EQ(l.interp.apply(l.h.bot, {}), (Value{0, 0}));
  EXPECT_TRUE(l.interp.greater({3, 2}, {2, 2}));
  EXPECT_FALSE(l.interp.greater({3, 1}, {2, 2}));
  EXPECT_TRUE(l.interp.greater_equal({2, 2}, {2, 2}));
  EXPECT_FALSE(l.interp.greater_equal({2, 1}, {1, 2}));
}

TEST(Interp, EvenPolynomialValue) {
  Loaded l = load("even.ctrs", "even_poly.interp");
  SymbolId even = *l.h.signature.find("even");
  std::vector<Value> args{{1, 0}, {1, 0}, {1, 0}, {1, 0}};
  EXPECT_EQ(l.interp.apply(even, args).cost, 8U);
  Term t = xi(l.system.parse_term("even(s(0))"), l.h, Star::top);
  EXPECT_EQ(l.interp.eval(t, {}).cost, 8U);
}

TEST(Interp, MissingComponent) {
  Cctrs s = Cctrs::from_file(naive::data("fg.ctrs"));
  TransformedTrs h = transform(s);
  InterpretationFile f = parse_interpretation("FUN 0 a() = 0\nFUN 0 b() = 1\nFUN 0 f(x) = x\nFUN 1 f(x) = 1\n"
                                              "FUN 0 g(x) = x\nFUN 1 g(x) = x\n");
  try {
    build(f, s, h);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::missing_component);
    EXPECT_NE(std::string(e.what()).find("g"), std::string::npos);
  }
}

TEST(Interp, BuildRejectsBadEntries) {
  Cctrs s = Cctrs::from_file(naive::data("fg.ctrs"));
  TransformedTrs h = transform(s);
  auto code = [&](const char* text) {
    try {
      build(parse_interpretation(text), s, h);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::parse;
  };
  EXPECT_EQ(code("FUN 0 nope(x) = x"), Errc::unknown_symbol);
  EXPECT_EQ(code("FUN 0 f(x, y) = x"), Errc::arity);
}

struct Case {
  const char* system;
  const char* interp;
  friend void PrintTo(const Case& c, std::ostream* out) { *out << c.interp; }
};

class Passing : public ::testing::TestWithParam<Case> {};

TEST_P(Passing, ChecksOnGrid) {
  Loaded l = load(GetParam().system, GetParam().interp);
  CheckReport r = check(l.interp, l.system, l.h, 4);
  EXPECT_TRUE(r.pass) << r.to_string(l.interp, l.h);
  for (const RuleVerdict& v : r.rules) EXPECT_NE(v.result, Orientation::violated) << v.id;
  for (const RuleVerdict& v : r.rules) {
    if (v.cost == 1) EXPECT_EQ(v.result, Orientation::strict) << v.id;
  }
  std::string text = r.to_string(l.interp, l.h);
  EXPECT_NE(text.find("RESULT PASS (sampled on grid {0..4})"), std::string::npos);
}

INSTANTIATE_TEST_SUITE_P(Examples, Passing,
                         ::testing::Values(Case{"even.ctrs", "even_poly.interp"}, Case{"fg.ctrs", "fg.interp"},
                                           Case{"fib.ctrs", "fib_usable.interp"}, Case{"odd.ctrs", "odd.interp"}),
                         [](const auto& info) {
                           std::string name = info.param.interp;
                           return name.substr(0, name.find('.'));
                         });

TEST(Interp, CostSizeInterpretationPasses) {
  Loaded l = load("even.ctrs", "even_costsize.interp");
  CheckReport r = check(l.interp, l.system, l.h, 3);
  EXPECT_TRUE(r.pass) << r.to_string(l.interp, l.h);
}

TEST(Interp, ZeroInterpretationFailsReplayably) {
  Loaded l = load("even.ctrs", "even_zero.interp");
  CheckReport r = check(l.interp, l.system, l.h, 4);
  EXPECT_FALSE(r.pass);
  auto first = std::find_if(r.rules.begin(), r.rules.end(),
                            [](const RuleVerdict& v) { return v.result == Orientation::violated; });
  ASSERT_NE(first, r.rules.end());
  EXPECT_EQ(first->id, "1_1");
  std::size_t violated = 0;
  for (const RuleVerdict& v : r.rules) {
    if (v.result != Orientation::violated) continue;
    ++violated;
    ASSERT_TRUE(v.witness);
    const XiRule& xr = rule(l.h, v.id);
    Value lhs = l.interp.eval(xr.lhs, *v.witness);
    Value rhs = l.interp.eval(xr.rhs, *v.witness);
    EXPECT_FALSE(xr.cost ? l.interp.greater(lhs, rhs) : l.interp.greater_equal(lhs, rhs)) << v.id;
  }
  EXPECT_EQ(violated, 6U);
  EXPECT_NE(r.to_string(l.interp, l.h).find("RULE 1_1 VIOLATED"), std::string::npos);
}

TEST(Interp, MonotonicityFailureIsReported) {
  Cctrs s = Cctrs::from_file(naive::data("fg.ctrs"));
  TransformedTrs h = transform(s);
  Interpretation i = build(parse_interpretation("DIRECT a = 0\nDIRECT b = 1\nDIRECT f(x, c) = c + 1\n"
                                                "DIRECT g(x, c) = x + c + 1\nDIRECT g#1#1(x, y) = y\n"),
                           s, h);
  CheckReport r = check(i, s, h, 3);
  EXPECT_FALSE(r.pass);
  auto bad = std::find_if(r.monotonicity.begin(), r.monotonicity.end(),
                          [](const MonotonicityVerdict& m) { return !m.ok; });
  ASSERT_NE(bad, r.monotonicity.end());
  EXPECT_EQ(h.signature[bad->symbol].name, "f");
  EXPECT_EQ(bad->arg, 1U);
}

TEST(Interp, ObligationsFollowRecipe) {
  Loaded a = load("fib.ctrs", "fib_usable.interp", Recipe::a);
  Loaded b = load("fib.ctrs", "fib_usable.interp");
  SymbolId fib = *a.h.signature.find("fib");
  EXPECT_EQ(monotonicity_obligations(a.interp, a.system, a.h)[fib], (std::vector<std::size_t>{1}));
  EXPECT_TRUE(monotonicity_obligations(b.interp, b.system, b.h)[fib].empty());
  // Under Recipe A the fib interpretation is not monotone in its argument.
  EXPECT_FALSE(check(a.interp, a.system, a.h, 3).pass);
}

TEST(Interp, UnusableMapFails) {
  Cctrs s = Cctrs::from_file(naive::data("fib.ctrs"));
  TransformedTrs h = transform(s);
  InterpretationFile f = load_interpretation(naive::data("fib_usable.interp"));
  f.usable["+"] = {1};
  CheckReport r = check(build(f, s, h), s, h, 2);
  EXPECT_FALSE(r.map_usable);
  EXPECT_FALSE(r.pass);
}

// The interpreted ⊤-image bounds the derivation height of every basic term.
TEST(Interp, SoundnessAtDeskScale) {
  for (auto [sys, file] : {std::make_pair("even.ctrs", "even_poly.interp"),
                           std::make_pair("fg.ctrs", "fg.interp"),
                           std::make_pair("fib.ctrs", "fib_usable.interp")}) {
    Loaded l = load(sys, file);
    LabeledEngine engine(l.system);
    for (const Term& t : ground_terms(plain_variants(l.system), 4)) {
      Cost dh = engine.derivation_height(label(t, l.system));
      ASSERT_TRUE(dh.is_finite());
      Term image = xi(t, l.h, Star::top);
      if (l.interp.recipe == Recipe::b && !l.system.is_basic(t)) continue;
      try {
        EXPECT_LE(dh.value(), l.interp.eval(image, {}).cost) << l.system.show(t);
      } catch (const Error& e) {
        // A value beyond uint64 bounds dh trivially.
        EXPECT_EQ(e.code(), Errc::overflow);
      }
    }
  }
}

}  // namespace
}  // namespace ctrc
