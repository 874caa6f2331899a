#include <gtest/gtest.h>

#include "../support/naive.hpp"
#include "ctrc/enumerate.hpp"
#include "ctrc/interp.hpp"
#include "ctrc/labeled.hpp"

namespace ctrc {
namespace {

struct Fixture {
  Cctrs system;
  TransformedTrs h;
  Interpretation interp;

  Fixture(const char* sys, const char* file)
      : system(Cctrs::from_file(naive::data(sys))),
        h(transform(system)),
        interp(build(load_interpretation(naive::data(file)), system, h)) {}

  BoundResult run(std::size_t n, ComplexityMode mode = ComplexityMode::crc,
                  std::optional<std::pair<std::uint64_t, std::uint64_t>> general = std::nullopt) const {
    BoundOptions o;
    o.n = n;
    o.mode = mode;
    o.general = general;
    return bound(interp, system, h, o);
  }
};

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

TEST(Bound, EvenPolynomialClosedForm) {
  Fixture s("even.ctrs", "even_poly.interp");
  for (std::size_t n = 2; n <= 6; ++n) {
    BoundResult r = s.run(n);
    EXPECT_EQ(r.bound, n + 2 * ipow(3, n - 1)) << n;
  }
  EXPECT_EQ(s.run(3).to_string().substr(0, 10), "bound = 21");
}

// The exact value is the largest interpreted ⊤-image of a basic term.
TEST(Bound, ExactMatchesEnumeration) {
  Fixture s("even.ctrs", "even_poly.interp");
  for (std::size_t n = 2; n <= 5; ++n) {
    std::uint64_t best = 0;
    for (const Term& t : ground_basic_terms(s.system, n)) {
      best = std::max(best, s.interp.eval(xi(t, s.h, Star::top), {}).cost);
    }
    BoundResult r = s.run(n);
    ASSERT_TRUE(r.exact);
    EXPECT_EQ(*r.exact, best) << n;
    EXPECT_LE(*r.exact, r.bound);
  }
}

TEST(Bound, ExactDominatesComplexity) {
  Fixture s("fib.ctrs", "fib_usable.interp");
  for (std::size_t n = 2; n <= 4; ++n) {
    Cost crc = conditional_complexity(s.system, n, ComplexityMode::crc);
    BoundResult r = s.run(n);
    ASSERT_TRUE(crc.is_finite());
    ASSERT_TRUE(r.exact);
    EXPECT_LE(crc.value(), *r.exact);
  }
  EXPECT_EQ(s.run(2).bound, 13U);
  EXPECT_EQ(s.run(3).bound, 43U);
}

TEST(Bound, CostSizeInterpretation) {
  Fixture s("even.ctrs", "even_costsize.interp");
  for (std::size_t n = 2; n <= 6; ++n) EXPECT_EQ(s.run(n).bound, ipow(2, n) - 1) << n;
}

TEST(Bound, GeneralClosedForm) {
  Fixture s("fg.ctrs", "fg.interp");
  for (std::size_t n = 1; n <= 8; ++n) {
    BoundResult r = s.run(n, ComplexityMode::crc, std::make_pair(2, 1));
    EXPECT_EQ(r.bound, ipow(2, n) - 1) << n;
    BoundResult r3 = s.run(n, ComplexityMode::crc, std::make_pair(3, 2));
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < n; ++i) sum += ipow(3, i);
    EXPECT_EQ(r3.bound, 2 * sum);
  }
  EXPECT_EQ(s.run(3, ComplexityMode::crc, std::make_pair(2, 1)).bound, 7U);
}

TEST(Bound, GeneralPremiseChecked) {
  Fixture s("fg.ctrs", "fg.interp");
  try {
    s.run(3, ComplexityMode::crc, std::make_pair(1, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unverified_premise);
  }
}

TEST(Bound, UsableMapsRejectedForDerivational) {
  Fixture s("fib.ctrs", "fib_usable.interp");
  try {
    s.run(3, ComplexityMode::cdc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_argument);
  }
}

TEST(Bound, DerivationalDominatesComplexity) {
  Fixture s("even.ctrs", "even_poly.interp");
  for (std::size_t n = 1; n <= 3; ++n) {
    Cost cdc = conditional_complexity(s.system, n, ComplexityMode::cdc);
    ASSERT_TRUE(cdc.is_finite());
    EXPECT_LE(cdc.value(), s.run(n, ComplexityMode::cdc).bound);
  }
}

}  // namespace
}  // namespace ctrc
