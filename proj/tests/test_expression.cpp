#include <gtest/gtest.h>

#include <random>
#include <string>

#include "oracle.hpp"
#include "rns/expression.hpp"
#include "rns/reconstruct.hpp"
#include "rns/sampling.hpp"

using rns::Error;
using rns::ErrorKind;
using rns::ModulusSet;

namespace {

const ModulusSet& fig() {
  static const auto ms = ModulusSet::validate({3, 4, 7});
  return ms;
}

std::size_t parse_error_offset(const std::string& text) {
  try {
    (void)rns::evaluate(text, fig());
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    return e.first();
  }
  ADD_FAILURE() << "no error for " << text;
  return 0;
}

// Builds a random expression and its exact value together.
struct Generated {
  std::string text;
  mpz_class value;
};

Generated generate(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 5);
  const int choice = depth <= 0 ? 0 : pick(rng);
  if (choice == 0) {
    const std::uint64_t digits = rng() % 40 + 1;
    std::string lit;
    for (std::uint64_t i = 0; i < digits; ++i) lit += static_cast<char>('0' + rng() % 10);
    return {lit, mpz_class(lit, 10)};
  }
  auto lhs = generate(rng, depth - 1), rhs = generate(rng, depth - 1);
  switch (choice % 4) {
    case 1: return {"(" + lhs.text + "+" + rhs.text + ")", lhs.value + rhs.value};
    case 2: return {"(" + lhs.text + " - " + rhs.text + ")", lhs.value - rhs.value};
    case 3: return {lhs.text + "*" + rhs.text, lhs.value * rhs.value};
    default: return {"(" + lhs.text + ")*(" + rhs.text + ")", lhs.value * rhs.value};
  }
}

}  // namespace

TEST(Expression, Examples) {
  EXPECT_EQ(rns::reconstruct(rns::evaluate("17*23", fig())), 55);
  EXPECT_TRUE(rns::is_zero(rns::evaluate("42-42", fig())));
  EXPECT_EQ(rns::reconstruct(rns::evaluate(" 1 + 2 * 3 ", fig())), 7);
  EXPECT_EQ(rns::reconstruct(rns::evaluate("(1+2)*3", fig())), 9);
  EXPECT_EQ(rns::reconstruct(rns::evaluate("10-3-2", fig())), 5);
  EXPECT_EQ(rns::reconstruct(rns::evaluate("0-1", fig())), 83);
}

TEST(Expression, ParseErrors) {
  EXPECT_EQ(parse_error_offset("(1+2)*("), 7u);
  EXPECT_EQ(parse_error_offset(""), 0u);
  EXPECT_EQ(parse_error_offset("1+"), 2u);
  EXPECT_EQ(parse_error_offset("(1+2"), 4u);
  EXPECT_EQ(parse_error_offset("1 2"), 2u);
  EXPECT_EQ(parse_error_offset("6/2"), 1u);
  EXPECT_EQ(parse_error_offset("-1"), 0u);
}

TEST(Expression, AgreesWithGmpOnRandomExpressions) {
  std::mt19937_64 rng(77);
  for (const auto& ms : {rns::primes_below(1440, 50), rns::select_primes(1000000)}) {
    const mpz_class big_m = oracle::product(ms.moduli());
    for (int i = 0; i < 300; ++i) {
      const auto g = generate(rng, 5);
      mpz_class expected = g.value % big_m;
      if (expected < 0) expected += big_m;
      const auto got = rns::evaluate(g.text, ms);
      ASSERT_EQ(oracle::to_mpz(rns::reconstruct(got)), expected) << g.text;
      ASSERT_EQ(rns::is_zero(got), expected == 0);
    }
  }
}
