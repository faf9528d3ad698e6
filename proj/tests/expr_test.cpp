#include <gtest/gtest.h>

#include <random>

#include "pmc/catalog/catalog.hpp"
#include "pmc/expr/render.hpp"

using namespace pmc;
using expr::parse;
using expr::parse_value;
using expr::render;

namespace {

TrigRational V(Var v) { return TrigRational::var(v); }

std::size_t syntax_offset(const std::string& text) {
  try {
    parse(text);
  } catch (const expr::SyntaxError& e) {
    return e.offset();
  }
  ADD_FAILURE() << "no SyntaxError for " << text;
  return std::string::npos;
}

}  // namespace

TEST(Parse, LowersToCatalogP3) {
  EXPECT_TRUE(equals(parse_value("cot(alpha)*(a-b)/(a+b)"), Catalog::instance().p("p3").materialize()));
}

TEST(Parse, ImaginaryUnit) {
  EXPECT_TRUE(equals(parse_value("i^2"), TrigRational(-1)));
  EXPECT_TRUE(equals(parse_value("conj(2 + 3*i)"), TrigRational(GaussianRational(Rational(2), Rational(-3)))));
}

TEST(Parse, CircleRelation) {
  EXPECT_TRUE(parse_value("sin(alpha)^2 + cos(alpha)^2 - 1").is_zero());
  EXPECT_TRUE(equals(parse_value(" sin( α )^2"), V(Var::s) * V(Var::s)));
}

TEST(Parse, PrecedenceAndAssociativity) {
  EXPECT_TRUE(equals(parse_value("1 - 2 - 3"), TrigRational(-4)));
  EXPECT_TRUE(equals(parse_value("12/2/3"), TrigRational(2)));
  EXPECT_TRUE(equals(parse_value("-a^2"), -(V(Var::a) * V(Var::a))));
  EXPECT_TRUE(equals(parse_value("2*rho^-1"), TrigRational(2) / V(Var::rho)));
  EXPECT_TRUE(equals(parse_value("b^(-2)"), TrigRational(1) / (V(Var::b) * V(Var::b))));
  EXPECT_TRUE(equals(parse_value("0.25*b"), V(Var::b) / TrigRational(4)));
  EXPECT_TRUE(equals(parse_value("028"), TrigRational(28)));
}

TEST(Parse, ConjSwapsA) {
  EXPECT_TRUE(equals(parse_value("conj(i*a)"), TrigRational(-GaussianRational::i()) * V(Var::abar)));
  EXPECT_TRUE(equals(parse_value("conj(cot(alpha))"), V(Var::c) / V(Var::s)));
}

TEST(ParseErrors, OffsetsAndExpectedSets) {
  EXPECT_EQ(syntax_offset("a +"), 3u);
  EXPECT_EQ(syntax_offset("(a + b"), 6u);
  EXPECT_EQ(syntax_offset("a $ b"), 2u);
  EXPECT_EQ(syntax_offset("sin(alpha"), 9u);
  EXPECT_EQ(syntax_offset("a^b"), 2u);
  EXPECT_EQ(syntax_offset("k*a"), 0u);
  EXPECT_EQ(syntax_offset(""), 0u);
  try {
    parse("a*");
    FAIL();
  } catch (const expr::SyntaxError& e) {
    EXPECT_EQ(e.offset(), 2u);
    EXPECT_TRUE(e.expected().count("number"));
    EXPECT_TRUE(e.expected().count("'('"));
  }
}

TEST(ParseErrors, AlphaOutsideTrig) {
  EXPECT_THROW(parse_value("alpha + 1"), DomainError);
  EXPECT_THROW(parse_value("sin(a)"), DomainError);
  EXPECT_THROW(parse_value("conj(alpha)"), DomainError);
}

TEST(ParseErrors, DivisionByZero) {
  EXPECT_THROW(parse_value("1/(sin(alpha)^2 + cos(alpha)^2 - 1)"), DomainError);
  EXPECT_THROW(parse_value("0^-1"), DomainError);
}

TEST(ParseErrors, Limits) {
  EXPECT_THROW(parse(std::string(300, '(') + "a" + std::string(300, ')')), expr::SyntaxError);
  EXPECT_THROW(parse("a^5000"), DomainError);
  EXPECT_NO_THROW(parse(std::string(100, '(') + "a" + std::string(100, ')')));
}

TEST(Render, CanonicalText) {
  EXPECT_EQ(render(parse_value("cot(alpha)")), "cos(alpha)/sin(alpha)");
  EXPECT_EQ(render(TrigRational()), "0");
  EXPECT_EQ(render(parse_value("(a+b)*(a-b) - a^2")), render(-(V(Var::b) * V(Var::b))));
}

TEST(Render, Deterministic) {
  const TrigRational e = Catalog::instance().p("p7").materialize();
  EXPECT_EQ(render(e), render(parse_value(render(e))));
}

TEST(Render, RoundTripsThroughParse) {
  const char* inputs[] = {"i*a/(b+abar)^2",       "(2-i)/3*rho*cot(alpha)^3", "conj(a)*a - rho/2*(3*sin(alpha)^2-2)",
                          "1/(sin(alpha)^2 - 2/3)", "cos(alpha)/(a+b) + i",     "-(a-abar)^3/(rho*b)"};
  for (const char* in : inputs) {
    const TrigRational e = parse_value(in);
    EXPECT_TRUE(equals(parse_value(render(e)), e)) << in << " -> " << render(e);
  }
}

// Random byte strings and mutations of valid inputs: parsing either succeeds or
// throws a positioned SyntaxError or a DomainError, never anything else.
TEST(Fuzz, ParserIsTotal) {
  std::mt19937_64 gen(2024);
  const std::string alphabet = "abirhoslpcnt()+-*/^ 0123456789.,$\xce\xb1";
  const std::string seeds[] = {"cot(alpha)*(a-b)/(a+b)", "sin(alpha)^2+cos(alpha)^2-1", "conj(a)*rho/b^-2", "i^2"};
  std::size_t parsed = 0, rejected = 0;
  for (int k = 0; k < 20000; ++k) {
    std::string text;
    if (k % 2) {
      for (std::size_t n = gen() % 24; n > 0; --n) text += alphabet[gen() % alphabet.size()];
    } else {
      text = seeds[gen() % 4];
      for (int e = 1 + gen() % 3; e > 0; --e) {
        const std::size_t at = gen() % (text.size() + 1);
        switch (gen() % 3) {
          case 0: text.insert(at, 1, alphabet[gen() % alphabet.size()]); break;
          case 1: if (at < text.size()) text.erase(at, 1); break;
          default: if (at < text.size()) text[at] = static_cast<char>(gen() % 256);
        }
      }
    }
    try {
      auto ast = parse(text);
      ++parsed;
      budget::Scope scope(2000);
      try {
        expr::lower(*ast);
      } catch (const Error&) {
      }
    } catch (const expr::SyntaxError& e) {
      ++rejected;
      EXPECT_LE(e.offset(), text.size()) << text;
    } catch (const DomainError&) {
      ++rejected;
    } catch (const std::exception& e) {
      ADD_FAILURE() << "unexpected exception on '" << text << "': " << e.what();
    }
  }
  EXPECT_GT(parsed, 0u);
  EXPECT_GT(rejected, 0u);
}
