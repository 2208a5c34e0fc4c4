#include "epik/formula.hpp"

#include <random>

#include "doctest.h"

using namespace epik;

namespace {

Formula F(const std::string& text, int agents = 2) {
  return parseFormula(text, agents);
}

// Random core-language formula, depth-bounded, over x0..x2 and agents 1..n.
Formula randomFormula(std::mt19937_64& rng, int depth, int nAgents,
                      bool modal = true) {
  std::uniform_int_distribution<int> kindDist(0, modal ? 7 : 4);
  if (depth == 0) {
    if (rng() % 4 == 0) return Formula::bottom();
    return Formula::var("x" + std::to_string(rng() % 3));
  }
  switch (kindDist(rng)) {
    case 0: return Formula::var("x" + std::to_string(rng() % 3));
    case 1: return Formula::bottom();
    case 2:
      return Formula::conj(randomFormula(rng, depth - 1, nAgents, modal),
                           randomFormula(rng, depth - 1, nAgents, modal));
    case 3:
      return Formula::disj(randomFormula(rng, depth - 1, nAgents, modal),
                           randomFormula(rng, depth - 1, nAgents, modal));
    case 4:
      return Formula::imp(randomFormula(rng, depth - 1, nAgents, modal),
                          randomFormula(rng, depth - 1, nAgents, modal));
    case 5:
      return Formula::box(randomFormula(rng, depth - 1, nAgents, modal));
    case 6:
      return Formula::know(1 + static_cast<int>(rng() % nAgents),
                           randomFormula(rng, depth - 1, nAgents, modal));
    default: {
      std::uint32_t mask =
          1 + static_cast<std::uint32_t>(rng() % ((1u << nAgents) - 1));
      return Formula::common(Group::fromMask(mask),
                             randomFormula(rng, depth - 1, nAgents, modal));
    }
  }
}

}  // namespace

TEST_CASE("parsing desugars the abbreviations") {
  CHECK(F("x0 -> x0") == Formula::imp(Formula::var("x0"), Formula::var("x0")));
  CHECK(F("K1 (x0 | x1)") ==
        Formula::know(1, Formula::disj(Formula::var("x0"), Formula::var("x1"))));
  // dia f = ~box ~f
  CHECK(F("dia x0") ==
        Formula::imp(Formula::box(Formula::imp(Formula::var("x0"),
                                               Formula::bottom())),
                     Formula::bottom()));
  CHECK(F("true") == Formula::imp(Formula::bottom(), Formula::bottom()));
  CHECK(F("~x0") == Formula::imp(Formula::var("x0"), Formula::bottom()));
  CHECK(F("x0 <-> x1") ==
        Formula::conj(Formula::imp(Formula::var("x0"), Formula::var("x1")),
                      Formula::imp(Formula::var("x1"), Formula::var("x0"))));
  CHECK(F("x0 == x1") ==
        Formula::box(Formula::iff(Formula::var("x0"), Formula::var("x1"))));
}

TEST_CASE("precedence: unary, &, |, ->, <->, ==") {
  CHECK(F("~x0 & x1 | x2 -> x0") ==
        Formula::imp(
            Formula::disj(Formula::conj(Formula::neg(Formula::var("x0")),
                                        Formula::var("x1")),
                          Formula::var("x2")),
            Formula::var("x0")));
  // -> is right-associative
  CHECK(F("x0 -> x1 -> x2") ==
        Formula::imp(Formula::var("x0"),
                     Formula::imp(Formula::var("x1"), Formula::var("x2"))));
  CHECK(F("box x0 & x1") ==
        Formula::conj(Formula::box(Formula::var("x0")), Formula::var("x1")));
  CHECK(F("K2 x0 -> x0") ==
        Formula::imp(Formula::know(2, Formula::var("x0")), Formula::var("x0")));
  CHECK_THROWS_AS(F("x0 == x1 == x2"), ParseError);
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(F("K1 x ->"), ParseError);
  try {
    F("K1 x ->");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.column == 8);
  }
  CHECK_THROWS_AS(F("K3 x", 2), ParseError);       // agent out of range
  CHECK_THROWS_AS(F("C{} x", 2), ParseError);      // empty group
  CHECK_THROWS_AS(F("(x0 -> x1", 2), ParseError);  // missing paren
}

TEST_CASE("printing resugars ~, true, <->, == and dia") {
  CHECK(printFormula(Formula::imp(Formula::var("x0"), Formula::bottom())) ==
        "~x0");
  CHECK(printFormula(Formula::box(Formula::conj(
            Formula::imp(Formula::var("x0"), Formula::var("x1")),
            Formula::imp(Formula::var("x1"), Formula::var("x0"))))) ==
        "x0 == x1");
  CHECK(printFormula(Formula::common(Group{1, 2}, Formula::var("x0"))) ==
        "C{1,2} x0");
  CHECK(printFormula(Formula::top()) == "true");
  CHECK(printFormula(Formula::dia(Formula::var("x0"))) == "dia x0");
}

TEST_CASE("parse after print is the identity on random formulas") {
  std::mt19937_64 rng(20240817);
  for (int i = 0; i < 500; ++i) {
    Formula f = randomFormula(rng, 1 + static_cast<int>(rng() % 8), 3);
    Formula back = parseFormula(printFormula(f), 3);
    CHECK(back == f);
  }
}

TEST_CASE("substitution replaces exactly the named variable") {
  Formula xToX = F("x -> x", 1);
  CHECK(substitute(xToX, "x", Formula::bottom()) == F("false -> false", 1));
  CHECK(substitute(F("K1 x"), "x", F("box y")) == F("K1 box y"));
  CHECK(substitute(F("y", 1), "x", Formula::bottom()) == F("y", 1));
}

TEST_CASE("substitution composes like simultaneous substitution") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Formula chi = randomFormula(rng, 4, 2);
    Formula phi = randomFormula(rng, 2, 2, false);
    Formula psi = randomFormula(rng, 2, 2);
    // y must not occur in phi for sequential == simultaneous
    bool yInPhi = false;
    std::set<std::string> vars;
    phi.collectVars(vars);
    yInPhi = vars.count("x1") > 0;
    if (yInPhi) continue;
    Formula seq = substitute(substitute(chi, "x0", phi), "x1", psi);
    // simultaneous: rename through a fresh variable
    Formula viaFresh =
        substitute(substitute(substitute(chi, "x1", Formula::var("fresh")),
                              "x0", phi),
                   "fresh", psi);
    CHECK(seq == viaFresh);
  }
}

TEST_CASE("propositional abstraction maps modal subtrees to shared atoms") {
  // box x | ~box x  ->  p0 | ~p0
  Formula f = F("box x | ~box x");
  Abstraction a = abstractPropositional(f);
  CHECK(a.propositional ==
        Formula::disj(Formula::var("p0"), Formula::neg(Formula::var("p0"))));
  CHECK(a.atomMeaning.at("p0") == F("box x"));

  // (K1 x -> y) -> (K1 x -> y) has the propositional form q -> q
  Abstraction b = abstractPropositional(F("(K1 x -> y) -> (K1 x -> y)"));
  CHECK(b.propositional ==
        Formula::imp(Formula::imp(Formula::var("p0"), Formula::var("p1")),
                     Formula::imp(Formula::var("p0"), Formula::var("p1"))));

  // x and box x get distinct atoms
  Abstraction c = abstractPropositional(F("x -> (box x -> x)"));
  CHECK(c.propositional ==
        Formula::imp(Formula::var("p0"),
                     Formula::imp(Formula::var("p1"), Formula::var("p0"))));
  CHECK(c.atomMeaning.at("p0") == Formula::var("x"));
  CHECK(c.atomMeaning.at("p1") == F("box x"));
}

TEST_CASE("abstraction is injective on modal atoms") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    Formula f = randomFormula(rng, 5, 2);
    Abstraction a = abstractPropositional(f);
    CHECK(a.propositional.isPropositional());
    // distinct atoms map to distinct subtrees
    std::set<Formula> images;
    for (const auto& [atom, sub] : a.atomMeaning) images.insert(sub);
    CHECK(images.size() == a.atomMeaning.size());
  }
}

TEST_CASE("everyone-knows expansion") {
  Group g12{1, 2};
  Formula x = Formula::var("x");
  CHECK(expandEveryone(g12, 0, x) == x);
  CHECK(expandEveryone(Group{1}, 2, x) ==
        Formula::know(1, Formula::know(1, x)));
  CHECK(expandEveryone(g12, 1, x) ==
        Formula::conj(Formula::know(1, x), Formula::know(2, x)));
  CHECK(expandEveryone(g12, 2, x) ==
        Formula::conj(
            Formula::know(1, Formula::conj(Formula::know(1, x),
                                           Formula::know(2, x))),
            Formula::know(2, Formula::conj(Formula::know(1, x),
                                           Formula::know(2, x)))));
  CHECK_THROWS_AS(expandEveryone(g12, 30, x, 10000), BudgetExceeded);
}

TEST_CASE("language fragments") {
  CHECK(inLanguage(F("K1 (x & y)", 1), LanguageId::FmE, 1));
  CHECK(!inLanguage(F("box x"), LanguageId::FmE, 1));
  CHECK(!inLanguage(F("C{1,2} x"), LanguageId::FmE, 2));
  CHECK(inLanguage(F("C{1,2} box x"), LanguageId::Fm, 2));
  CHECK(!inLanguage(F("K2 x"), LanguageId::Fm, 1));  // agent bound
}

TEST_CASE("batch parsing with comments") {
  auto lines = parseFormulaLines("# header\nx0 -> x0\n\nK1 x1 # trailing\n", 2);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].first == 2);
  CHECK(lines[1].first == 4);
  CHECK(lines[1].second == F("K1 x1"));
}
