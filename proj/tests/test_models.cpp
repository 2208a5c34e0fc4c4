#include "epik/models.hpp"

#include "doctest.h"
#include "epik/lemma_scripts.hpp"

using namespace epik;

namespace {

const LogicId kL5AC{Logic::L5AC, 2};
const LogicId kL5ACminus{Logic::L5ACminus, 2};
const LogicId kL5{Logic::L5};
const LogicId kEL5{Logic::EL5};
const LogicId kIEL{Logic::IEL};

Formula F(const std::string& text, int agents = 2) {
  return parseFormula(text, agents);
}

ModelExpansion ielIdentityFixture() {
  // 3-chain with knowledge as the identity
  ModelExpansion m;
  m.algebra = chainAlgebra(3);
  m.agents = 1;
  m.knowTables[1] = {0, 1, 2};
  m.label = "iel-identity-3chain";
  return m;
}

}  // namespace

TEST_CASE("fixture A validates for the introspective access logic") {
  ModelExpansion a = makeFixture(Fixture::A);
  ValidationReport filter = validateFilterRoute(kL5AC, a);
  ValidationReport ineq = validateInequationalRoute(kL5AC, a);
  CHECK_MESSAGE(filter.valid, filter.str("fixtureA"));
  CHECK_MESSAGE(ineq.valid, ineq.str("fixtureA"));
}

TEST_CASE("fixtures B and C validate; D fails exactly at introspection") {
  for (Fixture f : {Fixture::B, Fixture::C}) {
    ModelExpansion m = makeFixture(f);
    CHECK(validateFilterRoute(kL5AC, m).valid);
    CHECK(validateInequationalRoute(kL5AC, m).valid);
  }
  ModelExpansion d = makeFixture(Fixture::D);
  ValidationReport ineq = validateInequationalRoute(kL5AC, d);
  CHECK(!ineq.valid);
  for (const ConditionResult& c : ineq.conditions) {
    if (c.id == "common-introspection") {
      CHECK(!c.pass);
      CHECK(c.witness.find("3/4") != std::string::npos);
    } else {
      CHECK_MESSAGE(c.pass, c.id, ": ", c.witness);
    }
  }
  CHECK(!validateFilterRoute(kL5AC, d).valid);
  // without introspection the same structure is a model
  CHECK(validateFilterRoute(kL5ACminus, d).valid);
  CHECK(validateInequationalRoute(kL5ACminus, d).valid);
}

TEST_CASE("corrupting the box table trips the dichotomy condition") {
  ModelExpansion a = makeFixture(Fixture::A);
  (*a.boxTable)[2] = 4;  // box(1/2) = top
  ValidationReport r = validateFilterRoute(kL5AC, a);
  CHECK(!r.valid);
  bool found = false;
  for (const auto& c : r.conditions)
    if (c.id == "box-dichotomy" && !c.pass) found = true;
  CHECK(found);
}

TEST_CASE("an identity-knowledge structure is a verification-logic model") {
  ModelExpansion m = ielIdentityFixture();
  ValidationReport filter = validateFilterRoute(kIEL, m);
  ValidationReport ineq = validateInequationalRoute(kIEL, m);
  CHECK_MESSAGE(filter.valid, filter.str());
  CHECK_MESSAGE(ineq.valid, ineq.str());
}

TEST_CASE("evaluation is the homomorphic extension") {
  ModelExpansion a = makeFixture(Fixture::A);
  CHECK(evaluate(a, {}, Formula::top()) == 4);
  CHECK(evaluate(a, {{"x", 2}}, F("K2 x")) == 2);   // 1/2 is known to agent 2
  CHECK(evaluate(a, {{"x", 1}}, F("K2 x")) == 0);   // 1/4 is not
  for (int v = 0; v < 5; ++v) {
    int bx = evaluate(a, {{"x", v}}, F("box x"));
    CHECK((bx == 0 || bx == 4));
  }
  CHECK_THROWS_AS(evaluate(a, {}, F("y")), ModelError);
}

TEST_CASE("satisfaction: top-denotation for IEL, TRUE-membership otherwise") {
  ModelExpansion iel = ielIdentityFixture();
  CHECK(!satisfies(kIEL, iel, {{"x", 1}}, F("x", 1)));  // middle is not top
  CHECK(satisfies(kIEL, iel, {{"x", 2}}, F("x", 1)));

  ModelExpansion a = makeFixture(Fixture::A);
  CHECK(satisfies(kL5AC, a, {{"x", 1}}, F("x")));        // 1/4 in TRUE
  CHECK(!satisfies(kL5AC, a, {{"x", 1}}, F("box x")));   // box(1/4) = 0
  CHECK_THROWS_AS(satisfies(kL5, a, {{"x", 1}}, F("K1 x")), ModelError);
}

TEST_CASE("validator routes agree across fixtures, corruptions and logics") {
  std::vector<ModelExpansion> candidates;
  for (Fixture f : {Fixture::A, Fixture::B, Fixture::C, Fixture::D})
    candidates.push_back(makeFixture(f));
  // a few systematic corruptions
  for (int slot = 0; slot < 5; ++slot) {
    ModelExpansion m = makeFixture(Fixture::A);
    m.knowTables[1][slot] = (slot * 2 + 1) % 5;
    candidates.push_back(m);
    ModelExpansion c = makeFixture(Fixture::C);
    c.commonTables[0b11][slot] = (slot + 3) % 5;
    candidates.push_back(c);
  }
  for (const ModelExpansion& m : candidates)
    for (const LogicId& logic : {kL5AC, kL5ACminus}) {
      bool filter = validateFilterRoute(logic, m).valid;
      bool ineq = validateInequationalRoute(logic, m).valid;
      CHECK_MESSAGE(filter == ineq, m.label, " under ", logic.name());
    }
}

TEST_CASE("soundness sweep over the generated corpus") {
  for (const LogicId& logic : {kIEL, kL5, kEL5, kL5ACminus, kL5AC}) {
    std::vector<ModelExpansion> corpus = modelCorpus(logic, 6);
    REQUIRE(!corpus.empty());
    SweepReport r = soundnessSweep(logic, corpus);
    CHECK_MESSAGE(r.ok(), logic.name(), ": first violation in ",
                  r.violations.empty() ? "" : r.violations[0].model, " at ",
                  r.violations.empty() ? "" : r.violations[0].instance);
    CHECK(r.checks > 0);
  }
}

TEST_CASE("tertium non datur floats below top but stays classically true") {
  // on fixture A with x := 1/4, x | ~x denotes 1/4: in TRUE yet not top
  ModelExpansion a = makeFixture(Fixture::A);
  int v = evaluate(a, {{"x", 1}}, F("x | ~x"));
  CHECK(v == 1);
  CHECK(a.inTrue(v));
  CHECK(v != a.algebra.top);
}

TEST_CASE("operator laws hold on every valid corpus model") {
  for (const LogicId& logic : {kIEL, kEL5, kL5ACminus, kL5AC}) {
    for (const ModelExpansion& m : modelCorpus(logic, 6)) {
      OperatorLawsReport r = checkOperatorLaws(m);
      CHECK_MESSAGE(r.ok, m.label, ": ", r.failure);
    }
  }
}

TEST_CASE("boxed knowledge and boxed common knowledge collapse semantically") {
  std::vector<Formula> pool = {F("x"), F("x & y"), F("~x"), F("x -> y")};
  for (const LogicId& logic : {kL5ACminus, kL5AC}) {
    for (const ModelExpansion& m : modelCorpus(logic, 4)) {
      for (const Formula& phi : pool) {
        auto vars = phi.vars();
        std::vector<int> tuple(vars.size(), 0);
        for (;;) {
          Assignment g;
          for (std::size_t i = 0; i < vars.size(); ++i) g[vars[i]] = tuple[i];
          int boxPhi = evaluate(m, g, Formula::box(phi));
          CHECK(evaluate(m, g, Formula::box(Formula::know(1, phi))) == boxPhi);
          CHECK(evaluate(m, g,
                         Formula::box(Formula::common(Group{1, 2}, phi))) ==
                boxPhi);
          std::size_t k = 0;
          while (k < tuple.size() && ++tuple[k] == m.algebra.size)
            tuple[k++] = 0;
          if (k == tuple.size() || tuple.empty()) break;
        }
      }
    }
  }
}

TEST_CASE("kernel-certified theorems hold in every valid corpus model") {
  for (const LemmaScript& s : bundledScripts(2)) {
    std::vector<ModelExpansion> corpus = modelCorpus(s.homeLogic, 4);
    auto vars = s.expected.vars();
    for (const ModelExpansion& m : corpus) {
      std::vector<int> tuple(vars.size(), 0);
      for (;;) {
        Assignment g;
        for (std::size_t i = 0; i < vars.size(); ++i) g[vars[i]] = tuple[i];
        CHECK_MESSAGE(satisfies(s.homeLogic, m, g, s.expected), s.name,
                      " fails in ", m.label);
        std::size_t k = 0;
        while (k < tuple.size() && ++tuple[k] == m.algebra.size)
          tuple[k++] = 0;
        if (k == tuple.size() || tuple.empty()) break;
      }
    }
  }
}

TEST_CASE("model hierarchy: introspective models embed downward") {
  for (const ModelExpansion& m : modelCorpus(kL5AC, 6)) {
    CHECK(validateInequationalRoute(kL5ACminus, m).valid);
  }
  for (const ModelExpansion& m : modelCorpus(kL5ACminus, 6)) {
    // the single-agent knowledge reduct satisfies the EL5 conditions
    ModelExpansion reduct;
    reduct.label = m.label + "-reduct";
    reduct.algebra = m.algebra;
    reduct.agents = 1;
    reduct.trueFilter = m.trueFilter;
    reduct.boxTable = m.boxTable;
    reduct.knowTables[1] = m.knowTables.at(1);
    CHECK(validateInequationalRoute(kEL5, reduct).valid);
  }
}

TEST_CASE("countermodel search separates the rejected principles") {
  // co-reflection fails in the access-based reading
  auto co = countermodelSearch(kL5AC, F("x -> K1 x"));
  REQUIRE(co.has_value());
  CHECK(!satisfies(kL5AC, co->model, co->assignment, F("x -> K1 x")));

  // factivity fails for verification-based knowledge
  auto fact = countermodelSearch(kIEL, F("K1 x -> x", 1));
  REQUIRE(fact.has_value());
  CHECK(!satisfies(kIEL, fact->model, fact->assignment, F("K1 x -> x", 1)));

  // the dual principles are sound: nothing within the bounds refutes them
  SearchBounds quick{4, 60};
  CHECK(!countermodelSearch(kL5AC, F("K1 x -> x"), quick).has_value());
  CHECK(!countermodelSearch(kIEL, F("x -> K1 x", 1), quick).has_value());
}

TEST_CASE("model text round-trip") {
  for (Fixture f : {Fixture::A, Fixture::D}) {
    ModelExpansion m = makeFixture(f);
    ModelExpansion back = parseModelText(modelToText(m));
    CHECK(back.agents == m.agents);
    CHECK(back.trueFilter == m.trueFilter);
    CHECK(back.boxTable == m.boxTable);
    CHECK(back.knowTables == m.knowTables);
    CHECK(back.commonTables == m.commonTables);
    CHECK(back.algebra.leq == m.algebra.leq);
  }
}

TEST_CASE("shape errors carry the missing piece") {
  ModelExpansion a = makeFixture(Fixture::A);
  a.commonTables.erase(0b11);
  CHECK_THROWS_WITH_AS(requireShape(kL5AC, a),
                       doctest::Contains("C{1,2}"), ModelError);
  ModelExpansion b = makeFixture(Fixture::A);
  b.trueFilter.reset();
  CHECK_THROWS_AS(requireShape(kL5AC, b), ModelError);
}
