#include "epik/common_knowledge.hpp"

#include "doctest.h"

using namespace epik;

namespace {
const LogicId kL5AC{Logic::L5AC, 2};
const LogicId kL5ACminus{Logic::L5ACminus, 2};
const Group g12{1, 2};
}  // namespace

TEST_CASE("knowledge and common-knowledge sets on the fixtures") {
  ModelExpansion a = makeFixture(Fixture::A);
  CHECK(belSet(a, 1) == std::vector<int>{1, 2, 3, 4});
  CHECK(belSet(a, 2) == std::vector<int>{2, 3, 4});
  CHECK(commonSet(a, g12) == belSet(a, 2));

  ModelExpansion b = makeFixture(Fixture::B);
  CHECK(commonSet(b, g12) == std::vector<int>{3, 4});

  ModelExpansion c = makeFixture(Fixture::C);
  CHECK(belSet(c, 1) == std::vector<int>{1, 2, 3, 4});
  CHECK(belSet(c, 2) == std::vector<int>{2, 3, 4});
  CHECK(commonSet(c, g12) == std::vector<int>{3, 4});
}

TEST_CASE("closures reached by iterated knowledge") {
  ModelExpansion a = makeFixture(Fixture::A);
  CHECK(gClosure(a, g12, 3) == std::vector<int>{3});
  CHECK(gClosure(a, g12, 1) == std::vector<int>{0, 1});  // K2 drops 1/4 to 0
  CHECK(gClosure(a, g12, 4) == std::vector<int>{4});
  ModelExpansion c = makeFixture(Fixture::C);
  CHECK(gClosure(c, g12, 2) == std::vector<int>{0, 1, 2});
}

TEST_CASE("greatest closed sets on the fixtures") {
  ModelExpansion a = makeFixture(Fixture::A);
  CHECK(greatestClosed(a, g12) == std::vector<int>{2, 3, 4});
  ModelExpansion b = makeFixture(Fixture::B);
  CHECK(greatestClosed(b, g12) == std::vector<int>{2, 3, 4});
  ModelExpansion c = makeFixture(Fixture::C);
  CHECK(greatestClosed(c, g12) == std::vector<int>{3, 4});
  CHECK(greatestClosed(c, Group{1}) == std::vector<int>{1, 2, 3, 4});
  CHECK(greatestClosed(c, Group{2}) == std::vector<int>{3, 4});
}

TEST_CASE("intended-model verdicts match the worked examples") {
  IntendedReport a = analyzeIntended(makeFixture(Fixture::A));
  CHECK(a.intended);
  CHECK(a.crossChecksAgree);

  IntendedReport b = analyzeIntended(makeFixture(Fixture::B));
  CHECK(!b.intended);
  CHECK(b.crossChecksAgree);
  bool witnessed = false;
  for (const GroupVerdict& v : b.groups)
    if (v.group == g12) {
      CHECK(!v.intended);
      REQUIRE(v.witness.has_value());
      CHECK(*v.witness == 2);  // 1/2: closure true, common knowledge false
      witnessed = true;
    } else {
      CHECK(v.intended);
    }
  CHECK(witnessed);

  IntendedReport c = analyzeIntended(makeFixture(Fixture::C));
  CHECK(c.intended);
  CHECK(c.crossChecksAgree);
  // non-trivial: common knowledge strictly below each member's knowledge
  ModelExpansion cm = makeFixture(Fixture::C);
  std::vector<int> common = commonSet(cm, g12);
  for (AgentId i : {1, 2}) {
    std::vector<int> bel = belSet(cm, i);
    CHECK(std::includes(bel.begin(), bel.end(), common.begin(), common.end()));
    CHECK(bel.size() > common.size());
  }

  IntendedReport d = analyzeIntended(makeFixture(Fixture::D));
  CHECK(d.crossChecksAgree);  // valid only without introspection
}

TEST_CASE("closure soundness and nesting on every valid corpus model") {
  for (const LogicId& logic : {kL5ACminus, kL5AC}) {
    for (const ModelExpansion& m : modelCorpus(logic, 8)) {
      ClosureSoundnessReport cs = checkClosureSoundness(m);
      CHECK_MESSAGE(cs.ok, m.label, ": ", cs.failure);
      ClosureNestingReport cn = checkClosureNesting(m);
      CHECK_MESSAGE(cn.ok, m.label, ": ", cn.failure);
      IntendedReport rep = analyzeIntended(m);
      CHECK_MESSAGE(rep.crossChecksAgree, m.label,
                    ": fixpoint characterization out of step");
    }
  }
}

TEST_CASE("closure of anything true under common knowledge stays true") {
  ModelExpansion b = makeFixture(Fixture::B);
  // C{1,2}(3/4) is true and the closure of 3/4 collapses to itself
  CHECK(b.inTrue(b.common(g12.mask(), 3)));
  CHECK(gClosure(b, g12, 3) == std::vector<int>{3});
  // top closes onto itself in any model
  CHECK(gClosure(b, g12, 4) == std::vector<int>{4});
}

TEST_CASE("subgroup monotonicity of common knowledge") {
  for (const LogicId& logic : {kL5ACminus, kL5AC}) {
    for (const ModelExpansion& m : modelCorpus(logic, 8)) {
      std::vector<int> cg = commonSet(m, g12);
      for (AgentId i : {1, 2}) {
        std::vector<int> ci = commonSet(m, Group{i});
        CHECK_MESSAGE(
            std::includes(ci.begin(), ci.end(), cg.begin(), cg.end()),
            m.label, " group {", i, "}");
      }
    }
  }
}

TEST_CASE("bounded iterated-knowledge echo of the closure test") {
  // if m is common knowledge, every E_G^n instance up to n=4 is true
  for (Fixture f : {Fixture::A, Fixture::B, Fixture::C}) {
    ModelExpansion m = makeFixture(f);
    for (int a : commonSet(m, g12)) {
      for (int n = 0; n <= 4; ++n) {
        Formula echo = expandEveryone(g12, n, Formula::var("x"));
        CHECK(m.inTrue(evaluate(m, {{"x", a}}, echo)));
      }
    }
  }
}
