// Acceptance suite: one pass/fail line per criterion, exit 0 only when every
// criterion holds. `--write-golden` regenerates the frozen fixture reports.

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "epik/common_knowledge.hpp"
#include "epik/ipc.hpp"
#include "epik/lemma_scripts.hpp"
#include "epik/models.hpp"
#include "test_support.hpp"

#ifndef EPIK_GOLDEN_DIR
#define EPIK_GOLDEN_DIR "tests/golden"
#endif

using namespace epik;

namespace {

int failures = 0;

struct Criterion {
  std::string name;
  bool pass = true;
  std::string detail;
  double seconds = 0;
};

std::vector<Criterion> results;

template <typename Body>
void criterion(const std::string& name, double budgetSeconds, Body&& body) {
  Criterion c;
  c.name = name;
  auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = std::string("exception: ") + e.what();
  }
  c.seconds = std::chrono::duration<double>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  if (budgetSeconds > 0 && c.seconds > budgetSeconds) {
    c.pass = false;
    if (!c.detail.empty()) c.detail += "; ";
    c.detail += "over time budget of " + std::to_string(budgetSeconds) + "s";
  }
  results.push_back(c);
  if (!c.pass) ++failures;
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << (c.pass ? "PASS" : "FAIL") << "  " << name << "  (" << c.seconds
       << "s)";
  if (!c.detail.empty()) line << "  -- " << c.detail;
  std::cout << line.str() << "\n" << std::flush;
}

void expect(Criterion& c, bool cond, const std::string& what) {
  if (!cond && c.pass) {
    c.pass = false;
    c.detail = what;
  }
}

// ---------------------------------------------------------------------------
// golden files

std::string goldenPath(const std::string& name) {
  return std::string(EPIK_GOLDEN_DIR) + "/" + name;
}

std::string checkReport(const LogicId& logic, const ModelExpansion& m) {
  ValidationReport filter = validateFilterRoute(logic, m);
  ValidationReport ineq = validateInequationalRoute(logic, m);
  std::string out = filter.str(m.label) + ineq.str(m.label);
  out += "routes agree: ";
  out += (filter.valid == ineq.valid ? "yes" : "NO");
  out += "\n";
  return out;
}

struct GoldenEntry {
  std::string file;
  std::string content;
};

std::vector<GoldenEntry> goldenEntries() {
  const LogicId ac(Logic::L5AC, 2);
  const LogicId acm(Logic::L5ACminus, 2);
  std::vector<GoldenEntry> out;
  for (Fixture f : {Fixture::A, Fixture::B, Fixture::C}) {
    ModelExpansion m = makeFixture(f);
    out.push_back({m.label + ".check.txt", checkReport(ac, m)});
    out.push_back({m.label + ".intended.txt", analyzeIntended(m).str(m.algebra)});
  }
  ModelExpansion d = makeFixture(Fixture::D);
  out.push_back({"fixtureD.check-introspective.txt", checkReport(ac, d)});
  out.push_back({"fixtureD.check-basic.txt", checkReport(acm, d)});
  out.push_back({"fixtureD.intended.txt", analyzeIntended(d).str(d.algebra)});
  return out;
}

// ---------------------------------------------------------------------------
// exhaustive propositional formula enumeration (binary connectives only, so
// sizes are odd)

void enumerateFormulas(int maxNodes, std::vector<Formula>& out) {
  std::vector<std::vector<Formula>> bySize(maxNodes + 1);
  if (maxNodes >= 1)
    bySize[1] = {Formula::var("x"), Formula::var("y"), Formula::bottom()};
  for (int n = 3; n <= maxNodes; n += 2)
    for (int l = 1; l < n - 1; l += 2) {
      int r = n - 1 - l;
      for (const Formula& a : bySize[l])
        for (const Formula& b : bySize[r]) {
          bySize[n].push_back(Formula::conj(a, b));
          bySize[n].push_back(Formula::disj(a, b));
          bySize[n].push_back(Formula::imp(a, b));
        }
    }
  for (int n = 1; n <= maxNodes; ++n)
    for (const Formula& f : bySize[n]) out.push_back(f);
}

}  // namespace

int main(int argc, char** argv) {
  bool writeGolden = argc > 1 && std::string(argv[1]) == "--write-golden";
  if (writeGolden) {
    for (const GoldenEntry& e : goldenEntries()) {
      std::ofstream f(goldenPath(e.file), std::ios::binary);
      f << e.content;
      std::cout << "wrote " << goldenPath(e.file) << "\n";
    }
    return 0;
  }

  const LogicId ac(Logic::L5AC, 2);
  const LogicId acm(Logic::L5ACminus, 2);
  const LogicId iel(Logic::IEL);

  // 1. bundled derivation scripts under their minimal logics
  criterion("1 kernel regressions", 5.0, [&](Criterion& c) {
    ScriptReport l5 = runRegressionScripts(LogicId(Logic::L5));
    expect(c, l5.allAsExpected && l5.outcomes.size() == 11,
           "proof-predicate scripts under L5");
    for (const auto& o : l5.outcomes) expect(c, o.pass, "L5: " + o.name);

    ScriptReport minus = runRegressionScripts(acm);
    expect(c, minus.allAsExpected, "scripts under L5ACminus");
    int checked = 0;
    for (const auto& o : minus.outcomes) {
      if (o.name == "common-step-redundancy") {
        expect(c, !o.pass && !o.expectedPass,
               "the redundancy derivation must fail without introspection");
      } else {
        expect(c, o.pass, "L5ACminus: " + o.name);
        ++checked;
      }
    }
    expect(c, checked == 18, "eighteen scripts fit L5ACminus");

    ScriptReport full = runRegressionScripts(ac);
    expect(c, full.allAsExpected, "scripts under L5AC");
    bool sawRedundancy = false;
    for (const auto& o : full.outcomes) {
      expect(c, o.pass, "L5AC: " + o.name);
      if (o.name == "common-step-redundancy") sawRedundancy = true;
    }
    expect(c, sawRedundancy, "redundancy script present under L5AC");
  });

  // 2. box introduction over TND is always rejected with its diagnostic
  criterion("2 box-introduction restriction", 0, [&](Criterion& c) {
    int injected = 0, rejected = 0;
    for (const LemmaScript& s : bundledScripts(2)) {
      if (!schemeInLogic(s.homeLogic, SchemeId::TND)) continue;
      Derivation bad = s.derivation;
      Formula inst =
          Formula::disj(Formula::var("x0"), Formula::neg(Formula::var("x0")));
      bad.steps.push_back({inst, Justification::axiom(SchemeId::TND)});
      bad.steps.push_back(
          {Formula::box(inst), Justification::an(bad.steps.size() - 1)});
      ++injected;
      CheckResult r = checkDerivation(s.homeLogic, bad);
      bool diagnosed = false;
      for (const auto& d : r.diagnostics)
        if (d.reason == "box introduction applied to TND") diagnosed = true;
      if (!r.ok && diagnosed) ++rejected;
    }
    expect(c, injected >= 20, "fault corpus is non-trivial");
    expect(c, rejected == injected,
           std::to_string(rejected) + "/" + std::to_string(injected) +
               " rejected");
  });

  // 3. the two validator routes agree on >= 10^4 candidates per logic
  criterion("3 validator equivalence", 300.0, [&](Criterion& c) {
    for (Logic l :
         {Logic::IEL, Logic::L5, Logic::EL5, Logic::L5ACminus, Logic::L5AC}) {
      LogicId id(l, (l == Logic::L5ACminus || l == Logic::L5AC) ? 2 : 1);
      EquivalenceReport r = validatorEquivalenceSweep(id, 10000, 20240817);
      expect(c, r.candidates >= 10000, id.name() + ": candidate count");
      expect(c, r.disagreements == 0,
             id.name() + ": " + r.firstDisagreement);
    }
  });

  // 4. soundness: non-TND axioms denote top, TND stays classically true
  criterion("4 soundness sweep", 0, [&](Criterion& c) {
    for (Logic l :
         {Logic::IEL, Logic::L5, Logic::EL5, Logic::L5ACminus, Logic::L5AC}) {
      LogicId id(l, (l == Logic::L5ACminus || l == Logic::L5AC) ? 2 : 1);
      std::vector<ModelExpansion> corpus = modelCorpus(id, 24);
      expect(c, !corpus.empty(), id.name() + ": empty model corpus");
      SweepReport r = soundnessSweep(id, corpus);
      expect(c, r.ok(),
             id.name() + ": " +
                 (r.violations.empty()
                      ? ""
                      : r.violations[0].model + " " +
                            r.violations[0].instance + " at " +
                            r.violations[0].assignment));
    }
  });

  // 5. kernel-certified theorems are true in every valid corpus model
  criterion("5 theorem truth", 0, [&](Criterion& c) {
    for (Logic l :
         {Logic::IEL, Logic::L5, Logic::EL5, Logic::L5ACminus, Logic::L5AC}) {
      LogicId id(l, (l == Logic::L5ACminus || l == Logic::L5AC) ? 2 : 1);
      std::vector<ModelExpansion> corpus = modelCorpus(id, 24);
      ScriptReport scripts = runRegressionScripts(id);
      for (const ScriptOutcome& o : scripts.outcomes) {
        if (!o.expectedPass || !o.pass) continue;
        auto vars = o.theorem.vars();
        for (const ModelExpansion& m : corpus) {
          std::vector<int> tuple(vars.size(), 0);
          for (;;) {
            Assignment g;
            for (std::size_t i = 0; i < vars.size(); ++i)
              g[vars[i]] = tuple[i];
            if (!satisfies(id, m, g, o.theorem))
              expect(c, false, o.name + " fails in " + m.label);
            std::size_t k = 0;
            while (k < tuple.size() && ++tuple[k] == m.algebra.size)
              tuple[k++] = 0;
            if (k == tuple.size() || tuple.empty()) break;
          }
        }
      }
    }
  });

  // 6. filter theory, exhaustively on every corpus algebra
  criterion("6 filter theory", 30.0, [&](Criterion& c) {
    int algebras = 0;
    for (const CorpusEntry& entry : algebraCorpus()) {
      ++algebras;
      FilterTheoryReport r = checkFilterTheory(entry.algebra);
      expect(c, r.ok, entry.label + ": " + r.failure);
    }
    expect(c, algebras == 30, "corpus size");
  });

  // 7. operator laws, closure nesting/soundness, fixpoint cross-check
  criterion("7 operator and closure laws", 0, [&](Criterion& c) {
    for (Logic l :
         {Logic::IEL, Logic::EL5, Logic::L5ACminus, Logic::L5AC}) {
      LogicId id(l, (l == Logic::L5ACminus || l == Logic::L5AC) ? 2 : 1);
      for (const ModelExpansion& m : modelCorpus(id, 24)) {
        OperatorLawsReport laws = checkOperatorLaws(m);
        expect(c, laws.ok, m.label + ": " + laws.failure);
        if (!id.hasCommon()) continue;
        ClosureSoundnessReport cs = checkClosureSoundness(m);
        expect(c, cs.ok, m.label + ": " + cs.failure);
        ClosureNestingReport cn = checkClosureNesting(m);
        expect(c, cn.ok, m.label + ": " + cn.failure);
        IntendedReport rep = analyzeIntended(m);
        expect(c, rep.crossChecksAgree,
               m.label + ": fixpoint characterization disagrees");
      }
    }
  });

  // 8. fixture verdicts and byte-stable reports
  criterion("8 fixture verdicts", 0, [&](Criterion& c) {
    ModelExpansion a = makeFixture(Fixture::A);
    expect(c, isValidModel(ac, a), "fixture A invalid");
    expect(c, analyzeIntended(a).intended, "fixture A not intended");

    ModelExpansion b = makeFixture(Fixture::B);
    expect(c, isValidModel(ac, b), "fixture B invalid");
    IntendedReport ib = analyzeIntended(b);
    expect(c, !ib.intended, "fixture B should not be intended");
    bool witness = false;
    for (const GroupVerdict& v : ib.groups)
      if (!v.intended && v.witness) witness = true;
    expect(c, witness, "fixture B witness missing");

    ModelExpansion fc = makeFixture(Fixture::C);
    expect(c, isValidModel(ac, fc), "fixture C invalid");
    expect(c, analyzeIntended(fc).intended, "fixture C not intended");
    std::vector<int> common = commonSet(fc, Group{1, 2});
    for (AgentId i : {1, 2}) {
      std::vector<int> bel = belSet(fc, i);
      expect(c,
             std::includes(bel.begin(), bel.end(), common.begin(),
                           common.end()) &&
                 bel.size() > common.size(),
             "fixture C: common knowledge not strictly below agent " +
                 std::to_string(i));
    }

    ModelExpansion d = makeFixture(Fixture::D);
    ValidationReport dIneq = validateInequationalRoute(ac, d);
    expect(c, !dIneq.valid, "fixture D must fail with introspection");
    for (const ConditionResult& cond : dIneq.conditions)
      if (cond.id == "common-introspection")
        expect(c, !cond.pass, "fixture D must fail introspection itself");
      else
        expect(c, cond.pass, "fixture D fails " + cond.id);
    expect(c, isValidModel(acm, d), "fixture D invalid without introspection");

    for (const GoldenEntry& e : goldenEntries()) {
      std::ifstream f(goldenPath(e.file), std::ios::binary);
      if (!f) {
        expect(c, false, "missing golden file " + e.file);
        continue;
      }
      std::ostringstream buf;
      buf << f.rdbuf();
      expect(c, buf.str() == e.content, "golden mismatch: " + e.file);
    }
  });

  // 9. countermodel separations
  criterion("9 countermodel search: co-reflection", 120.0, [&](Criterion& c) {
    auto r = countermodelSearch(ac, parseFormula("x -> K1 x", 2));
    expect(c, r.has_value(), "no countermodel for x -> K1 x");
    if (r)
      expect(c,
             !satisfies(ac, r->model, r->assignment,
                        parseFormula("x -> K1 x", 2)),
             "witness does not refute");
  });
  criterion("9 countermodel search: factivity in IEL", 120.0,
            [&](Criterion& c) {
              auto r = countermodelSearch(iel, parseFormula("K1 x -> x", 1));
              expect(c, r.has_value(), "no countermodel for K1 x -> x");
            });
  criterion("9 exhausted search: factivity holds introspectively", 120.0,
            [&](Criterion& c) {
              auto r = countermodelSearch(ac, parseFormula("K1 x -> x", 2));
              expect(c, !r.has_value(), "unexpected countermodel");
            });
  criterion("9 exhausted search: co-reflection holds in IEL", 120.0,
            [&](Criterion& c) {
              auto r = countermodelSearch(iel, parseFormula("x -> K1 x", 1));
              expect(c, !r.has_value(), "unexpected countermodel");
            });

  // 10. sequent engine vs Kripke oracle, exhaustively to size 8
  criterion("10 decision engine agreement", 120.0, [&](Criterion& c) {
    std::vector<Formula> formulas;
    enumerateFormulas(8, formulas);
    expect(c, formulas.size() == 11451, "enumeration size");
    long long tautologies = 0;
    for (const Formula& f : formulas) {
      bool taut = isIpcTautology(f);
      bool refuted = kripkeCountermodel(f, 5).has_value();
      if (taut) ++tautologies;
      if (taut == refuted) {
        expect(c, false, "disagreement on " + printFormula(f));
        return;
      }
    }
    expect(c, tautologies > 0, "no tautologies in range");

    auto tnd = kripkeCountermodel(parseFormula("x | ~x", 1), 5);
    expect(c, !isIpcTautology(parseFormula("x | ~x", 1)), "x | ~x");
    expect(c, tnd.has_value(), "x | ~x needs a countermodel");
    auto dne = kripkeCountermodel(parseFormula("~~x -> x", 1), 5);
    expect(c, !isIpcTautology(parseFormula("~~x -> x", 1)), "~~x -> x");
    expect(c, dne.has_value(), "~~x -> x needs a countermodel");
  });

  // 11. transformer soundness on a thousand random derivations
  criterion("11 transformer soundness", 0, [&](Criterion& c) {
    std::mt19937_64 rng(987654321);
    std::vector<LogicId> logics = {iel, LogicId(Logic::L5),
                                   LogicId(Logic::EL5), acm, ac};
    int produced = 0;
    for (int round = 0; round < 1000; ++round) {
      const LogicId& logic = logics[round % logics.size()];
      Derivation withHyp =
          epik::testsupport::randomDerivation(rng, logic, true, true);
      if (!checkDerivation(logic, withHyp).ok) {
        expect(c, false, "generator produced an invalid derivation");
        return;
      }
      Derivation discharged = applyDeductionTheorem(logic, withHyp);
      CheckResult r = checkDerivation(logic, discharged);
      expect(c, r.ok, "discharged derivation fails to re-validate");
      if (r.ok)
        expect(c,
               *r.theorem == Formula::imp(withHyp.hypotheses.back(),
                                          withHyp.conclusion()),
               "discharged theorem shape");
      ++produced;
      if (logic.hasBox()) {
        Derivation closed =
            epik::testsupport::randomDerivation(rng, logic, false, false);
        Derivation boxed = necessitate(logic, closed);
        CheckResult br = checkDerivation(logic, boxed);
        expect(c, br.ok, "boxed derivation fails to re-validate");
        if (br.ok)
          expect(c, *br.theorem == Formula::box(closed.conclusion()),
                 "boxed theorem shape");
        ++produced;
      }
    }
    expect(c, produced >= 1000, "fewer than 1000 transformations checked");
  });

  std::cout << (failures == 0 ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL")
            << " (" << (results.size() - failures) << "/" << results.size()
            << " criteria)\n";
  return failures == 0 ? 0 : 1;
}
