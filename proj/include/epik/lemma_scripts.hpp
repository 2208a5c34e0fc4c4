#pragma once

#include <string>
#include <vector>

#include "epik/kernel.hpp"

namespace epik {

// Step-by-step construction of derivations. Every emitting method validates
// the shape it relies on, so script bugs surface at build time; the result
// still goes through checkDerivation like any other derivation.
class DerivationBuilder {
 public:
  explicit DerivationBuilder(LogicId logic, std::vector<Formula> hyps = {});

  std::size_t axiom(SchemeId s, Formula f);
  std::size_t intAx(Formula f);  // AXIOM INT
  std::size_t hyp(std::size_t k);
  std::size_t mp(std::size_t ant, std::size_t imp);
  std::size_t an(std::size_t axiomStep);
  // Splices a hypothesis-free derivation, shifting its references.
  std::size_t append(const Derivation& closed);

  // box f for an INT instance f
  std::size_t necInt(Formula f);
  // from box(a -> b), conclude box a -> box b
  std::size_t distrib(std::size_t boxImp);
  // from box(a -> b) and box a, conclude box b
  std::size_t boxMp(std::size_t boxImp, std::size_t boxA);
  // taut proves p1 -> (p2 -> ... -> q); feeds the premises in order
  std::size_t mpChain(std::size_t taut, const std::vector<std::size_t>& premises);
  // boxed modus ponens chain: taut is an INT instance p1 -> ... -> q, the
  // premises prove box p1, ..., box pk; concludes box q
  std::size_t boxChain(const Formula& taut,
                       const std::vector<std::size_t>& boxedPremises);
  std::size_t impTrans(std::size_t ab, std::size_t bc);  // a->b, b->c |- a->c
  std::size_t conjIntro(std::size_t a, std::size_t b);
  // from a->b and b->a, conclude a <-> b
  std::size_t iffIntro(std::size_t ab, std::size_t ba);
  // from box a and box b, conclude box (a & b)
  std::size_t boxConj(std::size_t boxA, std::size_t boxB);

  Formula at(std::size_t i) const;
  const Derivation& derivation() const { return d_; }
  const LogicId& logic() const { return logic_; }

 private:
  LogicId logic_;
  Derivation d_;
};

// A pre-built derivation certifying one of the bundled theorems. homeLogic is
// the weakest logic whose axiom set the script draws from; the script also
// checks under any logic with a superset of those schemes.
struct LemmaScript {
  std::string name;
  LogicId homeLogic;
  Derivation derivation;
  Formula expected;
  int minAgents = 1;
  // logics the script is deliberately re-checked under even though its
  // schemes are not all available there (the run is expected to fail)
  std::vector<Logic> crossChecks;
};

// All bundled scripts at the given instantiation. Defaults follow the fixed
// instantiation phi := x0, psi := x1, agents 1 and 2, group {1,2}.
std::vector<LemmaScript> bundledScripts(int agents = 2);
std::vector<LemmaScript> bundledScripts(int agents, const Formula& phi,
                                        const Formula& psi);

// The derivation of the common-knowledge step scheme CG f -> CG Ki f from
// the other axioms (it leans on common-knowledge introspection, so it checks
// under L5AC and fails under L5ACminus).
LemmaScript redundantCommonStepScript(int agents = 2);

struct ScriptOutcome {
  std::string name;
  bool pass = false;
  bool expectedPass = true;
  std::string detail;  // first diagnostic on failure
  Formula theorem;     // the expected theorem
};

struct ScriptReport {
  LogicId logic{Logic::L5, 1};
  std::vector<ScriptOutcome> outcomes;
  bool allAsExpected = true;
  std::string str() const;
};

// Checks every bundled script that fits the logic (scheme subset and agent
// bounds), plus the declared cross-checks, under that logic.
ScriptReport runRegressionScripts(const LogicId& logic);

}  // namespace epik
