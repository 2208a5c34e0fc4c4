#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "epik/formula.hpp"

namespace epik {

enum class Logic { IEL, L5, EL5, L5ACminus, L5AC };

// A logic together with its agent count. IEL, EL5 and L5 are single-agent;
// the access-based logics take any N >= 1.
struct LogicId {
  Logic logic;
  int agents = 1;

  LogicId(Logic l, int n = 1);
  LanguageId language() const;
  bool hasBox() const { return logic != Logic::IEL; }
  bool hasKnow() const { return logic != Logic::L5; }
  bool hasCommon() const {
    return logic == Logic::L5ACminus || logic == Logic::L5AC;
  }
  std::string name() const;
  bool operator==(const LogicId& o) const {
    return logic == o.logic && agents == o.agents;
  }
};

std::optional<Logic> logicFromName(const std::string& name);

// Axiom schemes. S1..S15 are the numbered schemes of the access-based
// logics; the IEL_/EL5_ entries are the variant epistemic schemes of those
// systems. All schemes except TND are intuitionistically acceptable, i.e.
// admissible premises for the box-introduction rule.
enum class SchemeId {
  INT,  // substitution instances of intuitionistic tautologies
  S1,   // box(f|g) -> box f | box g
  S2,   // box f -> f
  S3,   // box(f->g) -> (box f -> box g)
  S4,   // box f -> box box f
  S5,   // ~box f -> box ~box f
  S6,   // Ki f -> f
  S7,   // Ki(f->g) -> (Ki f -> Ki g)
  S8,   // Ki(f|g) -> Ki f | Ki g
  S9,   // CG(f->g) -> (CG f -> CG g)
  S10,  // CG(f|g) -> CG f | CG g          (introspective systems only)
  S11,  // box f -> box CG f
  S12,  // CG f -> Ki f,     i in G
  S13,  // CG f -> CG Ki f,  i in G
  S14,  // CG f -> CG' f,    non-empty G' subset of G
  S15,  // CG f -> CG CG f                 (introspective systems only)
  TND,  // f | ~f
  IEL_DIST,     // K(f->g) -> (K f -> K g)
  IEL_COREFL,   // f -> K f
  IEL_INTREFL,  // K f -> ~~f
  EL5_INTREFL,  // K f -> ~~f
  EL5_DIST,     // K(f->g) -> (K f -> K g)
  EL5_WEAKCO,   // box f -> box K f
};

std::string schemeName(SchemeId s);
std::optional<SchemeId> schemeFromName(const std::string& name);
bool intuitionisticallyAcceptable(SchemeId s);  // everything except TND
const std::vector<SchemeId>& axiomSchemes(Logic logic);
bool schemeInLogic(const LogicId& logic, SchemeId s);

struct SchemeNotInLogic : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Whether f lies in the logic's object language (fragment and agent bounds).
bool formulaInLogic(const Formula& f, const LogicId& logic);

// True iff f instantiates the scheme, with formula metavariables ranging
// over the logic's language and agent/group metavariables over 1..N. Throws
// SchemeNotInLogic when the scheme is not an axiom of the logic.
bool matchScheme(const LogicId& logic, SchemeId scheme, const Formula& f);

// ---------------------------------------------------------------------------
// Derivations

struct Justification {
  enum class Rule { Axiom, Hyp, Mp, An };
  Rule rule;
  SchemeId scheme = SchemeId::INT;  // Axiom
  std::size_t i = 0;                // Hyp index / Mp antecedent / An premise
  std::size_t j = 0;                // Mp implication

  static Justification axiom(SchemeId s);
  static Justification hyp(std::size_t k);
  static Justification mp(std::size_t ant, std::size_t imp);
  static Justification an(std::size_t premise);
  std::string str() const;
};

struct Step {
  Formula formula;
  Justification just;
};

// A finite sequence of steps, each an axiom instance, a hypothesis, or the
// result of modus ponens / box introduction applied to earlier steps.
struct Derivation {
  std::vector<Formula> hypotheses;
  std::vector<Step> steps;

  Formula conclusion() const;  // last step's formula
};

struct StepDiagnostic {
  std::size_t step;
  std::string reason;
};

struct CheckResult {
  bool ok = false;
  std::optional<Formula> theorem;  // set when ok
  std::vector<StepDiagnostic> diagnostics;
  std::string summary() const;
};

// Validates every step. Diagnostics cover: scheme not in logic, bad scheme
// match, hypothesis index out of range, modus ponens shape mismatch, forward
// or out-of-range references, box introduction over a non-axiom step or over
// TND, formulas outside the logic's language.
CheckResult checkDerivation(const LogicId& logic, const Derivation& d);

// Hypothesis discharge: given a valid derivation of psi from hypotheses
// H + [h], returns a valid derivation of h -> psi from H. The rewrite uses
// only INT instances and modus ponens around the original steps; box
// introduction steps are unaffected since their premises are axioms.
// Throws std::invalid_argument when d is invalid or has no hypotheses.
Derivation applyDeductionTheorem(const LogicId& logic, const Derivation& d);

// Box introduction for full derivations: given a valid, hypothesis-free
// derivation of psi that never invokes TND, returns a valid derivation of
// box psi. Axiom steps gain an An step, modus ponens compiles through the
// box distribution axiom, inner An steps through box idempotence.
// Throws std::invalid_argument when preconditions fail.
Derivation necessitate(const LogicId& logic, const Derivation& d);

// ---------------------------------------------------------------------------
// Proof files

// Format:
//   logic L5AC agents 2
//   hyp <formula>                (zero or more)
//   0: <formula> ; AXIOM <scheme>
//   1: <formula> ; HYP 0 | MP <i> <j> | AN <i>
struct ProofFile {
  LogicId logic{Logic::L5, 1};
  Derivation derivation;
};
ProofFile parseProofFile(const std::string& text);
std::string proofToText(const LogicId& logic, const Derivation& d);

}  // namespace epik
