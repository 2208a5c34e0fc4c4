#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "epik/formula.hpp"
#include "epik/heyting.hpp"
#include "epik/kernel.hpp"

namespace epik {

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Heyting algebra expansion: a designated ultrafilter of classically true
// propositions plus unary operator tables for the proof predicate, knowledge
// and common knowledge. Which parts a model needs depends on the logic; a
// richer structure is validated through its reduct.
struct ModelExpansion {
  std::string label;
  HeytingAlgebra algebra;
  int agents = 0;
  std::optional<std::vector<int>> trueFilter;  // ascending element indices
  std::optional<std::vector<int>> boxTable;
  std::map<AgentId, std::vector<int>> knowTables;
  std::map<std::uint32_t, std::vector<int>> commonTables;  // by group mask

  bool inTrue(int m) const;
  int box(int m) const;
  int know(AgentId i, int m) const;
  int common(std::uint32_t groupMask, int m) const;
};

// Checks that every table the logic needs is present and total.
// Throws ModelError otherwise.
void requireShape(const LogicId& logic, const ModelExpansion& m);

struct ConditionResult {
  std::string id;
  bool pass = true;
  std::string witness;  // first counterexample, when failing
};

struct ValidationReport {
  LogicId logic{Logic::L5, 1};
  std::string route;
  std::vector<ConditionResult> conditions;
  bool valid = true;
  std::string str(const std::string& modelLabel = "") const;
};

// Truth conditions quantified over prime filters and ultrafilters: knowledge
// and common-knowledge preimage sets must form (prime) filters with the
// required inclusions.
ValidationReport validateFilterRoute(const LogicId& logic,
                                     const ModelExpansion& m);

// The equivalent pointwise inequations on the operator tables.
ValidationReport validateInequationalRoute(const LogicId& logic,
                                           const ModelExpansion& m);

bool isValidModel(const LogicId& logic, const ModelExpansion& m);

// ---------------------------------------------------------------------------
// Satisfaction

using Assignment = std::map<std::string, int>;

// Homomorphic extension of the assignment. Throws ModelError on unbound
// variables or operators the model has no table for.
int evaluate(const ModelExpansion& m, const Assignment& g, const Formula& f);

// IEL-satisfaction is denotation of top; the classical satisfaction relations
// ask for membership in TRUE.
bool satisfies(const LogicId& logic, const ModelExpansion& m,
               const Assignment& g, const Formula& f);

// Epistemic tables preserve top and are monotone (a consequence of validity,
// checked directly).
struct OperatorLawsReport {
  bool ok = true;
  std::string failure;
};
OperatorLawsReport checkOperatorLaws(const ModelExpansion& m);

// ---------------------------------------------------------------------------
// Sweeps and search

// The logic's axiom schemes instantiated at phi := x, psi := y (z for the
// three-variable intuitionistic schemes), over every agent, group and
// subgroup choice; the INT entries are a fixed axiomatization of the
// intuitionistic propositional calculus.
std::vector<std::pair<SchemeId, Formula>> axiomInstances(const LogicId& logic);

struct SweepViolation {
  std::string model;
  std::string instance;
  std::string assignment;
};

struct SweepReport {
  long long checks = 0;
  std::vector<SweepViolation> violations;
  bool ok() const { return violations.empty(); }
};

// On every given model (assumed valid), every axiom instance under every
// assignment of its variables: non-TND instances must denote top, TND must
// denote a classically true proposition.
SweepReport soundnessSweep(const LogicId& logic,
                           const std::vector<ModelExpansion>& models);

// Both validators run on a stream of seeded random candidate expansions over
// the full algebra corpus (arbitrary tables, monotone tables, and corrupted
// valid constructions); any verdict disagreement is recorded. The two routes
// characterize the same model class, so zero disagreements are expected.
struct EquivalenceReport {
  long long candidates = 0;
  long long valid = 0;
  long long disagreements = 0;
  std::string firstDisagreement;
};
EquivalenceReport validatorEquivalenceSweep(const LogicId& logic,
                                            int candidates,
                                            std::uint64_t seed);

// Deterministic stream of valid models over one algebra: the box table is
// forced, every ultrafilter is tried as TRUE, epistemic tables are enumerated
// monotone within cheap pointwise bounds and then fully validated. Stops
// after `limit` valid models or `candidateBudget` validation attempts
// (non-positive budget means unbounded).
std::vector<ModelExpansion> generateValidModels(const LogicId& logic,
                                                const HeytingAlgebra& h,
                                                const std::string& algebraLabel,
                                                int limit,
                                                long long candidateBudget = -1);

enum class Fixture { A, B, C, D };
ModelExpansion makeFixture(Fixture f);
std::optional<Fixture> fixtureFromName(const std::string& name);

// Fixtures that fit the logic plus generated models over the corpus algebras
// of size <= 6; all validated.
std::vector<ModelExpansion> modelCorpus(const LogicId& logic,
                                        int perAlgebraLimit = 24);

struct SearchBounds {
  int maxAlgebraSize = 6;
  int perAlgebraLimit = 400;
  long long candidateBudget = 20000;  // validation attempts per algebra
};

struct Countermodel {
  ModelExpansion model;
  Assignment assignment;
};

// First valid model and assignment (in the deterministic search order) that
// fails to satisfy f, or nullopt when the bounded search is exhausted. A
// nullopt is inconclusive: these logics carry no finite-model guarantee.
std::optional<Countermodel> countermodelSearch(const LogicId& logic,
                                               const Formula& f,
                                               const SearchBounds& bounds = {});

// ---------------------------------------------------------------------------
// Text format: the algebra section followed by
//   agents 2
//   TRUE: 1,2,3,4
//   box: 0->0 1->0 ... 4->4
//   K1: 0->0 ...
//   C{1,2}: 0->0 ...
ModelExpansion parseModelText(const std::string& text);
std::string modelToText(const ModelExpansion& m);

}  // namespace epik
