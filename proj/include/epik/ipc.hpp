#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "epik/formula.hpp"

namespace epik {

// A sequent Gamma => goal with a duplicate-free antecedent. Purely
// propositional: no Box/Know/Common nodes.
struct Sequent {
  std::set<Formula> antecedent;
  Formula succedent;
};

// Decides intuitionistic propositional validity with a contraction-free
// sequent calculus (terminating proof search, no loop check). Throws
// std::invalid_argument when f contains modal or epistemic nodes.
bool isIpcTautology(const Formula& f);

// True iff f is a substitution instance of an intuitionistic tautology:
// abstracts modal subformulas to fresh atoms, then decides.
bool isIntInstance(const Formula& f);

// Finite rooted intuitionistic Kripke model. World 0 is the root; the order
// is reflexive, transitive, antisymmetric, with 0 below every world; the
// valuation is persistent (upward closed per atom).
struct KripkeModel {
  int worlds = 0;
  std::vector<std::vector<bool>> leq;          // leq[w][v]: w <= v
  std::map<std::string, std::uint32_t> val;    // atom -> upset bitmask

  bool forces(int world, const Formula& f) const;
  std::uint32_t extension(const Formula& f) const;  // worlds forcing f
  std::string str() const;
};

// Searches rooted models with at most maxWorlds worlds (up to isomorphism,
// smallest first) for one whose root does not force f. Returns the first
// witness in a fixed enumeration order, or nullopt when none exists within
// the bound. f must be propositional.
std::optional<KripkeModel> kripkeCountermodel(const Formula& f, int maxWorlds);

// All rooted partial orders with exactly n worlds, up to isomorphism, in a
// fixed order. Exposed for exhaustive sweeps.
std::vector<std::vector<std::vector<bool>>> rootedOrders(int n);

// All upward closed subsets of the given order, as bitmasks, ascending.
std::vector<std::uint32_t> upsets(const std::vector<std::vector<bool>>& leq);

}  // namespace epik
