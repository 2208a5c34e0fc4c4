#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epik/models.hpp"

namespace epik {

// Analysis of common knowledge as a greatest fixpoint. All operations expect
// a valid model with TRUE, knowledge and common-knowledge tables (the
// access-based logics).

// Propositions agent i knows: {m | K_i(m) in TRUE}.
std::vector<int> belSet(const ModelExpansion& m, AgentId agent);

// Propositions that are common knowledge in G: {m | C_G(m) in TRUE}.
std::vector<int> commonSet(const ModelExpansion& m, const Group& g);

// All elements reachable from start by applying the knowledge operators of
// the group's members (any length, repetitions allowed); includes start.
std::vector<int> gClosure(const ModelExpansion& m, const Group& g, int start);

// The greatest set closed under G: contained in every member's belSet and
// stable under every member's knowledge operator. Computed by eliminating
// offending elements to a fixpoint.
std::vector<int> greatestClosed(const ModelExpansion& m, const Group& g);

struct GroupVerdict {
  Group group{1};
  bool intended = false;           // commonSet == greatestClosed
  bool closureTestAgrees = false;  // pointwise fixpoint test gives the same
  std::vector<int> common;
  std::vector<int> greatest;
  std::vector<int> belIntersection;
  std::optional<int> witness;  // element separating the two sets
};

struct IntendedReport {
  std::string model;
  std::vector<GroupVerdict> groups;
  bool intended = false;
  bool crossChecksAgree = false;
  std::string str(const HeytingAlgebra& h) const;
};

// Per-group comparison of commonSet against greatestClosed, with the
// pointwise cross-check: C_G(m) in TRUE iff the G-closure of m lies in TRUE.
// The two verdicts agree on every valid model; the report records both.
IntendedReport analyzeIntended(const ModelExpansion& m);

// On a valid model, C_G(m) in TRUE implies every element of the G-closure of
// m is in TRUE; exhaustive check over all groups and elements.
struct ClosureSoundnessReport {
  bool ok = true;
  std::string failure;
};
ClosureSoundnessReport checkClosureSoundness(const ModelExpansion& m);

// commonSet(G) is closed under G; hence commonSet(G) <= greatestClosed(G) <=
// the intersection of the members' belSets. Exhaustive check.
struct ClosureNestingReport {
  bool ok = true;
  std::string failure;
};
ClosureNestingReport checkClosureNesting(const ModelExpansion& m);

}  // namespace epik
