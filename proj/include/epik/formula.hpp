#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace epik {

// Agents are numbered 1..N.
using AgentId = int;

// A non-empty set of agents, stored as a bitmask (bit i-1 stands for agent i).
class Group {
 public:
  Group(std::initializer_list<AgentId> agents);
  explicit Group(const std::vector<AgentId>& agents);
  static Group fromMask(std::uint32_t mask);

  bool contains(AgentId i) const {
    return i >= 1 && i <= 32 && ((mask_ >> (i - 1)) & 1u) != 0;
  }
  bool subsetOf(const Group& g) const { return (mask_ & ~g.mask_) == 0; }
  AgentId maxAgent() const;
  std::vector<AgentId> members() const;
  std::uint32_t mask() const { return mask_; }
  std::size_t size() const;

  bool operator==(const Group& o) const { return mask_ == o.mask_; }
  bool operator!=(const Group& o) const { return mask_ != o.mask_; }
  bool operator<(const Group& o) const { return mask_ < o.mask_; }

  std::string str() const;  // "{1,2}"

 private:
  explicit Group(std::uint32_t mask);
  std::uint32_t mask_;
};

enum class Kind { Var, Bottom, And, Or, Imp, Box, Know, Common };

// Immutable formula tree. Abbreviations (~, true, <->, ==, dia) are desugared
// on construction, so structural equality is equality after desugaring:
//   true        = false -> false
//   ~f          = f -> false
//   f <-> g     = (f -> g) & (g -> f)
//   f == g      = box (f <-> g)
//   dia f       = ~ box ~ f
class Formula {
 public:
  Formula() = default;  // empty; only as a placeholder before assignment

  static Formula var(std::string name);
  static Formula bottom();
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula imp(Formula l, Formula r);
  static Formula box(Formula f);
  static Formula know(AgentId agent, Formula f);
  static Formula common(Group group, Formula f);

  // Desugared forms.
  static Formula top();
  static Formula neg(Formula f);
  static Formula iff(Formula l, Formula r);
  static Formula ident(Formula l, Formula r);  // propositional identity ==
  static Formula dia(Formula f);

  bool empty() const { return node_ == nullptr; }
  Kind kind() const;
  const std::string& varName() const;
  AgentId agent() const;
  Group group() const;
  Formula left() const;   // unary child or left child
  Formula right() const;  // right child of binary nodes

  bool operator==(const Formula& o) const { return compare(*this, o) == 0; }
  bool operator!=(const Formula& o) const { return compare(*this, o) != 0; }
  bool operator<(const Formula& o) const { return compare(*this, o) < 0; }
  static int compare(const Formula& a, const Formula& b);

  bool isPropositional() const;  // no Box/Know/Common nodes
  int nodeCount() const;
  AgentId maxAgent() const;  // 0 when no epistemic operator occurs
  void collectVars(std::set<std::string>& out) const;
  std::vector<std::string> vars() const;  // sorted

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct ParseError : std::runtime_error {
  ParseError(std::string msg, int line, int column);
  int line;
  int column;
};

// Parses one formula. Grammar, loosest to tightest:
//   == (non-associative), <-> (left), -> (right), |, &,
//   unary ~ / box / dia / K<i> / C{i,...}, then atoms
//   false, true, identifiers [a-z][a-zA-Z0-9_]*, parentheses.
// Agent indices must lie in 1..nAgents; groups must be non-empty.
Formula parseFormula(const std::string& text, int nAgents, int line = 1);

// One formula per non-blank line; '#' starts a comment.
std::vector<std::pair<int, Formula>> parseFormulaLines(const std::string& text,
                                                       int nAgents);

// Inverse of parseFormula on desugared trees; resugars ~, true, <->, == and
// dia for readability.
std::string printFormula(const Formula& f);

// Replaces every occurrence of variable `var` in `chi` by `phi`.
Formula substitute(const Formula& chi, const std::string& var,
                   const Formula& phi);

// Propositional abstraction: each variable and each maximal subformula headed
// by Box/Know/Common is replaced by a fresh atom (p0, p1, ... in first-visit
// order); structurally identical subtrees share one atom; Bottom stays.
struct Abstraction {
  Formula propositional;
  std::map<std::string, Formula> atomMeaning;  // fresh atom -> original subtree
};
Abstraction abstractPropositional(const Formula& f);

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// E_G^n f: n-fold "everyone in G knows", conjunctions left-associated in
// ascending agent order; E_G^0 f = f. Throws BudgetExceeded when the expansion
// would exceed nodeBudget nodes (size grows as |G|^n).
Formula expandEveryone(const Group& group, int n, const Formula& f,
                       int nodeBudget = 2000000);

// Fm is the full language; FmE its epistemic fragment: no Box, no Common,
// knowledge for a single agent only.
enum class LanguageId { FmE, Fm };
bool inLanguage(const Formula& f, LanguageId lang, int nAgents);

}  // namespace epik
