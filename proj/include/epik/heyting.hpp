#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace epik {

struct AlgebraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite Heyting algebra with table-driven operations. Elements are dense
// indices 0..size-1; leq is the lattice order, meet/join the infimum and
// supremum tables, imp the relative pseudo-complement: imp(a,b) is the
// greatest c with meet(a,c) <= b.
struct HeytingAlgebra {
  int size = 0;
  std::vector<std::vector<bool>> leq;
  std::vector<std::vector<int>> meet, join, imp;
  int bot = 0, top = 0;
  std::vector<std::string> names;  // defaults to e0, e1, ...

  bool le(int a, int b) const { return leq[a][b]; }
  int neg(int a) const { return imp[a][bot]; }
  const std::string& name(int a) const { return names[a]; }
  int elementByName(const std::string& n) const;  // -1 when absent

  // join of two elements is top only when one of them is top
  bool hasDisjunctionProperty() const;
};

// Builds the algebra over elements 0..n-1 from covering/order pairs (a,b)
// meaning a <= b; the reflexive-transitive closure is taken. Throws
// AlgebraError when the result is not a partial order, not a bounded
// lattice, or lacks a relative pseudo-complement for some pair.
HeytingAlgebra buildAlgebra(int n, const std::vector<std::pair<int, int>>& order,
                            std::vector<std::string> names = {});

// The n-element chain 0 < 1 < ... < n-1 (n >= 2), with imp(a,b) = top when
// a <= b and b otherwise.
HeytingAlgebra chainAlgebra(int n);

// A filter in the deductive sense: contains top and is closed under
// (m in F and imp(m,m') in F) => m' in F. In a finite Heyting algebra every
// filter is the up-set of its least element.
struct FilterSet {
  int generator = 0;          // least element; the filter is its up-set
  std::vector<int> elements;  // ascending indices
  bool proper = false;        // bot not in F
  bool prime = false;         // proper and joins split
  bool ultra = false;         // maximal proper

  bool contains(int m) const;
};

// All filters with their flags, ordered by generator index.
std::vector<FilterSet> enumerateFilters(const HeytingAlgebra& h);

// Exhaustive filter facts used throughout the semantics:
//  (1) every proper filter is the intersection of the prime filters above it;
//  (2) imp(a,b) lies in a filter P iff every prime filter above P that
//      contains a also contains b;
//  (3) when {top} is prime, a <= b iff every prime filter containing a
//      contains b.
struct FilterTheoryReport {
  bool ok = true;
  std::string failure;  // first counterexample, when any
};
FilterTheoryReport checkFilterTheory(const HeytingAlgebra& h);

// ---------------------------------------------------------------------------
// Algebra corpus

struct Poset {
  int n = 0;
  std::vector<std::vector<bool>> leq;
};

// All posets with exactly n points, up to isomorphism, in a fixed order.
std::vector<Poset> allPosets(int n);

// The lattice of down-sets of a poset, a finite Heyting algebra.
HeytingAlgebra downsetAlgebra(const Poset& p);

HeytingAlgebra booleanSquare();

struct CorpusEntry {
  std::string label;
  HeytingAlgebra algebra;
};

// Chains n=2..6, down-set algebras of all posets with at most 4 points, and
// the Boolean square; fixed deterministic order.
const std::vector<CorpusEntry>& algebraCorpus();

// ---------------------------------------------------------------------------
// Text format:
//   elements 5
//   name 0 zero            (optional)
//   order 0<1 1<2          (one or more pairs per line)
HeytingAlgebra parseAlgebraText(const std::string& text);
std::string algebraToText(const HeytingAlgebra& h);

}  // namespace epik
