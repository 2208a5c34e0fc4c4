#include "epik/models.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

namespace epik {

namespace {

std::vector<std::uint32_t> groupMasks(int agents) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 1; mask < (1u << agents); ++mask)
    out.push_back(mask);
  return out;
}

std::string groupName(std::uint32_t mask) {
  return Group::fromMask(mask).str();
}

}  // namespace

bool ModelExpansion::inTrue(int m) const {
  if (!trueFilter) throw ModelError("model has no TRUE filter");
  return std::binary_search(trueFilter->begin(), trueFilter->end(), m);
}

int ModelExpansion::box(int m) const {
  if (!boxTable) throw ModelError("model has no box operator table");
  return (*boxTable)[m];
}

int ModelExpansion::know(AgentId i, int m) const {
  auto it = knowTables.find(i);
  if (it == knowTables.end())
    throw ModelError("model has no K" + std::to_string(i) + " table");
  return it->second[m];
}

int ModelExpansion::common(std::uint32_t groupMask, int m) const {
  auto it = commonTables.find(groupMask);
  if (it == commonTables.end())
    throw ModelError("model has no C" + groupName(groupMask) + " table");
  return it->second[m];
}

void requireShape(const LogicId& logic, const ModelExpansion& m) {
  const int n = m.algebra.size;
  auto checkTable = [&](const std::vector<int>& t, const std::string& what) {
    if (static_cast<int>(t.size()) != n)
      throw ModelError(what + " table does not cover the carrier");
    for (int v : t)
      if (v < 0 || v >= n) throw ModelError(what + " table value out of range");
  };
  if (logic.logic != Logic::IEL) {
    if (!m.trueFilter) throw ModelError("model has no TRUE filter");
    for (int v : *m.trueFilter)
      if (v < 0 || v >= n) throw ModelError("TRUE contains a bad element");
    if (!m.boxTable) throw ModelError("model has no box operator table");
    checkTable(*m.boxTable, "box");
  }
  if (logic.hasKnow()) {
    for (int i = 1; i <= logic.agents; ++i) {
      auto it = m.knowTables.find(i);
      if (it == m.knowTables.end())
        throw ModelError("model has no K" + std::to_string(i) + " table");
      checkTable(it->second, "K" + std::to_string(i));
    }
  }
  if (logic.hasCommon()) {
    for (std::uint32_t mask : groupMasks(logic.agents)) {
      auto it = m.commonTables.find(mask);
      if (it == m.commonTables.end())
        throw ModelError("model has no C" + groupName(mask) + " table");
      checkTable(it->second, "C" + groupName(mask));
    }
  }
}

// ---------------------------------------------------------------------------
// Validators

std::string ValidationReport::str(const std::string& modelLabel) const {
  std::ostringstream out;
  out << route << " conditions for " << logic.name();
  if (!modelLabel.empty()) out << " on " << modelLabel;
  out << "\n";
  for (const ConditionResult& c : conditions) {
    out << (c.pass ? "  [pass] " : "  [FAIL] ") << c.id;
    if (!c.witness.empty()) out << "  -- " << c.witness;
    out << "\n";
  }
  out << "verdict: " << (valid ? "VALID" : "INVALID") << "\n";
  return out.str();
}

namespace {

struct Checker {
  const LogicId& logic;
  const ModelExpansion& m;
  const HeytingAlgebra& h;
  ValidationReport report;

  Checker(const LogicId& logic, const ModelExpansion& m, std::string route)
      : logic(logic), m(m), h(m.algebra) {
    report.logic = logic;
    report.route = std::move(route);
  }

  void add(const std::string& id, bool pass, const std::string& witness) {
    report.conditions.push_back({id, pass, pass ? "" : witness});
    if (!pass) report.valid = false;
  }

  void disjunctionProperty() {
    for (int a = 0; a < h.size; ++a)
      for (int b = 0; b < h.size; ++b)
        if (h.join[a][b] == h.top && a != h.top && b != h.top) {
          add("disjunction-property", false,
              h.name(a) + " | " + h.name(b) + " = top");
          return;
        }
    add("disjunction-property", true, "");
  }

  void boxDichotomy() {
    for (int a = 0; a < h.size; ++a) {
      int expected = (a == h.top) ? h.top : h.bot;
      if (m.box(a) != expected) {
        add("box-dichotomy", false,
            "box(" + h.name(a) + ") = " + h.name(m.box(a)));
        return;
      }
    }
    add("box-dichotomy", true, "");
  }
};

// Filter-route machinery ----------------------------------------------------

struct FilterChecker : Checker {
  std::vector<FilterSet> filters;
  std::vector<const FilterSet*> primes;
  std::vector<const FilterSet*> ultras;

  FilterChecker(const LogicId& logic, const ModelExpansion& m)
      : Checker(logic, m, "filter") {
    filters = enumerateFilters(h);
    for (const FilterSet& f : filters) {
      if (f.prime) primes.push_back(&f);
      if (f.ultra) ultras.push_back(&f);
    }
  }

  // {a | table(a) in F}, ascending
  std::vector<int> preimage(const std::vector<int>& table,
                            const FilterSet& f) const {
    std::vector<int> out;
    for (int a = 0; a < h.size; ++a)
      if (f.contains(table[a])) out.push_back(a);
    return out;
  }

  static bool member(const std::vector<int>& set, int a) {
    return std::binary_search(set.begin(), set.end(), a);
  }

  bool isFilter(const std::vector<int>& set, std::string* why) const {
    if (!member(set, h.top)) {
      *why = "top missing";
      return false;
    }
    for (int a : set)
      for (int b = 0; b < h.size; ++b)
        if (member(set, h.imp[a][b]) && !member(set, b)) {
          *why = "not closed at (" + h.name(a) + ", " + h.name(b) + ")";
          return false;
        }
    return true;
  }

  bool isPrimeFilter(const std::vector<int>& set, std::string* why) const {
    if (!isFilter(set, why)) return false;
    if (member(set, h.bot)) {
      *why = "contains bot";
      return false;
    }
    for (int a = 0; a < h.size; ++a)
      for (int b = 0; b < h.size; ++b)
        if (member(set, h.join[a][b]) && !member(set, a) && !member(set, b)) {
          *why = "join " + h.name(a) + " | " + h.name(b) + " does not split";
          return false;
        }
    return true;
  }

  const std::vector<int>& knowTable(AgentId i) const {
    return m.knowTables.at(i);
  }
  const std::vector<int>& commonTable(std::uint32_t g) const {
    return m.commonTables.at(g);
  }

  void belAreFilters() {
    for (const FilterSet* f : primes)
      for (int i = 1; i <= logic.agents; ++i) {
        std::string why;
        if (!isFilter(preimage(knowTable(i), *f), &why)) {
          add("knowledge-sets-are-filters", false,
              "K" + std::to_string(i) + " at filter " + h.name(f->generator) +
                  ": " + why);
          return;
        }
      }
    add("knowledge-sets-are-filters", true, "");
  }

  void belInUltrafilters() {
    for (const FilterSet* f : primes)
      for (const FilterSet* u : ultras) {
        if (!std::includes(u->elements.begin(), u->elements.end(),
                           f->elements.begin(), f->elements.end()))
          continue;
        for (int i = 1; i <= logic.agents; ++i)
          for (int a : preimage(knowTable(i), *f))
            if (!u->contains(a)) {
              add("knowledge-sets-in-ultrafilters", false,
                  "K" + std::to_string(i) + " at filter " +
                      h.name(f->generator) + ": " + h.name(a) +
                      " escapes the ultrafilter at " + h.name(u->generator));
              return;
            }
      }
    add("knowledge-sets-in-ultrafilters", true, "");
  }

  void belPrimeWithin() {
    for (const FilterSet* f : primes)
      for (int i = 1; i <= logic.agents; ++i) {
        std::vector<int> bel = preimage(knowTable(i), *f);
        std::string why;
        if (!isPrimeFilter(bel, &why)) {
          add("knowledge-sets-prime", false,
              "K" + std::to_string(i) + " at filter " + h.name(f->generator) +
                  ": " + why);
          return;
        }
        for (int a : bel)
          if (!f->contains(a)) {
            add("knowledge-sets-prime", false,
                "K" + std::to_string(i) + " at filter " +
                    h.name(f->generator) + ": " + h.name(a) +
                    " is known but not in the filter");
            return;
          }
      }
    add("knowledge-sets-prime", true, "");
  }

  void commonAreFilters(bool prime) {
    const std::string id =
        prime ? "common-sets-prime" : "common-sets-are-filters";
    for (const FilterSet* f : primes)
      for (std::uint32_t g : groupMasks(logic.agents)) {
        std::vector<int> com = preimage(commonTable(g), *f);
        std::string why;
        bool ok = prime ? isPrimeFilter(com, &why) : isFilter(com, &why);
        if (!ok) {
          add(id, false,
              "C" + groupName(g) + " at filter " + h.name(f->generator) +
                  ": " + why);
          return;
        }
      }
    add(id, true, "");
  }

  void commonInsideBel() {
    for (const FilterSet* f : primes)
      for (std::uint32_t g : groupMasks(logic.agents)) {
        std::vector<int> com = preimage(commonTable(g), *f);
        for (AgentId i : Group::fromMask(g).members())
          for (int a : com)
            if (!f->contains(knowTable(i)[a])) {
              add("common-inside-knowledge", false,
                  "C" + groupName(g) + " vs K" + std::to_string(i) +
                      " at filter " + h.name(f->generator) + ", element " +
                      h.name(a));
              return;
            }
      }
    add("common-inside-knowledge", true, "");
  }

  void commonClosedUnderK() {
    for (const FilterSet* f : primes)
      for (std::uint32_t g : groupMasks(logic.agents)) {
        std::vector<int> com = preimage(commonTable(g), *f);
        for (AgentId i : Group::fromMask(g).members())
          for (int a : com)
            if (!member(com, knowTable(i)[a])) {
              add("common-closed-under-knowledge", false,
                  "C" + groupName(g) + ", K" + std::to_string(i) +
                      " at filter " + h.name(f->generator) + ", element " +
                      h.name(a));
              return;
            }
      }
    add("common-closed-under-knowledge", true, "");
  }

  void commonAntitone() {
    for (const FilterSet* f : primes)
      for (std::uint32_t g : groupMasks(logic.agents)) {
        std::vector<int> com = preimage(commonTable(g), *f);
        for (std::uint32_t g2 : groupMasks(logic.agents)) {
          if (g2 == g || (g2 & ~g) != 0) continue;  // g2 must be a subset
          for (int a : com)
            if (!f->contains(commonTable(g2)[a])) {
              add("common-antitone-in-group", false,
                  "C" + groupName(g) + " vs C" + groupName(g2) +
                      " at filter " + h.name(f->generator) + ", element " +
                      h.name(a));
              return;
            }
        }
      }
    add("common-antitone-in-group", true, "");
  }

  void commonClosedUnderC() {
    for (const FilterSet* f : primes)
      for (std::uint32_t g : groupMasks(logic.agents)) {
        std::vector<int> com = preimage(commonTable(g), *f);
        for (int a : com)
          if (!member(com, commonTable(g)[a])) {
            add("common-closed-under-common", false,
                "C" + groupName(g) + " at filter " + h.name(f->generator) +
                    ", element " + h.name(a));
            return;
          }
      }
    add("common-closed-under-common", true, "");
  }

  void coReflectionFilters() {
    for (const FilterSet* f : primes) {
      std::vector<int> bel = preimage(knowTable(1), *f);
      for (int a : f->elements)
        if (!member(bel, a)) {
          add("co-reflection", false,
              "filter " + h.name(f->generator) + " element " + h.name(a) +
                  " is not known");
          return;
        }
    }
    add("co-reflection", true, "");
  }
};

// Inequational-route machinery ----------------------------------------------

struct IneqChecker : Checker {
  IneqChecker(const LogicId& logic, const ModelExpansion& m)
      : Checker(logic, m, "inequational") {}

  using Table = std::vector<int>;

  const Table& kt(AgentId i) const { return m.knowTables.at(i); }
  const Table& ct(std::uint32_t g) const { return m.commonTables.at(g); }

  void distribution(const std::string& id, const Table& t,
                    const std::string& opName) {
    for (int a = 0; a < h.size; ++a)
      for (int b = 0; b < h.size; ++b)
        if (!h.le(t[h.imp[a][b]], h.imp[t[a]][t[b]])) {
          add(id, false,
              opName + " at (" + h.name(a) + ", " + h.name(b) + ")");
          return;
        }
    add(id, true, "");
  }

  void disjunctionDistribution(const std::string& id, const Table& t,
                               const std::string& opName) {
    for (int a = 0; a < h.size; ++a)
      for (int b = 0; b < h.size; ++b)
        if (!h.le(t[h.join[a][b]], h.join[t[a]][t[b]])) {
          add(id, false,
              opName + " at (" + h.name(a) + ", " + h.name(b) + ")");
          return;
        }
    add(id, true, "");
  }

  void kDistribution() {
    for (int i = 1; i <= logic.agents; ++i) {
      for (int a = 0; a < h.size; ++a)
        for (int b = 0; b < h.size; ++b)
          if (!h.le(kt(i)[h.imp[a][b]], h.imp[kt(i)[a]][kt(i)[b]])) {
            add("knowledge-distribution", false,
                "K" + std::to_string(i) + " at (" + h.name(a) + ", " +
                    h.name(b) + ")");
            return;
          }
    }
    add("knowledge-distribution", true, "");
  }

  void cDistribution() {
    for (std::uint32_t g : groupMasks(logic.agents))
      for (int a = 0; a < h.size; ++a)
        for (int b = 0; b < h.size; ++b)
          if (!h.le(ct(g)[h.imp[a][b]], h.imp[ct(g)[a]][ct(g)[b]])) {
            add("common-distribution", false,
                "C" + groupName(g) + " at (" + h.name(a) + ", " + h.name(b) +
                    ")");
            return;
          }
    add("common-distribution", true, "");
  }

  void cBelowK() {
    for (std::uint32_t g : groupMasks(logic.agents))
      for (AgentId i : Group::fromMask(g).members())
        for (int a = 0; a < h.size; ++a)
          if (!h.le(ct(g)[a], kt(i)[a])) {
            add("common-below-knowledge", false,
                "C" + groupName(g) + " vs K" + std::to_string(i) + " at " +
                    h.name(a));
            return;
          }
    add("common-below-knowledge", true, "");
  }

  void cOfKnowledgeSteps() {
    for (std::uint32_t g : groupMasks(logic.agents))
      for (AgentId i : Group::fromMask(g).members())
        for (int a = 0; a < h.size; ++a)
          if (!h.le(ct(g)[a], ct(g)[kt(i)[a]])) {
            add("common-of-knowledge-steps", false,
                "C" + groupName(g) + ", K" + std::to_string(i) + " at " +
                    h.name(a));
            return;
          }
    add("common-of-knowledge-steps", true, "");
  }

  void cAntitone() {
    for (std::uint32_t g : groupMasks(logic.agents))
      for (std::uint32_t g2 : groupMasks(logic.agents)) {
        if (g2 == g || (g2 & ~g) != 0) continue;
        for (int a = 0; a < h.size; ++a)
          if (!h.le(ct(g)[a], ct(g2)[a])) {
            add("common-antitone-in-group", false,
                "C" + groupName(g) + " vs C" + groupName(g2) + " at " +
                    h.name(a));
            return;
          }
      }
    add("common-antitone-in-group", true, "");
  }

  void cTop() {
    for (std::uint32_t g : groupMasks(logic.agents))
      if (ct(g)[h.top] != h.top) {
        add("common-preserves-top", false,
            "C" + groupName(g) + "(top) = " + h.name(ct(g)[h.top]));
        return;
      }
    add("common-preserves-top", true, "");
  }

  void kTop() {
    for (int i = 1; i <= logic.agents; ++i)
      if (kt(i)[h.top] != h.top) {
        add("knowledge-preserves-top", false,
            "K" + std::to_string(i) + "(top) = " + h.name(kt(i)[h.top]));
        return;
      }
    add("knowledge-preserves-top", true, "");
  }

  void kIntuitionisticReflection() {
    for (int i = 1; i <= logic.agents; ++i)
      for (int a = 0; a < h.size; ++a)
        if (!h.le(kt(i)[a], h.neg(h.neg(a)))) {
          add("knowledge-intuitionistic-reflection", false,
              "K" + std::to_string(i) + " at " + h.name(a));
          return;
        }
    add("knowledge-intuitionistic-reflection", true, "");
  }

  void kReflection() {
    for (int i = 1; i <= logic.agents; ++i)
      for (int a = 0; a < h.size; ++a)
        if (!h.le(kt(i)[a], a)) {
          add("knowledge-reflection", false,
              "K" + std::to_string(i) + "(" + h.name(a) + ") = " +
                  h.name(kt(i)[a]));
          return;
        }
    add("knowledge-reflection", true, "");
  }

  void kDisjunction() {
    for (int i = 1; i <= logic.agents; ++i)
      for (int a = 0; a < h.size; ++a)
        for (int b = 0; b < h.size; ++b)
          if (!h.le(kt(i)[h.join[a][b]], h.join[kt(i)[a]][kt(i)[b]])) {
            add("knowledge-disjunction", false,
                "K" + std::to_string(i) + " at (" + h.name(a) + ", " +
                    h.name(b) + ")");
            return;
          }
    add("knowledge-disjunction", true, "");
  }

  void cDisjunction() {
    for (std::uint32_t g : groupMasks(logic.agents))
      for (int a = 0; a < h.size; ++a)
        for (int b = 0; b < h.size; ++b)
          if (!h.le(ct(g)[h.join[a][b]], h.join[ct(g)[a]][ct(g)[b]])) {
            add("common-disjunction", false,
                "C" + groupName(g) + " at (" + h.name(a) + ", " + h.name(b) +
                    ")");
            return;
          }
    add("common-disjunction", true, "");
  }

  void cIntrospection() {
    for (std::uint32_t g : groupMasks(logic.agents))
      for (int a = 0; a < h.size; ++a)
        if (!h.le(ct(g)[a], ct(g)[ct(g)[a]])) {
          add("common-introspection", false,
              "C" + groupName(g) + "(" + h.name(a) + ") = " +
                  h.name(ct(g)[a]) + " but C" + groupName(g) + "(" +
                  h.name(ct(g)[a]) + ") = " + h.name(ct(g)[ct(g)[a]]));
          return;
        }
    add("common-introspection", true, "");
  }

  void coReflection() {
    for (int a = 0; a < h.size; ++a)
      if (!h.le(a, kt(1)[a])) {
        add("co-reflection", false,
            "K1(" + h.name(a) + ") = " + h.name(kt(1)[a]));
        return;
      }
    add("co-reflection", true, "");
  }
};

// TRUE is an ultrafilter by type; checked identically on both routes so a
// mistyped designated filter fails them in the same way.
void checkTrueUltrafilter(Checker& c) {
  const ModelExpansion& m = c.m;
  const HeytingAlgebra& h = c.h;
  if (!m.trueFilter) {
    c.add("true-is-ultrafilter", false, "missing TRUE");
    return;
  }
  for (const FilterSet& f : enumerateFilters(h)) {
    if (f.elements == *m.trueFilter) {
      if (f.ultra)
        c.add("true-is-ultrafilter", true, "");
      else
        c.add("true-is-ultrafilter", false,
              "the set generated at " + h.name(f.generator) +
                  " is not maximal proper");
      return;
    }
  }
  c.add("true-is-ultrafilter", false, "TRUE is not a filter");
}

}  // namespace

ValidationReport validateFilterRoute(const LogicId& logic,
                                     const ModelExpansion& m) {
  requireShape(logic, m);
  FilterChecker c(logic, m);
  if (logic.logic != Logic::IEL) checkTrueUltrafilter(c);
  switch (logic.logic) {
    case Logic::IEL:
      c.disjunctionProperty();
      c.belAreFilters();
      c.belInUltrafilters();
      c.coReflectionFilters();
      break;
    case Logic::L5:
      c.disjunctionProperty();
      c.boxDichotomy();
      break;
    case Logic::EL5:
      c.disjunctionProperty();
      c.boxDichotomy();
      c.belAreFilters();
      c.belInUltrafilters();
      break;
    case Logic::L5ACminus:
      c.disjunctionProperty();
      c.boxDichotomy();
      c.belAreFilters();
      c.belPrimeWithin();
      c.commonAreFilters(false);
      c.commonInsideBel();
      c.commonClosedUnderK();
      c.commonAntitone();
      break;
    case Logic::L5AC:
      c.disjunctionProperty();
      c.boxDichotomy();
      c.belAreFilters();
      c.belPrimeWithin();
      c.commonAreFilters(false);
      c.commonAreFilters(true);
      c.commonInsideBel();
      c.commonClosedUnderK();
      c.commonAntitone();
      c.commonClosedUnderC();
      break;
  }
  return c.report;
}

ValidationReport validateInequationalRoute(const LogicId& logic,
                                           const ModelExpansion& m) {
  requireShape(logic, m);
  IneqChecker c(logic, m);
  if (logic.logic != Logic::IEL) checkTrueUltrafilter(c);
  switch (logic.logic) {
    case Logic::IEL:
      c.disjunctionProperty();
      c.kDistribution();
      c.kIntuitionisticReflection();
      c.coReflection();
      c.kTop();
      break;
    case Logic::L5:
      c.disjunctionProperty();
      c.boxDichotomy();
      break;
    case Logic::EL5:
      c.disjunctionProperty();
      c.boxDichotomy();
      c.kDistribution();
      c.kIntuitionisticReflection();
      c.kTop();
      break;
    case Logic::L5ACminus:
      c.disjunctionProperty();
      c.boxDichotomy();
      c.kDistribution();
      c.cDistribution();
      c.cBelowK();
      c.cOfKnowledgeSteps();
      c.cAntitone();
      c.cTop();
      c.kIntuitionisticReflection();
      c.kReflection();
      c.kDisjunction();
      break;
    case Logic::L5AC:
      c.disjunctionProperty();
      c.boxDichotomy();
      c.kDistribution();
      c.cDistribution();
      c.cBelowK();
      c.cOfKnowledgeSteps();
      c.cAntitone();
      c.cTop();
      c.kIntuitionisticReflection();
      c.kReflection();
      c.kDisjunction();
      c.cDisjunction();
      c.cIntrospection();
      break;
  }
  return c.report;
}

bool isValidModel(const LogicId& logic, const ModelExpansion& m) {
  return validateInequationalRoute(logic, m).valid;
}

// ---------------------------------------------------------------------------
// Satisfaction

int evaluate(const ModelExpansion& m, const Assignment& g, const Formula& f) {
  const HeytingAlgebra& h = m.algebra;
  switch (f.kind()) {
    case Kind::Var: {
      auto it = g.find(f.varName());
      if (it == g.end())
        throw ModelError("unbound variable " + f.varName());
      if (it->second < 0 || it->second >= h.size)
        throw ModelError("assignment value out of range for " + f.varName());
      return it->second;
    }
    case Kind::Bottom:
      return h.bot;
    case Kind::And:
      return h.meet[evaluate(m, g, f.left())][evaluate(m, g, f.right())];
    case Kind::Or:
      return h.join[evaluate(m, g, f.left())][evaluate(m, g, f.right())];
    case Kind::Imp:
      return h.imp[evaluate(m, g, f.left())][evaluate(m, g, f.right())];
    case Kind::Box:
      return m.box(evaluate(m, g, f.left()));
    case Kind::Know:
      return m.know(f.agent(), evaluate(m, g, f.left()));
    case Kind::Common:
      return m.common(f.group().mask(), evaluate(m, g, f.left()));
  }
  throw ModelError("unreachable");
}

bool satisfies(const LogicId& logic, const ModelExpansion& m,
               const Assignment& g, const Formula& f) {
  if (!formulaInLogic(f, logic))
    throw ModelError("formula outside the language of " + logic.name());
  int v = evaluate(m, g, f);
  if (logic.logic == Logic::IEL) return v == m.algebra.top;
  return m.inTrue(v);
}

OperatorLawsReport checkOperatorLaws(const ModelExpansion& m) {
  OperatorLawsReport report;
  const HeytingAlgebra& h = m.algebra;
  auto checkTable = [&](const std::vector<int>& t, const std::string& name) {
    if (!report.ok) return;
    if (t[h.top] != h.top) {
      report.ok = false;
      report.failure = name + " does not preserve top";
      return;
    }
    for (int a = 0; a < h.size; ++a)
      for (int b = 0; b < h.size; ++b)
        if (h.le(a, b) && !h.le(t[a], t[b])) {
          report.ok = false;
          report.failure = name + " is not monotone at (" + h.name(a) + ", " +
                           h.name(b) + ")";
          return;
        }
  };
  for (const auto& [i, t] : m.knowTables)
    checkTable(t, "K" + std::to_string(i));
  for (const auto& [g, t] : m.commonTables) checkTable(t, "C" + groupName(g));
  return report;
}

// ---------------------------------------------------------------------------
// Axiom instances and sweeps

std::vector<std::pair<SchemeId, Formula>> axiomInstances(const LogicId& logic) {
  std::vector<std::pair<SchemeId, Formula>> out;
  const Formula x = Formula::var("x"), y = Formula::var("y"),
                z = Formula::var("z");
  auto add = [&](SchemeId s, Formula f) { out.emplace_back(s, std::move(f)); };
  using F = Formula;

  for (SchemeId s : axiomSchemes(logic.logic)) {
    switch (s) {
      case SchemeId::INT:
        // a finite axiomatization of the intuitionistic propositional
        // calculus, each scheme at x, y, z
        add(s, F::imp(x, F::imp(y, x)));
        add(s, F::imp(F::imp(x, F::imp(y, z)),
                      F::imp(F::imp(x, y), F::imp(x, z))));
        add(s, F::imp(x, F::imp(y, F::conj(x, y))));
        add(s, F::imp(F::conj(x, y), x));
        add(s, F::imp(F::conj(x, y), y));
        add(s, F::imp(x, F::disj(x, y)));
        add(s, F::imp(y, F::disj(x, y)));
        add(s, F::imp(F::imp(x, z),
                      F::imp(F::imp(y, z), F::imp(F::disj(x, y), z))));
        add(s, F::imp(F::bottom(), x));
        break;
      case SchemeId::TND:
        add(s, F::disj(x, F::neg(x)));
        break;
      case SchemeId::S1:
        add(s, F::imp(F::box(F::disj(x, y)),
                      F::disj(F::box(x), F::box(y))));
        break;
      case SchemeId::S2:
        add(s, F::imp(F::box(x), x));
        break;
      case SchemeId::S3:
        add(s, F::imp(F::box(F::imp(x, y)),
                      F::imp(F::box(x), F::box(y))));
        break;
      case SchemeId::S4:
        add(s, F::imp(F::box(x), F::box(F::box(x))));
        break;
      case SchemeId::S5:
        add(s, F::imp(F::neg(F::box(x)), F::box(F::neg(F::box(x)))));
        break;
      case SchemeId::S6:
        for (int i = 1; i <= logic.agents; ++i)
          add(s, F::imp(F::know(i, x), x));
        break;
      case SchemeId::S7:
        for (int i = 1; i <= logic.agents; ++i)
          add(s, F::imp(F::know(i, F::imp(x, y)),
                        F::imp(F::know(i, x), F::know(i, y))));
        break;
      case SchemeId::S8:
        for (int i = 1; i <= logic.agents; ++i)
          add(s, F::imp(F::know(i, F::disj(x, y)),
                        F::disj(F::know(i, x), F::know(i, y))));
        break;
      case SchemeId::S9:
        for (std::uint32_t g : groupMasks(logic.agents))
          add(s, F::imp(F::common(Group::fromMask(g), F::imp(x, y)),
                        F::imp(F::common(Group::fromMask(g), x),
                               F::common(Group::fromMask(g), y))));
        break;
      case SchemeId::S10:
        for (std::uint32_t g : groupMasks(logic.agents))
          add(s, F::imp(F::common(Group::fromMask(g), F::disj(x, y)),
                        F::disj(F::common(Group::fromMask(g), x),
                                F::common(Group::fromMask(g), y))));
        break;
      case SchemeId::S11:
        for (std::uint32_t g : groupMasks(logic.agents))
          add(s, F::imp(F::box(x),
                        F::box(F::common(Group::fromMask(g), x))));
        break;
      case SchemeId::S12:
        for (std::uint32_t g : groupMasks(logic.agents))
          for (AgentId i : Group::fromMask(g).members())
            add(s, F::imp(F::common(Group::fromMask(g), x), F::know(i, x)));
        break;
      case SchemeId::S13:
        for (std::uint32_t g : groupMasks(logic.agents))
          for (AgentId i : Group::fromMask(g).members())
            add(s, F::imp(F::common(Group::fromMask(g), x),
                          F::common(Group::fromMask(g), F::know(i, x))));
        break;
      case SchemeId::S14:
        for (std::uint32_t g : groupMasks(logic.agents))
          for (std::uint32_t g2 : groupMasks(logic.agents)) {
            if ((g2 & ~g) != 0) continue;
            add(s, F::imp(F::common(Group::fromMask(g), x),
                          F::common(Group::fromMask(g2), x)));
          }
        break;
      case SchemeId::S15:
        for (std::uint32_t g : groupMasks(logic.agents))
          add(s, F::imp(F::common(Group::fromMask(g), x),
                        F::common(Group::fromMask(g),
                                  F::common(Group::fromMask(g), x))));
        break;
      case SchemeId::IEL_DIST:
      case SchemeId::EL5_DIST:
        add(s, F::imp(F::know(1, F::imp(x, y)),
                      F::imp(F::know(1, x), F::know(1, y))));
        break;
      case SchemeId::IEL_COREFL:
        add(s, F::imp(x, F::know(1, x)));
        break;
      case SchemeId::IEL_INTREFL:
      case SchemeId::EL5_INTREFL:
        add(s, F::imp(F::know(1, x), F::neg(F::neg(x))));
        break;
      case SchemeId::EL5_WEAKCO:
        add(s, F::imp(F::box(x), F::box(F::know(1, x))));
        break;
    }
  }
  return out;
}

SweepReport soundnessSweep(const LogicId& logic,
                           const std::vector<ModelExpansion>& models) {
  SweepReport report;
  auto instances = axiomInstances(logic);
  for (const ModelExpansion& m : models) {
    const int n = m.algebra.size;
    for (const auto& [scheme, inst] : instances) {
      std::vector<std::string> vars = inst.vars();
      std::vector<int> tuple(vars.size(), 0);
      for (;;) {
        Assignment g;
        for (std::size_t i = 0; i < vars.size(); ++i) g[vars[i]] = tuple[i];
        int v = evaluate(m, g, inst);
        ++report.checks;
        bool ok = (scheme == SchemeId::TND) ? m.inTrue(v)
                                            : v == m.algebra.top;
        if (!ok && report.violations.size() < 32) {
          std::ostringstream a;
          for (std::size_t i = 0; i < vars.size(); ++i)
            a << (i ? "," : "") << vars[i] << "=" << m.algebra.name(tuple[i]);
          report.violations.push_back(
              {m.label, printFormula(inst), a.str()});
        }
        std::size_t k = 0;
        while (k < tuple.size() && ++tuple[k] == n) tuple[k++] = 0;
        if (k == tuple.size()) break;
        if (tuple.empty()) break;
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Model generation

namespace {

// all monotone tables t with lower[a] <= t[a] <= upper[a] pointwise,
// lexicographic order
void monotoneTables(const HeytingAlgebra& h, const std::vector<int>& lower,
                    const std::vector<int>& upper,
                    std::vector<std::vector<int>>& out, int cap) {
  std::vector<int> t(h.size, -1);
  std::function<void(int)> rec = [&](int a) {
    if (static_cast<int>(out.size()) >= cap) return;
    if (a == h.size) {
      out.push_back(t);
      return;
    }
    for (int v = 0; v < h.size; ++v) {
      if (!h.le(lower[a], v) || !h.le(v, upper[a])) continue;
      bool mono = true;
      for (int b = 0; b < a; ++b) {
        if (h.le(b, a) && !h.le(t[b], v)) { mono = false; break; }
        if (h.le(a, b) && !h.le(v, t[b])) { mono = false; break; }
      }
      if (!mono) continue;
      t[a] = v;
      rec(a + 1);
      t[a] = -1;
    }
  };
  rec(0);
}

std::vector<int> forcedBoxTable(const HeytingAlgebra& h) {
  std::vector<int> box(h.size, h.bot);
  box[h.top] = h.top;
  return box;
}

std::vector<int> pointwiseMin(const HeytingAlgebra& h,
                              const std::vector<int>& a,
                              const std::vector<int>& b) {
  std::vector<int> out(h.size);
  for (int i = 0; i < h.size; ++i) out[i] = h.meet[a[i]][b[i]];
  return out;
}

}  // namespace

std::vector<ModelExpansion> generateValidModels(const LogicId& logic,
                                                const HeytingAlgebra& h,
                                                const std::string& algebraLabel,
                                                int limit,
                                                long long candidateBudget) {
  std::vector<ModelExpansion> out;
  if (!h.hasDisjunctionProperty()) return out;  // no model can validate
  long long attempts = 0;
  auto exhausted = [&] {
    return static_cast<int>(out.size()) >= limit ||
           (candidateBudget > 0 && attempts >= candidateBudget);
  };

  // pointwise bounds for knowledge tables
  std::vector<int> lowerK(h.size, h.bot), upperK(h.size);
  for (int a = 0; a < h.size; ++a) {
    switch (logic.logic) {
      case Logic::IEL:
        lowerK[a] = a;  // co-reflection
        upperK[a] = h.neg(h.neg(a));
        break;
      case Logic::EL5:
        upperK[a] = h.neg(h.neg(a));
        break;
      default:
        upperK[a] = a;  // reflection
        break;
    }
  }
  if (logic.hasKnow()) {
    // knowledge preserves top in every valid model
    lowerK[h.top] = h.top;
  }

  std::vector<std::vector<int>> kCandidates;
  if (logic.hasKnow())
    monotoneTables(h, lowerK, upperK, kCandidates, 4000);

  std::vector<const FilterSet*> ultras;
  std::vector<FilterSet> filters = enumerateFilters(h);
  for (const FilterSet& f : filters)
    if (f.ultra) ultras.push_back(&f);

  auto emit = [&](ModelExpansion m) {
    ++attempts;
    m.label = algebraLabel + "#" + std::to_string(out.size());
    if (isValidModel(logic, m)) out.push_back(std::move(m));
  };

  auto forEachTrue = [&](auto&& body) {
    if (logic.logic == Logic::IEL) {
      body(std::optional<std::vector<int>>{});
      return;
    }
    for (const FilterSet* u : ultras) body(std::optional(u->elements));
  };

  if (logic.logic == Logic::L5) {
    forEachTrue([&](std::optional<std::vector<int>> tf) {
      if (exhausted()) return;
      ModelExpansion m;
      m.algebra = h;
      m.agents = 1;
      m.trueFilter = std::move(tf);
      m.boxTable = forcedBoxTable(h);
      emit(std::move(m));
    });
    return out;
  }

  if (logic.logic == Logic::IEL || logic.logic == Logic::EL5) {
    forEachTrue([&](std::optional<std::vector<int>> tf) {
      for (const auto& k : kCandidates) {
        if (exhausted()) return;
        ModelExpansion m;
        m.algebra = h;
        m.agents = 1;
        m.trueFilter = tf;
        if (logic.logic == Logic::EL5) m.boxTable = forcedBoxTable(h);
        m.knowTables[1] = k;
        emit(std::move(m));
      }
    });
    return out;
  }

  // access-based logics: knowledge tables per agent, then common-knowledge
  // tables bounded by the pointwise meet of the group's knowledge tables
  const auto masks = groupMasks(logic.agents);
  std::function<void(std::size_t, ModelExpansion&)> fillCommon =
      [&](std::size_t gi, ModelExpansion& m) {
        if (exhausted()) return;
        if (gi == masks.size()) {
          emit(m);
          return;
        }
        std::uint32_t g = masks[gi];
        std::vector<int> upper(h.size, h.top);
        for (AgentId i : Group::fromMask(g).members())
          upper = pointwiseMin(h, upper, m.knowTables[i]);
        // common knowledge of a group sits below that of its subgroups;
        // submasks precede g, so their tables are already chosen
        for (const auto& [g2, t2] : m.commonTables)
          if ((g & ~g2) != 0 && (g2 & ~g) == 0)
            upper = pointwiseMin(h, upper, t2);
        std::vector<int> lower(h.size, h.bot);
        lower[h.top] = h.top;
        std::vector<std::vector<int>> cCandidates;
        monotoneTables(h, lower, upper, cCandidates, 400);
        for (const auto& c : cCandidates) {
          if (exhausted()) return;
          m.commonTables[g] = c;
          fillCommon(gi + 1, m);
        }
        m.commonTables.erase(g);
      };

  forEachTrue([&](std::optional<std::vector<int>> tf) {
    std::vector<std::size_t> pick(logic.agents, 0);
    if (kCandidates.empty()) return;
    for (;;) {
      if (exhausted()) return;
      ModelExpansion m;
      m.algebra = h;
      m.agents = logic.agents;
      m.trueFilter = tf;
      m.boxTable = forcedBoxTable(h);
      for (int i = 1; i <= logic.agents; ++i)
        m.knowTables[i] = kCandidates[pick[i - 1]];
      fillCommon(0, m);
      std::size_t a = 0;
      while (a < pick.size() && ++pick[a] == kCandidates.size()) pick[a++] = 0;
      if (a == pick.size()) break;
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Validator equivalence sweep

namespace {

// pseudo-random candidate tables spanning the whole spectrum from garbage to
// almost-valid
std::vector<int> randomTable(std::mt19937_64& rng, const HeytingAlgebra& h,
                             int strategy) {
  std::vector<int> t(h.size);
  switch (strategy) {
    case 0:  // arbitrary
      for (int a = 0; a < h.size; ++a)
        t[a] = static_cast<int>(rng() % h.size);
      break;
    case 1: {  // monotone-ish: arbitrary, then joined up along the order
      for (int a = 0; a < h.size; ++a)
        t[a] = static_cast<int>(rng() % h.size);
      for (int a = 0; a < h.size; ++a)
        for (int b = 0; b < h.size; ++b)
          if (h.le(a, b)) t[b] = h.join[t[b]][t[a]];
      break;
    }
    default: {  // a threshold construction, sometimes corrupted
      int threshold = static_cast<int>(rng() % h.size);
      for (int a = 0; a < h.size; ++a)
        t[a] = h.le(threshold, a) ? a : h.bot;
      t[h.top] = h.top;
      if (rng() % 2 == 0)
        t[rng() % h.size] = static_cast<int>(rng() % h.size);
      break;
    }
  }
  return t;
}

}  // namespace

EquivalenceReport validatorEquivalenceSweep(const LogicId& logic,
                                            int candidates,
                                            std::uint64_t seed) {
  EquivalenceReport report;
  std::mt19937_64 rng(seed);
  const auto& corpus = algebraCorpus();
  const auto masks = groupMasks(logic.agents);
  std::size_t algebraIdx = 0;
  while (report.candidates < candidates) {
    const CorpusEntry& entry = corpus[algebraIdx % corpus.size()];
    ++algebraIdx;
    const HeytingAlgebra& h = entry.algebra;

    ModelExpansion m;
    m.label = entry.label + "-cand" + std::to_string(report.candidates);
    m.algebra = h;
    m.agents = logic.agents;
    if (logic.logic != Logic::IEL) {
      // usually a genuine ultrafilter; occasionally an arbitrary up-set to
      // exercise the typing condition
      std::vector<const FilterSet*> ultras;
      std::vector<FilterSet> filters = enumerateFilters(h);
      for (const FilterSet& f : filters)
        if (f.ultra) ultras.push_back(&f);
      if (!ultras.empty() && rng() % 8 != 0) {
        m.trueFilter = ultras[rng() % ultras.size()]->elements;
      } else {
        m.trueFilter = filters[rng() % filters.size()].elements;
      }
      m.boxTable = forcedBoxTable(h);
      if (rng() % 8 == 0)
        (*m.boxTable)[rng() % h.size] = static_cast<int>(rng() % h.size);
    }
    if (logic.hasKnow())
      for (int i = 1; i <= logic.agents; ++i)
        m.knowTables[i] = randomTable(rng, h, static_cast<int>(rng() % 3));
    if (logic.hasCommon())
      for (std::uint32_t g : masks)
        m.commonTables[g] = randomTable(rng, h, static_cast<int>(rng() % 3));

    ValidationReport viaFilters = validateFilterRoute(logic, m);
    ValidationReport viaIneq = validateInequationalRoute(logic, m);
    ++report.candidates;
    if (viaIneq.valid) ++report.valid;
    if (viaFilters.valid != viaIneq.valid) {
      ++report.disagreements;
      if (report.firstDisagreement.empty())
        report.firstDisagreement =
            m.label + ": filter route says " +
            (viaFilters.valid ? "valid" : "invalid") +
            ", inequational route says " +
            (viaIneq.valid ? "valid" : "invalid");
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Fixtures

namespace {

HeytingAlgebra quarterChain() {
  HeytingAlgebra h = chainAlgebra(5);
  h.names = {"0", "1/4", "1/2", "3/4", "1"};
  return h;
}

}  // namespace

ModelExpansion makeFixture(Fixture f) {
  ModelExpansion m;
  m.algebra = quarterChain();
  m.agents = 2;
  m.trueFilter = std::vector<int>{1, 2, 3, 4};
  m.boxTable = std::vector<int>{0, 0, 0, 0, 4};
  // thresholds: agent 1 knows from 1/4 up, agent 2 from 1/2 up
  const std::vector<int> k1A = {0, 1, 2, 3, 4};
  const std::vector<int> k2A = {0, 0, 2, 3, 4};
  // the non-trivial variants keep knowledge only on {3/4, 1} and collapse
  // everything else known to the lowest knowledge threshold
  const std::vector<int> k1C = {0, 1, 1, 3, 4};
  const std::vector<int> k2C = {0, 0, 1, 3, 4};
  const std::vector<int> onP = {0, 0, 0, 3, 4};  // identity on {3/4, 1}
  switch (f) {
    case Fixture::A:
      m.label = "fixtureA";
      m.knowTables[1] = k1A;
      m.knowTables[2] = k2A;
      m.commonTables[0b01] = k1A;
      m.commonTables[0b10] = k2A;
      m.commonTables[0b11] = k2A;  // the strongest member's knowledge
      break;
    case Fixture::B:
      m.label = "fixtureB";
      m.knowTables[1] = k1A;
      m.knowTables[2] = k2A;
      m.commonTables[0b01] = k1A;
      m.commonTables[0b10] = k2A;
      m.commonTables[0b11] = onP;  // strictly above everyone's threshold
      break;
    case Fixture::C:
      m.label = "fixtureC";
      m.knowTables[1] = k1C;
      m.knowTables[2] = k2C;
      m.commonTables[0b01] = k1C;
      m.commonTables[0b10] = onP;
      m.commonTables[0b11] = onP;
      break;
    case Fixture::D:
      m.label = "fixtureD";
      m.knowTables[1] = k1C;
      m.knowTables[2] = k2C;
      m.commonTables[0b01] = k1C;
      m.commonTables[0b10] = onP;
      // shift below top: 3/4 drops to 1/2, top stays pinned at top
      m.commonTables[0b11] = std::vector<int>{0, 0, 0, 2, 4};
      break;
  }
  return m;
}

std::optional<Fixture> fixtureFromName(const std::string& name) {
  if (name == "A") return Fixture::A;
  if (name == "B") return Fixture::B;
  if (name == "C") return Fixture::C;
  if (name == "D") return Fixture::D;
  return std::nullopt;
}

std::vector<ModelExpansion> modelCorpus(const LogicId& logic,
                                        int perAlgebraLimit) {
  std::vector<ModelExpansion> out;
  if (logic.hasCommon() && logic.agents == 2) {
    out.push_back(makeFixture(Fixture::A));
    out.push_back(makeFixture(Fixture::B));
    out.push_back(makeFixture(Fixture::C));
    if (logic.logic == Logic::L5ACminus)
      out.push_back(makeFixture(Fixture::D));
  }
  for (const CorpusEntry& entry : algebraCorpus()) {
    if (entry.algebra.size > 6) continue;
    for (ModelExpansion& m :
         generateValidModels(logic, entry.algebra, entry.label,
                             perAlgebraLimit))
      out.push_back(std::move(m));
  }
  return out;
}

std::optional<Countermodel> countermodelSearch(const LogicId& logic,
                                               const Formula& f,
                                               const SearchBounds& bounds) {
  if (!formulaInLogic(f, logic))
    throw ModelError("formula outside the language of " + logic.name());
  std::vector<std::string> vars = f.vars();

  auto tryModel = [&](const ModelExpansion& m) -> std::optional<Assignment> {
    const int n = m.algebra.size;
    std::vector<int> tuple(vars.size(), 0);
    for (;;) {
      Assignment g;
      for (std::size_t i = 0; i < vars.size(); ++i) g[vars[i]] = tuple[i];
      if (!satisfies(logic, m, g, f)) return g;
      std::size_t k = 0;
      while (k < tuple.size() && ++tuple[k] == n) tuple[k++] = 0;
      if (k == tuple.size() || tuple.empty()) break;
    }
    return std::nullopt;
  };

  if (logic.hasCommon() && logic.agents == 2) {
    std::vector<Fixture> fixtures = {Fixture::A, Fixture::B, Fixture::C};
    if (logic.logic == Logic::L5ACminus) fixtures.push_back(Fixture::D);
    for (Fixture fx : fixtures) {
      ModelExpansion m = makeFixture(fx);
      if (m.algebra.size > bounds.maxAlgebraSize) continue;
      if (auto g = tryModel(m)) return Countermodel{std::move(m), *g};
    }
  }
  for (const CorpusEntry& entry : algebraCorpus()) {
    if (entry.algebra.size > bounds.maxAlgebraSize) continue;
    for (ModelExpansion& m :
         generateValidModels(logic, entry.algebra, entry.label,
                             bounds.perAlgebraLimit,
                             bounds.candidateBudget)) {
      if (auto g = tryModel(m)) return Countermodel{std::move(m), *g};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Text format

ModelExpansion parseModelText(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::ostringstream algebraPart;
  std::vector<std::string> tableLines;
  int agents = 0;
  // split: algebra keywords go to the algebra parser, the rest is handled here
  while (std::getline(in, line)) {
    std::string body = line.substr(0, line.find('#'));
    std::istringstream ls(body);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "elements" || kw == "name" || kw == "order")
      algebraPart << body << "\n";
    else if (kw == "agents") {
      if (!(ls >> agents) || agents < 1)
        throw ModelError("bad agents line: " + line);
    } else
      tableLines.push_back(body);
  }
  ModelExpansion m;
  m.algebra = parseAlgebraText(algebraPart.str());
  m.agents = agents;

  auto parseTable = [&](std::istringstream& ls,
                        const std::string& what) -> std::vector<int> {
    std::vector<int> table(m.algebra.size, -1);
    std::string pair;
    while (ls >> pair) {
      std::size_t arrow = pair.find("->");
      if (arrow == std::string::npos)
        throw ModelError(what + ": expected m->v, got '" + pair + "'");
      int from, to;
      try {
        from = std::stoi(pair.substr(0, arrow));
        to = std::stoi(pair.substr(arrow + 2));
      } catch (const std::exception&) {
        throw ModelError(what + ": bad entry '" + pair + "'");
      }
      if (from < 0 || from >= m.algebra.size || to < 0 ||
          to >= m.algebra.size)
        throw ModelError(what + ": element out of range in '" + pair + "'");
      table[from] = to;
    }
    for (int v : table)
      if (v < 0) throw ModelError(what + " table is not total");
    return table;
  };

  for (const std::string& body : tableLines) {
    std::size_t colon = body.find(':');
    if (colon == std::string::npos)
      throw ModelError("expected '<table>: entries', got: " + body);
    std::string head = body.substr(0, colon);
    head.erase(remove_if(head.begin(), head.end(), ::isspace), head.end());
    std::istringstream ls(body.substr(colon + 1));
    if (head == "TRUE") {
      std::vector<int> elems;
      std::string item;
      while (std::getline(ls, item, ',')) {
        try {
          elems.push_back(std::stoi(item));
        } catch (const std::exception&) {
          throw ModelError("TRUE: bad element '" + item + "'");
        }
      }
      std::sort(elems.begin(), elems.end());
      m.trueFilter = std::move(elems);
    } else if (head == "box") {
      m.boxTable = parseTable(ls, "box");
    } else if (head.size() >= 2 && head[0] == 'K') {
      int agent = std::stoi(head.substr(1));
      m.knowTables[agent] = parseTable(ls, head);
      if (agent > m.agents) m.agents = agent;
    } else if (head.size() >= 2 && head[0] == 'C') {
      // C{1,2}
      std::vector<AgentId> members;
      std::string inner = head.substr(1);
      if (inner.front() != '{' || inner.back() != '}')
        throw ModelError("bad group in table head: " + head);
      std::istringstream gs(inner.substr(1, inner.size() - 2));
      std::string num;
      while (std::getline(gs, num, ','))
        members.push_back(std::stoi(num));
      Group g(members);
      m.commonTables[g.mask()] = parseTable(ls, head);
    } else {
      throw ModelError("unknown table head: " + head);
    }
  }
  if (m.agents == 0 && !m.knowTables.empty())
    m.agents = m.knowTables.rbegin()->first;
  return m;
}

std::string modelToText(const ModelExpansion& m) {
  std::ostringstream out;
  out << algebraToText(m.algebra);
  if (m.agents > 0) out << "agents " << m.agents << "\n";
  if (m.trueFilter) {
    out << "TRUE: ";
    for (std::size_t i = 0; i < m.trueFilter->size(); ++i)
      out << (i ? "," : "") << (*m.trueFilter)[i];
    out << "\n";
  }
  auto table = [&](const std::string& head, const std::vector<int>& t) {
    out << head << ":";
    for (int a = 0; a < m.algebra.size; ++a) out << " " << a << "->" << t[a];
    out << "\n";
  };
  if (m.boxTable) table("box", *m.boxTable);
  for (const auto& [i, t] : m.knowTables)
    table("K" + std::to_string(i), t);
  for (const auto& [g, t] : m.commonTables) table("C" + groupName(g), t);
  return out.str();
}

}  // namespace epik
