#include "epik/common_knowledge.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace epik {

std::vector<int> belSet(const ModelExpansion& m, AgentId agent) {
  std::vector<int> out;
  for (int a = 0; a < m.algebra.size; ++a)
    if (m.inTrue(m.know(agent, a))) out.push_back(a);
  return out;
}

std::vector<int> commonSet(const ModelExpansion& m, const Group& g) {
  std::vector<int> out;
  for (int a = 0; a < m.algebra.size; ++a)
    if (m.inTrue(m.common(g.mask(), a))) out.push_back(a);
  return out;
}

std::vector<int> gClosure(const ModelExpansion& m, const Group& g, int start) {
  std::set<int> seen = {start};
  std::vector<int> frontier = {start};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int a : frontier)
      for (AgentId i : g.members()) {
        int v = m.know(i, a);
        if (seen.insert(v).second) next.push_back(v);
      }
    frontier = std::move(next);
  }
  return std::vector<int>(seen.begin(), seen.end());
}

std::vector<int> greatestClosed(const ModelExpansion& m, const Group& g) {
  // start from the intersection of the members' knowledge sets and remove
  // elements whose knowledge image escapes, until stable
  std::vector<bool> in(m.algebra.size, true);
  for (AgentId i : g.members()) {
    std::vector<int> bel = belSet(m, i);
    for (int a = 0; a < m.algebra.size; ++a)
      if (!std::binary_search(bel.begin(), bel.end(), a)) in[a] = false;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < m.algebra.size; ++a) {
      if (!in[a]) continue;
      for (AgentId i : g.members())
        if (!in[m.know(i, a)]) {
          in[a] = false;
          changed = true;
          break;
        }
    }
  }
  std::vector<int> out;
  for (int a = 0; a < m.algebra.size; ++a)
    if (in[a]) out.push_back(a);
  return out;
}

namespace {

std::vector<std::uint32_t> sortedGroupMasks(const ModelExpansion& m) {
  std::vector<std::uint32_t> masks;
  for (const auto& [g, t] : m.commonTables) masks.push_back(g);
  std::sort(masks.begin(), masks.end());
  return masks;
}

std::string elems(const HeytingAlgebra& h, const std::vector<int>& set) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ",";
    out += h.name(set[i]);
  }
  return out + "}";
}

}  // namespace

IntendedReport analyzeIntended(const ModelExpansion& m) {
  IntendedReport report;
  report.model = m.label;
  report.intended = true;
  report.crossChecksAgree = true;
  for (std::uint32_t mask : sortedGroupMasks(m)) {
    Group g = Group::fromMask(mask);
    GroupVerdict v;
    v.group = g;
    v.common = commonSet(m, g);
    v.greatest = greatestClosed(m, g);
    v.intended = (v.common == v.greatest);

    // the members' knowledge sets intersected
    std::vector<bool> in(m.algebra.size, true);
    for (AgentId i : g.members()) {
      std::vector<int> bel = belSet(m, i);
      for (int a = 0; a < m.algebra.size; ++a)
        if (!std::binary_search(bel.begin(), bel.end(), a)) in[a] = false;
    }
    for (int a = 0; a < m.algebra.size; ++a)
      if (in[a]) v.belIntersection.push_back(a);

    // pointwise reading: C_G(m) true iff the whole G-closure is true
    bool pointwise = true;
    std::optional<int> pointwiseWitness;
    for (int a = 0; a < m.algebra.size; ++a) {
      std::vector<int> closure = gClosure(m, g, a);
      bool closureTrue = true;
      for (int c : closure)
        if (!m.inTrue(c)) {
          closureTrue = false;
          break;
        }
      if (m.inTrue(m.common(mask, a)) != closureTrue) {
        pointwise = false;
        if (!pointwiseWitness) pointwiseWitness = a;
      }
    }
    v.closureTestAgrees = (pointwise == v.intended);
    if (!v.closureTestAgrees) report.crossChecksAgree = false;
    if (!v.intended) {
      report.intended = false;
      if (pointwiseWitness)
        v.witness = pointwiseWitness;
      else {
        // first element separating the sets
        for (int a = 0; a < m.algebra.size; ++a) {
          bool inCommon = std::binary_search(v.common.begin(), v.common.end(), a);
          bool inGreatest =
              std::binary_search(v.greatest.begin(), v.greatest.end(), a);
          if (inCommon != inGreatest) {
            v.witness = a;
            break;
          }
        }
      }
    }
    report.groups.push_back(std::move(v));
  }
  return report;
}

std::string IntendedReport::str(const HeytingAlgebra& h) const {
  std::ostringstream out;
  out << "intended-model analysis for " << model << "\n";
  for (const GroupVerdict& v : groups) {
    out << "group " << v.group.str() << ": "
        << (v.intended ? "intended" : "NOT intended") << "\n";
    out << "  common knowledge:    " << elems(h, v.common) << "\n";
    out << "  greatest closed set: " << elems(h, v.greatest) << "\n";
    out << "  everyone knows:      " << elems(h, v.belIntersection) << "\n";
    out << "  closure cross-check: "
        << (v.closureTestAgrees ? "agrees" : "DISAGREES") << "\n";
    if (v.witness)
      out << "  witness: " << h.name(*v.witness)
          << " (closure true, common knowledge false)\n";
  }
  out << "verdict: " << (intended ? "INTENDED" : "NOT INTENDED") << "\n";
  return out.str();
}

ClosureSoundnessReport checkClosureSoundness(const ModelExpansion& m) {
  ClosureSoundnessReport report;
  for (std::uint32_t mask : sortedGroupMasks(m)) {
    Group g = Group::fromMask(mask);
    for (int a = 0; a < m.algebra.size; ++a) {
      if (!m.inTrue(m.common(mask, a))) continue;
      for (int c : gClosure(m, g, a))
        if (!m.inTrue(c)) {
          report.ok = false;
          report.failure = "C" + g.str() + "(" + m.algebra.name(a) +
                           ") is true but " + m.algebra.name(c) +
                           " in its closure is not";
          return report;
        }
    }
  }
  return report;
}

ClosureNestingReport checkClosureNesting(const ModelExpansion& m) {
  ClosureNestingReport report;
  auto fail = [&](const std::string& msg) {
    report.ok = false;
    report.failure = msg;
  };
  for (std::uint32_t mask : sortedGroupMasks(m)) {
    Group g = Group::fromMask(mask);
    std::vector<int> common = commonSet(m, g);
    std::vector<int> greatest = greatestClosed(m, g);
    if (!std::includes(greatest.begin(), greatest.end(), common.begin(),
                       common.end())) {
      fail("common knowledge of " + g.str() +
           " is not inside the greatest closed set");
      return report;
    }
    for (AgentId i : g.members()) {
      std::vector<int> bel = belSet(m, i);
      if (!std::includes(bel.begin(), bel.end(), greatest.begin(),
                         greatest.end())) {
        fail("greatest closed set of " + g.str() +
             " is not inside agent " + std::to_string(i) + "'s knowledge");
        return report;
      }
    }
    // commonSet is itself closed under G
    for (int a : common)
      for (AgentId i : g.members())
        if (!std::binary_search(common.begin(), common.end(),
                                m.know(i, a))) {
          fail("common knowledge of " + g.str() + " is not closed at " +
               m.algebra.name(a));
          return report;
        }
  }
  return report;
}

}  // namespace epik
