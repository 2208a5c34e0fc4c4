#include "epik/heyting.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace epik {

int HeytingAlgebra::elementByName(const std::string& n) const {
  for (int i = 0; i < size; ++i)
    if (names[i] == n) return i;
  return -1;
}

bool HeytingAlgebra::hasDisjunctionProperty() const {
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b)
      if (join[a][b] == top && a != top && b != top) return false;
  return true;
}

HeytingAlgebra buildAlgebra(int n,
                            const std::vector<std::pair<int, int>>& order,
                            std::vector<std::string> names) {
  if (n < 1) throw AlgebraError("empty carrier");
  HeytingAlgebra h;
  h.size = n;
  h.leq.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) h.leq[i][i] = true;
  for (auto [a, b] : order) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw AlgebraError("order pair out of range");
    h.leq[a][b] = true;
  }
  // transitive closure
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (h.leq[i][k])
        for (int j = 0; j < n; ++j)
          if (h.leq[k][j]) h.leq[i][j] = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && h.leq[i][j] && h.leq[j][i])
        throw AlgebraError("not a partial order: " + std::to_string(i) +
                           " and " + std::to_string(j) + " form a cycle");

  if (names.empty()) {
    for (int i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
  }
  if (static_cast<int>(names.size()) != n)
    throw AlgebraError("name list does not match the carrier");
  h.names = std::move(names);

  auto meetOf = [&](int a, int b) -> int {
    int best = -1;
    for (int c = 0; c < n; ++c) {
      if (!h.leq[c][a] || !h.leq[c][b]) continue;
      if (best == -1 || h.leq[best][c]) best = c;
    }
    if (best == -1) return -1;
    for (int c = 0; c < n; ++c)
      if (h.leq[c][a] && h.leq[c][b] && !h.leq[c][best]) return -1;
    return best;
  };
  auto joinOf = [&](int a, int b) -> int {
    int best = -1;
    for (int c = 0; c < n; ++c) {
      if (!h.leq[a][c] || !h.leq[b][c]) continue;
      if (best == -1 || h.leq[c][best]) best = c;
    }
    if (best == -1) return -1;
    for (int c = 0; c < n; ++c)
      if (h.leq[a][c] && h.leq[b][c] && !h.leq[best][c]) return -1;
    return best;
  };

  h.meet.assign(n, std::vector<int>(n, -1));
  h.join.assign(n, std::vector<int>(n, -1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      h.meet[a][b] = meetOf(a, b);
      if (h.meet[a][b] < 0)
        throw AlgebraError("not a lattice: " + h.names[a] + " and " +
                           h.names[b] + " have no meet");
      h.join[a][b] = joinOf(a, b);
      if (h.join[a][b] < 0)
        throw AlgebraError("not a lattice: " + h.names[a] + " and " +
                           h.names[b] + " have no join");
    }

  // bounds
  h.bot = 0;
  h.top = 0;
  for (int a = 0; a < n; ++a) {
    h.bot = h.meet[h.bot][a];
    h.top = h.join[h.top][a];
  }

  // relative pseudo-complement: greatest c with meet(a,c) <= b
  h.imp.assign(n, std::vector<int>(n, -1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> candidates;
      for (int c = 0; c < n; ++c)
        if (h.leq[h.meet[a][c]][b]) candidates.push_back(c);
      int best = -1;
      for (int c : candidates) {
        bool greatest = true;
        for (int d : candidates)
          if (!h.leq[d][c]) {
            greatest = false;
            break;
          }
        if (greatest) {
          best = c;
          break;
        }
      }
      if (best < 0)
        throw AlgebraError("no relative pseudo-complement for (" +
                           h.names[a] + ", " + h.names[b] + ")");
      h.imp[a][b] = best;
    }

  // residuation sanity: a <= b iff imp(a,b) = top
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (h.leq[a][b] != (h.imp[a][b] == h.top))
        throw AlgebraError("implication table fails residuation");
  return h;
}

HeytingAlgebra chainAlgebra(int n) {
  if (n < 2) throw AlgebraError("a chain needs at least 2 elements");
  std::vector<std::pair<int, int>> order;
  for (int i = 0; i + 1 < n; ++i) order.emplace_back(i, i + 1);
  return buildAlgebra(n, order);
}

// ---------------------------------------------------------------------------
// Filters

bool FilterSet::contains(int m) const {
  return std::binary_search(elements.begin(), elements.end(), m);
}

std::vector<FilterSet> enumerateFilters(const HeytingAlgebra& h) {
  std::vector<FilterSet> out;
  for (int g = 0; g < h.size; ++g) {
    FilterSet f;
    f.generator = g;
    for (int m = 0; m < h.size; ++m)
      if (h.le(g, m)) f.elements.push_back(m);
    f.proper = !f.contains(h.bot);
    f.prime = f.proper;
    for (int a = 0; a < h.size && f.prime; ++a)
      for (int b = 0; b < h.size; ++b)
        if (f.contains(h.join[a][b]) && !f.contains(a) && !f.contains(b)) {
          f.prime = false;
          break;
        }
    out.push_back(std::move(f));
  }
  // ultra = maximal proper: no other proper filter strictly contains it
  for (FilterSet& f : out) {
    if (!f.proper) continue;
    f.ultra = true;
    for (const FilterSet& g : out) {
      if (!g.proper || g.generator == f.generator) continue;
      if (std::includes(g.elements.begin(), g.elements.end(),
                        f.elements.begin(), f.elements.end()) &&
          g.elements.size() > f.elements.size()) {
        f.ultra = false;
        break;
      }
    }
  }
  return out;
}

FilterTheoryReport checkFilterTheory(const HeytingAlgebra& h) {
  FilterTheoryReport report;
  auto fail = [&](const std::string& msg) {
    if (report.ok) {
      report.ok = false;
      report.failure = msg;
    }
  };
  std::vector<FilterSet> filters = enumerateFilters(h);
  std::vector<const FilterSet*> primes;
  for (const FilterSet& f : filters)
    if (f.prime) primes.push_back(&f);

  // (1) proper filters are intersections of the primes above them
  for (const FilterSet& f : filters) {
    if (!f.proper) continue;
    std::vector<int> inter;
    for (int m = 0; m < h.size; ++m) {
      bool all = true;
      for (const FilterSet* p : primes) {
        bool contains = std::includes(p->elements.begin(), p->elements.end(),
                                      f.elements.begin(), f.elements.end());
        if (contains && !p->contains(m)) {
          all = false;
          break;
        }
      }
      if (all) inter.push_back(m);
    }
    if (inter != f.elements) {
      fail("filter at " + h.name(f.generator) +
           " is not the intersection of its prime extensions");
      return report;
    }
  }

  // (2) membership of implications characterized through prime extensions
  for (const FilterSet& p : filters) {
    for (int a = 0; a < h.size; ++a)
      for (int b = 0; b < h.size; ++b) {
        bool lhs = p.contains(h.imp[a][b]);
        bool rhs = true;
        for (const FilterSet* q : primes) {
          bool extends = std::includes(q->elements.begin(), q->elements.end(),
                                       p.elements.begin(), p.elements.end());
          if (extends && q->contains(a) && !q->contains(b)) {
            rhs = false;
            break;
          }
        }
        if (lhs != rhs) {
          fail("implication membership fails at filter " +
               h.name(p.generator) + " with a=" + h.name(a) +
               ", b=" + h.name(b));
          return report;
        }
      }
  }

  // (3) order reflection through primes, when {top} is prime
  bool topPrime = false;
  for (const FilterSet& f : filters)
    if (f.generator == h.top && f.prime) topPrime = true;
  if (topPrime) {
    for (int a = 0; a < h.size; ++a)
      for (int b = 0; b < h.size; ++b) {
        bool rhs = true;
        for (const FilterSet* p : primes)
          if (p->contains(a) && !p->contains(b)) {
            rhs = false;
            break;
          }
        if (h.le(a, b) != rhs) {
          fail("order reflection fails at a=" + h.name(a) +
               ", b=" + h.name(b));
          return report;
        }
      }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Corpus

std::vector<Poset> allPosets(int n) {
  std::vector<Poset> out;
  if (n < 1) return out;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::set<std::string> seen;
  for (std::uint32_t bits = 0; bits < (1u << pairs.size()); ++bits) {
    Poset p;
    p.n = n;
    p.leq.assign(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) p.leq[i][i] = true;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if ((bits >> k) & 1u) p.leq[pairs[k].first][pairs[k].second] = true;
    bool transitive = true;
    for (int i = 0; i < n && transitive; ++i)
      for (int j = 0; j < n && transitive; ++j)
        if (p.leq[i][j])
          for (int k = 0; k < n; ++k)
            if (p.leq[j][k] && !p.leq[i][k]) {
              transitive = false;
              break;
            }
    if (!transitive) continue;
    // canonical form over all relabelings
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
      std::string key(static_cast<std::size_t>(n) * n, '0');
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (p.leq[perm[i]][perm[j]]) key[i * n + j] = '1';
      if (best.empty() || key < best) best = key;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (seen.insert(best).second) out.push_back(std::move(p));
  }
  return out;
}

HeytingAlgebra downsetAlgebra(const Poset& p) {
  // enumerate down-sets as bitmasks, ascending
  std::vector<std::uint32_t> downs;
  for (std::uint32_t mask = 0; mask < (1u << p.n); ++mask) {
    bool closed = true;
    for (int i = 0; i < p.n && closed; ++i)
      if ((mask >> i) & 1u)
        for (int j = 0; j < p.n; ++j)
          if (p.leq[j][i] && !((mask >> j) & 1u)) {
            closed = false;
            break;
          }
    if (closed) downs.push_back(mask);
  }
  int n = static_cast<int>(downs.size());
  std::vector<std::pair<int, int>> order;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if ((downs[a] & ~downs[b]) == 0) order.emplace_back(a, b);
  std::vector<std::string> names;
  for (std::uint32_t d : downs) {
    std::string s = "d{";
    bool first = true;
    for (int i = 0; i < p.n; ++i)
      if ((d >> i) & 1u) {
        if (!first) s += ",";
        s += std::to_string(i);
        first = false;
      }
    names.push_back(s + "}");
  }
  return buildAlgebra(n, order, std::move(names));
}

HeytingAlgebra booleanSquare() {
  // 0 < p,q < 1
  return buildAlgebra(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}},
                      {"0", "p", "q", "1"});
}

const std::vector<CorpusEntry>& algebraCorpus() {
  static const std::vector<CorpusEntry> corpus = [] {
    std::vector<CorpusEntry> out;
    for (int n = 2; n <= 6; ++n)
      out.push_back({"chain" + std::to_string(n), chainAlgebra(n)});
    for (int n = 1; n <= 4; ++n) {
      int idx = 0;
      for (const Poset& p : allPosets(n)) {
        out.push_back({"downsets" + std::to_string(n) + "-" +
                           std::to_string(idx++),
                       downsetAlgebra(p)});
      }
    }
    out.push_back({"boolean-square", booleanSquare()});
    return out;
  }();
  return corpus;
}

// ---------------------------------------------------------------------------
// Text format

HeytingAlgebra parseAlgebraText(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = -1;
  std::vector<std::pair<int, int>> order;
  std::vector<std::string> names;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    std::string body = line.substr(0, line.find('#'));
    std::istringstream ls(body);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "elements") {
      if (!(ls >> n) || n < 1)
        throw AlgebraError("line " + std::to_string(lineNo) +
                           ": bad element count");
      names.assign(n, "");
      for (int i = 0; i < n; ++i) names[i] = "e" + std::to_string(i);
    } else if (kw == "name") {
      int idx;
      std::string nm;
      if (n < 0 || !(ls >> idx >> nm) || idx < 0 || idx >= n)
        throw AlgebraError("line " + std::to_string(lineNo) + ": bad name");
      names[idx] = nm;
    } else if (kw == "order") {
      std::string pair;
      while (ls >> pair) {
        std::size_t lt = pair.find('<');
        if (lt == std::string::npos)
          throw AlgebraError("line " + std::to_string(lineNo) +
                             ": expected i<j, got '" + pair + "'");
        try {
          order.emplace_back(std::stoi(pair.substr(0, lt)),
                             std::stoi(pair.substr(lt + 1)));
        } catch (const std::exception&) {
          throw AlgebraError("line " + std::to_string(lineNo) +
                             ": bad order pair '" + pair + "'");
        }
      }
    } else {
      throw AlgebraError("line " + std::to_string(lineNo) +
                         ": unknown keyword '" + kw + "'");
    }
  }
  if (n < 0) throw AlgebraError("missing 'elements' line");
  return buildAlgebra(n, order, std::move(names));
}

std::string algebraToText(const HeytingAlgebra& h) {
  std::ostringstream out;
  out << "elements " << h.size << "\n";
  for (int i = 0; i < h.size; ++i)
    if (h.names[i] != "e" + std::to_string(i))
      out << "name " << i << " " << h.names[i] << "\n";
  out << "order";
  for (int a = 0; a < h.size; ++a)
    for (int b = 0; b < h.size; ++b)
      if (a != b && h.le(a, b)) out << " " << a << "<" << b;
  out << "\n";
  return out.str();
}

}  // namespace epik
