#include "epik/ipc.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace epik {

// ---------------------------------------------------------------------------
// Sequent prover. The calculus splits the left implication rule by the shape
// of its antecedent, which makes every rule reduce a well-founded weight, so
// the search terminates without any loop check. Invertible rules are applied
// first, left to right; only the choice points (right disjunction, nested
// implication on the left) backtrack.

namespace {

bool isAtom(const Formula& f) { return f.kind() == Kind::Var; }

bool proveSeq(std::set<Formula> gamma, Formula goal) {
  // Saturation with invertible rules.
  for (;;) {
    if (gamma.count(Formula::bottom())) return true;
    if (gamma.count(goal)) return true;

    if (goal.kind() == Kind::And)
      return proveSeq(gamma, goal.left()) && proveSeq(gamma, goal.right());
    if (goal.kind() == Kind::Imp) {
      gamma.insert(goal.left());
      goal = goal.right();
      continue;
    }

    bool changed = false;
    for (auto it = gamma.begin(); it != gamma.end(); ++it) {
      const Formula f = *it;
      if (f.kind() == Kind::And) {
        gamma.erase(it);
        gamma.insert(f.left());
        gamma.insert(f.right());
        changed = true;
        break;
      }
      if (f.kind() == Kind::Imp) {
        const Formula a = f.left(), b = f.right();
        if (a.kind() == Kind::Bottom) {  // (false -> b) carries no content
          gamma.erase(it);
          changed = true;
          break;
        }
        if (isAtom(a) && gamma.count(a)) {
          gamma.erase(it);
          gamma.insert(b);
          changed = true;
          break;
        }
        if (a.kind() == Kind::And) {  // (c & d -> b)  ~>  c -> (d -> b)
          gamma.erase(it);
          gamma.insert(Formula::imp(a.left(), Formula::imp(a.right(), b)));
          changed = true;
          break;
        }
        if (a.kind() == Kind::Or) {  // (c | d -> b)  ~>  c -> b, d -> b
          gamma.erase(it);
          gamma.insert(Formula::imp(a.left(), b));
          gamma.insert(Formula::imp(a.right(), b));
          changed = true;
          break;
        }
      }
    }
    if (changed) continue;

    for (auto it = gamma.begin(); it != gamma.end(); ++it) {
      if (it->kind() == Kind::Or) {
        Formula a = it->left(), b = it->right();
        std::set<Formula> left = gamma, right = gamma;
        left.erase(*it);
        right.erase(*it);
        left.insert(a);
        right.insert(b);
        return proveSeq(std::move(left), goal) &&
               proveSeq(std::move(right), goal);
      }
    }
    break;
  }

  // Choice points. Antecedent now holds only atoms and implications whose
  // antecedent is an atom not in gamma or a nested implication.
  if (goal.kind() == Kind::Or) {
    if (proveSeq(gamma, goal.left())) return true;
    if (proveSeq(gamma, goal.right())) return true;
  }
  for (const Formula& f : gamma) {
    if (f.kind() != Kind::Imp) continue;
    const Formula a = f.left(), b = f.right();
    if (a.kind() != Kind::Imp) continue;
    // ((c -> d) -> b): prove c -> d with d -> b in place of the principal
    // formula, then continue from b.
    std::set<Formula> first = gamma;
    first.erase(f);
    first.insert(Formula::imp(a.right(), b));
    if (!proveSeq(std::move(first), a)) continue;
    std::set<Formula> second = gamma;
    second.erase(f);
    second.insert(b);
    if (proveSeq(std::move(second), goal)) return true;
  }
  return false;
}

}  // namespace

bool isIpcTautology(const Formula& f) {
  if (!f.isPropositional())
    throw std::invalid_argument(
        "intuitionistic decision requires a propositional formula");
  return proveSeq({}, f);
}

bool isIntInstance(const Formula& f) {
  return isIpcTautology(abstractPropositional(f).propositional);
}

// ---------------------------------------------------------------------------
// Kripke models

bool KripkeModel::forces(int world, const Formula& f) const {
  return (extension(f) >> world) & 1u;
}

std::uint32_t KripkeModel::extension(const Formula& f) const {
  const std::uint32_t all = (worlds >= 32) ? ~0u : ((1u << worlds) - 1);
  switch (f.kind()) {
    case Kind::Var: {
      auto it = val.find(f.varName());
      return it == val.end() ? 0u : it->second;
    }
    case Kind::Bottom:
      return 0u;
    case Kind::And:
      return extension(f.left()) & extension(f.right());
    case Kind::Or:
      return extension(f.left()) | extension(f.right());
    case Kind::Imp: {
      std::uint32_t a = extension(f.left());
      std::uint32_t b = extension(f.right());
      std::uint32_t bad = a & ~b;  // worlds where the implication body fails
      std::uint32_t out = 0;
      for (int w = 0; w < worlds; ++w) {
        std::uint32_t above = 0;
        for (int v = 0; v < worlds; ++v)
          if (leq[w][v]) above |= 1u << v;
        if ((above & bad) == 0) out |= 1u << w;
      }
      return out & all;
    }
    default:
      throw std::invalid_argument("Kripke evaluation is propositional only");
  }
}

std::string KripkeModel::str() const {
  std::ostringstream out;
  out << "worlds: " << worlds << " (root 0)\n";
  out << "order:";
  bool any = false;
  for (int w = 0; w < worlds; ++w)
    for (int v = 0; v < worlds; ++v)
      if (w != v && leq[w][v]) {
        out << " " << w << "<=" << v;
        any = true;
      }
  if (!any) out << " (discrete)";
  out << "\n";
  for (int w = 0; w < worlds; ++w) {
    out << "world " << w << ":";
    bool first = true;
    for (const auto& [atom, mask] : val)
      if ((mask >> w) & 1u) {
        out << (first ? " " : ", ") << atom;
        first = false;
      }
    if (first) out << " (no atoms)";
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Enumeration of rooted orders up to isomorphism

namespace {

using Order = std::vector<std::vector<bool>>;

std::string canonicalKey(const Order& leq) {
  int n = static_cast<int>(leq.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::string key(static_cast<std::size_t>(n) * n, '0');
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq[perm[i]][perm[j]]) key[i * n + j] = '1';
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool isTransitive(const Order& leq) {
  int n = static_cast<int>(leq.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (leq[i][j])
        for (int k = 0; k < n; ++k)
          if (leq[j][k] && !leq[i][k]) return false;
  return true;
}

}  // namespace

std::vector<Order> rootedOrders(int n) {
  static std::mutex cacheMutex;
  static std::map<int, std::vector<Order>> cache;
  {
    std::lock_guard<std::mutex> lock(cacheMutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  std::vector<Order> out;
  if (n < 1) return out;
  // Strict edges only from lower to higher index: every finite order has a
  // linear extension, so this loses nothing up to isomorphism. Root 0 must
  // lie below everything.
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::set<std::string> seen;
  for (std::uint32_t bits = 0; bits < (1u << pairs.size()); ++bits) {
    Order leq(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) leq[i][i] = true;
    for (std::size_t p = 0; p < pairs.size(); ++p)
      if ((bits >> p) & 1u) leq[pairs[p].first][pairs[p].second] = true;
    if (!isTransitive(leq)) continue;
    bool rooted = true;
    for (int j = 1; j < n; ++j)
      if (!leq[0][j]) { rooted = false; break; }
    if (!rooted) continue;
    if (seen.insert(canonicalKey(leq)).second) out.push_back(leq);
  }
  std::lock_guard<std::mutex> lock(cacheMutex);
  cache[n] = out;
  return out;
}

std::vector<std::uint32_t> upsets(const Order& leq) {
  int n = static_cast<int>(leq.size());
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool closed = true;
    for (int w = 0; w < n && closed; ++w)
      if ((mask >> w) & 1u)
        for (int v = 0; v < n; ++v)
          if (leq[w][v] && !((mask >> v) & 1u)) { closed = false; break; }
    if (closed) out.push_back(mask);
  }
  return out;
}

std::optional<KripkeModel> kripkeCountermodel(const Formula& f,
                                              int maxWorlds) {
  if (!f.isPropositional())
    throw std::invalid_argument("countermodel search is propositional only");
  if (maxWorlds < 1) throw std::invalid_argument("maxWorlds must be >= 1");
  std::vector<std::string> atoms = f.vars();
  for (int n = 1; n <= maxWorlds; ++n) {
    for (const Order& leq : rootedOrders(n)) {
      std::vector<std::uint32_t> ups = upsets(leq);
      std::vector<std::size_t> pick(atoms.size(), 0);
      for (;;) {
        KripkeModel model;
        model.worlds = n;
        model.leq = leq;
        for (std::size_t a = 0; a < atoms.size(); ++a)
          model.val[atoms[a]] = ups[pick[a]];
        if (!model.forces(0, f)) return model;
        // next valuation combination
        std::size_t a = 0;
        while (a < atoms.size() && ++pick[a] == ups.size()) pick[a++] = 0;
        if (a == atoms.size()) break;
      }
    }
  }
  return std::nullopt;
}

}  // namespace epik
