#include "epik/kernel.hpp"

#include <algorithm>
#include <sstream>

#include "epik/ipc.hpp"

namespace epik {

LogicId::LogicId(Logic l, int n) : logic(l), agents(n) {
  if (logic == Logic::IEL || logic == Logic::EL5 || logic == Logic::L5)
    agents = 1;
  if (agents < 1) throw std::invalid_argument("agent count must be >= 1");
  if (agents > 8)
    throw std::invalid_argument("agent count above 8 is not supported");
}

LanguageId LogicId::language() const {
  return logic == Logic::IEL ? LanguageId::FmE : LanguageId::Fm;
}

std::string LogicId::name() const {
  switch (logic) {
    case Logic::IEL: return "IEL";
    case Logic::L5: return "L5";
    case Logic::EL5: return "EL5";
    case Logic::L5ACminus: return "L5ACminus";
    case Logic::L5AC: return "L5AC";
  }
  return "?";
}

std::optional<Logic> logicFromName(const std::string& name) {
  if (name == "IEL") return Logic::IEL;
  if (name == "L5") return Logic::L5;
  if (name == "EL5") return Logic::EL5;
  if (name == "L5ACminus" || name == "L5AC-") return Logic::L5ACminus;
  if (name == "L5AC") return Logic::L5AC;
  return std::nullopt;
}

std::string schemeName(SchemeId s) {
  switch (s) {
    case SchemeId::INT: return "INT";
    case SchemeId::S1: return "S1";
    case SchemeId::S2: return "S2";
    case SchemeId::S3: return "S3";
    case SchemeId::S4: return "S4";
    case SchemeId::S5: return "S5";
    case SchemeId::S6: return "S6";
    case SchemeId::S7: return "S7";
    case SchemeId::S8: return "S8";
    case SchemeId::S9: return "S9";
    case SchemeId::S10: return "S10";
    case SchemeId::S11: return "S11";
    case SchemeId::S12: return "S12";
    case SchemeId::S13: return "S13";
    case SchemeId::S14: return "S14";
    case SchemeId::S15: return "S15";
    case SchemeId::TND: return "TND";
    case SchemeId::IEL_DIST: return "IEL_DIST";
    case SchemeId::IEL_COREFL: return "IEL_COREFL";
    case SchemeId::IEL_INTREFL: return "IEL_INTREFL";
    case SchemeId::EL5_INTREFL: return "EL5_INTREFL";
    case SchemeId::EL5_DIST: return "EL5_DIST";
    case SchemeId::EL5_WEAKCO: return "EL5_WEAKCO";
  }
  return "?";
}

std::optional<SchemeId> schemeFromName(const std::string& name) {
  static const std::vector<SchemeId> all = {
      SchemeId::INT, SchemeId::S1, SchemeId::S2, SchemeId::S3, SchemeId::S4,
      SchemeId::S5, SchemeId::S6, SchemeId::S7, SchemeId::S8, SchemeId::S9,
      SchemeId::S10, SchemeId::S11, SchemeId::S12, SchemeId::S13,
      SchemeId::S14, SchemeId::S15, SchemeId::TND, SchemeId::IEL_DIST,
      SchemeId::IEL_COREFL, SchemeId::IEL_INTREFL, SchemeId::EL5_INTREFL,
      SchemeId::EL5_DIST, SchemeId::EL5_WEAKCO};
  for (SchemeId s : all)
    if (schemeName(s) == name) return s;
  return std::nullopt;
}

bool intuitionisticallyAcceptable(SchemeId s) { return s != SchemeId::TND; }

const std::vector<SchemeId>& axiomSchemes(Logic logic) {
  static const std::vector<SchemeId> iel = {
      SchemeId::INT, SchemeId::IEL_DIST, SchemeId::IEL_COREFL,
      SchemeId::IEL_INTREFL};
  static const std::vector<SchemeId> l5 = {
      SchemeId::INT, SchemeId::S1, SchemeId::S2, SchemeId::S3, SchemeId::S4,
      SchemeId::S5, SchemeId::TND};
  static const std::vector<SchemeId> el5 = {
      SchemeId::INT, SchemeId::S1, SchemeId::S2, SchemeId::S3, SchemeId::S4,
      SchemeId::S5, SchemeId::EL5_INTREFL, SchemeId::EL5_DIST,
      SchemeId::EL5_WEAKCO, SchemeId::TND};
  static const std::vector<SchemeId> l5acm = {
      SchemeId::INT, SchemeId::S1, SchemeId::S2, SchemeId::S3, SchemeId::S4,
      SchemeId::S5, SchemeId::S6, SchemeId::S7, SchemeId::S8, SchemeId::S9,
      SchemeId::S11, SchemeId::S12, SchemeId::S13, SchemeId::S14,
      SchemeId::TND};
  static const std::vector<SchemeId> l5ac = {
      SchemeId::INT, SchemeId::S1, SchemeId::S2, SchemeId::S3, SchemeId::S4,
      SchemeId::S5, SchemeId::S6, SchemeId::S7, SchemeId::S8, SchemeId::S9,
      SchemeId::S10, SchemeId::S11, SchemeId::S12, SchemeId::S13,
      SchemeId::S14, SchemeId::S15, SchemeId::TND};
  switch (logic) {
    case Logic::IEL: return iel;
    case Logic::L5: return l5;
    case Logic::EL5: return el5;
    case Logic::L5ACminus: return l5acm;
    case Logic::L5AC: return l5ac;
  }
  return l5;  // unreachable
}

bool schemeInLogic(const LogicId& logic, SchemeId s) {
  const auto& set = axiomSchemes(logic.logic);
  return std::find(set.begin(), set.end(), s) != set.end();
}

namespace {

// inLanguage enforces the FmE/Fm split and agent bounds; the L5 and EL5
// fragments additionally exclude Know / Common nodes.
bool operatorsAllowed(const Formula& f, const LogicId& logic) {
  switch (f.kind()) {
    case Kind::Var:
    case Kind::Bottom:
      return true;
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      return operatorsAllowed(f.left(), logic) &&
             operatorsAllowed(f.right(), logic);
    case Kind::Box:
      return operatorsAllowed(f.left(), logic);
    case Kind::Know:
      return logic.hasKnow() && operatorsAllowed(f.left(), logic);
    case Kind::Common:
      return logic.hasCommon() && operatorsAllowed(f.left(), logic);
  }
  return false;
}

}  // namespace

bool formulaInLogic(const Formula& f, const LogicId& logic) {
  if (!inLanguage(f, logic.language(), logic.agents)) return false;
  return operatorsAllowed(f, logic);
}

// ---------------------------------------------------------------------------
// Scheme matching

namespace {

bool isNegOf(const Formula& f, Formula* body) {
  if (f.kind() == Kind::Imp && f.right().kind() == Kind::Bottom) {
    *body = f.left();
    return true;
  }
  return false;
}

bool splitImp(const Formula& f, Formula* l, Formula* r) {
  if (f.kind() != Kind::Imp) return false;
  *l = f.left();
  *r = f.right();
  return true;
}

}  // namespace

bool matchScheme(const LogicId& logic, SchemeId scheme, const Formula& f) {
  if (!schemeInLogic(logic, scheme))
    throw SchemeNotInLogic("scheme " + schemeName(scheme) +
                           " is not an axiom of " + logic.name());
  if (!formulaInLogic(f, logic)) return false;

  Formula l, r, x, y, a, b;
  switch (scheme) {
    case SchemeId::INT:
      return isIntInstance(f);

    case SchemeId::TND:  // g | ~g
      return f.kind() == Kind::Or && isNegOf(f.right(), &x) &&
             x == f.left();

    case SchemeId::S1:  // box(a|b) -> box a | box b
      if (!splitImp(f, &l, &r)) return false;
      if (l.kind() != Kind::Box || l.left().kind() != Kind::Or) return false;
      if (r.kind() != Kind::Or || r.left().kind() != Kind::Box ||
          r.right().kind() != Kind::Box)
        return false;
      return l.left().left() == r.left().left() &&
             l.left().right() == r.right().left();

    case SchemeId::S2:  // box a -> a
      return splitImp(f, &l, &r) && l.kind() == Kind::Box && l.left() == r;

    case SchemeId::S3:  // box(a->b) -> (box a -> box b)
      if (!splitImp(f, &l, &r)) return false;
      if (l.kind() != Kind::Box || l.left().kind() != Kind::Imp) return false;
      if (!splitImp(r, &x, &y)) return false;
      if (x.kind() != Kind::Box || y.kind() != Kind::Box) return false;
      return l.left().left() == x.left() && l.left().right() == y.left();

    case SchemeId::S4:  // box a -> box box a
      if (!splitImp(f, &l, &r)) return false;
      return l.kind() == Kind::Box && r.kind() == Kind::Box &&
             r.left().kind() == Kind::Box && r.left().left() == l.left();

    case SchemeId::S5:  // ~box a -> box ~box a
      if (!splitImp(f, &l, &r)) return false;
      if (!isNegOf(l, &x) || x.kind() != Kind::Box) return false;
      if (r.kind() != Kind::Box || !isNegOf(r.left(), &y)) return false;
      return y == x;

    case SchemeId::S6:  // Ki a -> a
      return splitImp(f, &l, &r) && l.kind() == Kind::Know && l.left() == r;

    case SchemeId::S7:  // Ki(a->b) -> (Ki a -> Ki b)
    case SchemeId::IEL_DIST:
    case SchemeId::EL5_DIST: {
      if (!splitImp(f, &l, &r)) return false;
      if (l.kind() != Kind::Know || l.left().kind() != Kind::Imp) return false;
      if (!splitImp(r, &x, &y)) return false;
      if (x.kind() != Kind::Know || y.kind() != Kind::Know) return false;
      AgentId i = l.agent();
      return x.agent() == i && y.agent() == i &&
             l.left().left() == x.left() && l.left().right() == y.left();
    }

    case SchemeId::S8: {  // Ki(a|b) -> Ki a | Ki b
      if (!splitImp(f, &l, &r)) return false;
      if (l.kind() != Kind::Know || l.left().kind() != Kind::Or) return false;
      if (r.kind() != Kind::Or || r.left().kind() != Kind::Know ||
          r.right().kind() != Kind::Know)
        return false;
      AgentId i = l.agent();
      return r.left().agent() == i && r.right().agent() == i &&
             l.left().left() == r.left().left() &&
             l.left().right() == r.right().left();
    }

    case SchemeId::S9: {  // CG(a->b) -> (CG a -> CG b)
      if (!splitImp(f, &l, &r)) return false;
      if (l.kind() != Kind::Common || l.left().kind() != Kind::Imp)
        return false;
      if (!splitImp(r, &x, &y)) return false;
      if (x.kind() != Kind::Common || y.kind() != Kind::Common) return false;
      Group g = l.group();
      return x.group() == g && y.group() == g &&
             l.left().left() == x.left() && l.left().right() == y.left();
    }

    case SchemeId::S10: {  // CG(a|b) -> CG a | CG b
      if (!splitImp(f, &l, &r)) return false;
      if (l.kind() != Kind::Common || l.left().kind() != Kind::Or)
        return false;
      if (r.kind() != Kind::Or || r.left().kind() != Kind::Common ||
          r.right().kind() != Kind::Common)
        return false;
      Group g = l.group();
      return r.left().group() == g && r.right().group() == g &&
             l.left().left() == r.left().left() &&
             l.left().right() == r.right().left();
    }

    case SchemeId::S11:  // box a -> box CG a
      if (!splitImp(f, &l, &r)) return false;
      return l.kind() == Kind::Box && r.kind() == Kind::Box &&
             r.left().kind() == Kind::Common && r.left().left() == l.left();

    case SchemeId::S12: {  // CG a -> Ki a, i in G
      if (!splitImp(f, &l, &r)) return false;
      if (l.kind() != Kind::Common || r.kind() != Kind::Know) return false;
      return l.left() == r.left() && l.group().contains(r.agent());
    }

    case SchemeId::S13: {  // CG a -> CG Ki a, i in G
      if (!splitImp(f, &l, &r)) return false;
      if (l.kind() != Kind::Common || r.kind() != Kind::Common) return false;
      if (r.group() != l.group()) return false;
      if (r.left().kind() != Kind::Know) return false;
      return r.left().left() == l.left() &&
             l.group().contains(r.left().agent());
    }

    case SchemeId::S14: {  // CG a -> CG' a, non-empty G' subset of G
      if (!splitImp(f, &l, &r)) return false;
      if (l.kind() != Kind::Common || r.kind() != Kind::Common) return false;
      return l.left() == r.left() && r.group().subsetOf(l.group());
    }

    case SchemeId::S15: {  // CG a -> CG CG a
      if (!splitImp(f, &l, &r)) return false;
      if (l.kind() != Kind::Common || r.kind() != Kind::Common) return false;
      if (r.group() != l.group()) return false;
      return r.left().kind() == Kind::Common &&
             r.left().group() == l.group() && r.left().left() == l.left();
    }

    case SchemeId::IEL_COREFL:  // a -> K a
      return splitImp(f, &l, &r) && r.kind() == Kind::Know && r.left() == l;

    case SchemeId::IEL_INTREFL:
    case SchemeId::EL5_INTREFL: {  // K a -> ~~a
      if (!splitImp(f, &l, &r)) return false;
      if (l.kind() != Kind::Know) return false;
      Formula inner;
      if (!isNegOf(r, &x) || !isNegOf(x, &inner)) return false;
      return inner == l.left();
    }

    case SchemeId::EL5_WEAKCO:  // box a -> box K a
      if (!splitImp(f, &l, &r)) return false;
      return l.kind() == Kind::Box && r.kind() == Kind::Box &&
             r.left().kind() == Kind::Know && r.left().left() == l.left();
  }
  return false;  // unreachable
}

// ---------------------------------------------------------------------------
// Derivation checking

Justification Justification::axiom(SchemeId s) {
  return {Rule::Axiom, s, 0, 0};
}
Justification Justification::hyp(std::size_t k) {
  return {Rule::Hyp, SchemeId::INT, k, 0};
}
Justification Justification::mp(std::size_t ant, std::size_t imp) {
  return {Rule::Mp, SchemeId::INT, ant, imp};
}
Justification Justification::an(std::size_t premise) {
  return {Rule::An, SchemeId::INT, premise, 0};
}

std::string Justification::str() const {
  switch (rule) {
    case Rule::Axiom: return "AXIOM " + schemeName(scheme);
    case Rule::Hyp: return "HYP " + std::to_string(i);
    case Rule::Mp: return "MP " + std::to_string(i) + " " + std::to_string(j);
    case Rule::An: return "AN " + std::to_string(i);
  }
  return "?";
}

Formula Derivation::conclusion() const {
  if (steps.empty()) throw std::logic_error("empty derivation");
  return steps.back().formula;
}

std::string CheckResult::summary() const {
  if (ok) return "valid; theorem: " + printFormula(*theorem);
  std::ostringstream out;
  out << "invalid:";
  for (const auto& d : diagnostics)
    out << "\n  step " << d.step << ": " << d.reason;
  return out.str();
}

CheckResult checkDerivation(const LogicId& logic, const Derivation& d) {
  CheckResult result;
  if (d.steps.empty()) {
    result.diagnostics.push_back({0, "empty derivation"});
    return result;
  }
  for (const Formula& h : d.hypotheses) {
    if (!formulaInLogic(h, logic)) {
      result.diagnostics.push_back({0, "hypothesis outside the language of " +
                                           logic.name()});
      return result;
    }
  }
  for (std::size_t k = 0; k < d.steps.size(); ++k) {
    const Step& step = d.steps[k];
    auto bad = [&](const std::string& reason) {
      result.diagnostics.push_back({k, reason});
    };
    if (!formulaInLogic(step.formula, logic)) {
      bad("formula outside the language of " + logic.name());
      continue;
    }
    switch (step.just.rule) {
      case Justification::Rule::Axiom: {
        SchemeId s = step.just.scheme;
        if (!schemeInLogic(logic, s)) {
          bad("scheme " + schemeName(s) + " is not an axiom of " +
              logic.name());
          break;
        }
        if (!matchScheme(logic, s, step.formula))
          bad("formula is not an instance of scheme " + schemeName(s));
        break;
      }
      case Justification::Rule::Hyp: {
        if (step.just.i >= d.hypotheses.size()) {
          bad("hypothesis index out of range");
          break;
        }
        if (!(d.hypotheses[step.just.i] == step.formula))
          bad("formula differs from hypothesis " +
              std::to_string(step.just.i));
        break;
      }
      case Justification::Rule::Mp: {
        std::size_t i = step.just.i, j = step.just.j;
        if (i >= k || j >= k) {
          bad("modus ponens references a step that is not earlier");
          break;
        }
        Formula expected = Formula::imp(d.steps[i].formula, step.formula);
        if (!(d.steps[j].formula == expected))
          bad("modus ponens shape mismatch: step " + std::to_string(j) +
              " is not (step " + std::to_string(i) + " -> this step)");
        break;
      }
      case Justification::Rule::An: {
        if (!logic.hasBox()) {
          bad("box introduction is not available in " + logic.name());
          break;
        }
        std::size_t i = step.just.i;
        if (i >= k) {
          bad("box introduction references a step that is not earlier");
          break;
        }
        const Step& premise = d.steps[i];
        if (premise.just.rule != Justification::Rule::Axiom) {
          bad("box introduction applied to a non-axiom step");
          break;
        }
        if (premise.just.scheme == SchemeId::TND) {
          bad("box introduction applied to TND");
          break;
        }
        if (!(step.formula == Formula::box(premise.formula)))
          bad("box introduction shape mismatch");
        break;
      }
    }
  }
  if (result.diagnostics.empty()) {
    result.ok = true;
    result.theorem = d.steps.back().formula;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Transformers

namespace {

void requireValid(const LogicId& logic, const Derivation& d,
                  const char* what) {
  CheckResult r = checkDerivation(logic, d);
  if (!r.ok)
    throw std::invalid_argument(std::string(what) +
                                " requires a valid derivation; " +
                                r.summary());
}

std::size_t push(Derivation& d, Formula f, Justification j) {
  d.steps.push_back({std::move(f), j});
  return d.steps.size() - 1;
}

}  // namespace

Derivation applyDeductionTheorem(const LogicId& logic, const Derivation& d) {
  requireValid(logic, d, "hypothesis discharge");
  if (d.hypotheses.empty())
    throw std::invalid_argument(
        "hypothesis discharge needs at least one hypothesis");
  const std::size_t hIndex = d.hypotheses.size() - 1;
  const Formula h = d.hypotheses.back();

  Derivation out;
  out.hypotheses.assign(d.hypotheses.begin(), d.hypotheses.end() - 1);
  // newIndex[k] proves h -> (formula of old step k)
  std::vector<std::size_t> newIndex(d.steps.size());

  auto weaken = [&](std::size_t provedAt, const Formula& f) {
    // from f, conclude h -> f via the INT instance f -> (h -> f)
    std::size_t w =
        push(out, Formula::imp(f, Formula::imp(h, f)),
             Justification::axiom(SchemeId::INT));
    return push(out, Formula::imp(h, f), Justification::mp(provedAt, w));
  };

  for (std::size_t k = 0; k < d.steps.size(); ++k) {
    const Step& step = d.steps[k];
    const Formula& f = step.formula;
    switch (step.just.rule) {
      case Justification::Rule::Hyp: {
        if (step.just.i == hIndex) {
          newIndex[k] = push(out, Formula::imp(h, h),
                             Justification::axiom(SchemeId::INT));
        } else {
          std::size_t base =
              push(out, f, Justification::hyp(step.just.i));
          newIndex[k] = weaken(base, f);
        }
        break;
      }
      case Justification::Rule::Axiom: {
        std::size_t base = push(out, f, step.just);
        newIndex[k] = weaken(base, f);
        break;
      }
      case Justification::Rule::An: {
        const Step& premise = d.steps[step.just.i];
        std::size_t ax = push(out, premise.formula, premise.just);
        std::size_t boxed = push(out, f, Justification::an(ax));
        newIndex[k] = weaken(boxed, f);
        break;
      }
      case Justification::Rule::Mp: {
        const Formula& fi = d.steps[step.just.i].formula;
        // (h -> (fi -> f)) -> ((h -> fi) -> (h -> f))
        Formula s = Formula::imp(
            Formula::imp(h, Formula::imp(fi, f)),
            Formula::imp(Formula::imp(h, fi), Formula::imp(h, f)));
        std::size_t sAx = push(out, s, Justification::axiom(SchemeId::INT));
        std::size_t first =
            push(out, Formula::imp(Formula::imp(h, fi), Formula::imp(h, f)),
                 Justification::mp(newIndex[step.just.j], sAx));
        newIndex[k] = push(out, Formula::imp(h, f),
                           Justification::mp(newIndex[step.just.i], first));
        break;
      }
    }
  }
  return out;
}

Derivation necessitate(const LogicId& logic, const Derivation& d) {
  requireValid(logic, d, "box introduction");
  if (!logic.hasBox())
    throw std::invalid_argument("box introduction is not available in " +
                                logic.name());
  if (!d.hypotheses.empty())
    throw std::invalid_argument(
        "box introduction requires a hypothesis-free derivation");
  for (const Step& s : d.steps)
    if (s.just.rule == Justification::Rule::Axiom &&
        s.just.scheme == SchemeId::TND)
      throw std::invalid_argument("box introduction cannot cross a TND step");

  Derivation out;
  std::vector<std::size_t> newIndex(d.steps.size());
  for (std::size_t k = 0; k < d.steps.size(); ++k) {
    const Step& step = d.steps[k];
    const Formula& f = step.formula;
    switch (step.just.rule) {
      case Justification::Rule::Axiom: {
        std::size_t ax = push(out, f, step.just);
        newIndex[k] = push(out, Formula::box(f), Justification::an(ax));
        break;
      }
      case Justification::Rule::Mp: {
        const Formula& fi = d.steps[step.just.i].formula;
        // box(fi -> f) -> (box fi -> box f)
        Formula dist = Formula::imp(
            Formula::box(Formula::imp(fi, f)),
            Formula::imp(Formula::box(fi), Formula::box(f)));
        std::size_t distAx =
            push(out, dist, Justification::axiom(SchemeId::S3));
        std::size_t mid =
            push(out, Formula::imp(Formula::box(fi), Formula::box(f)),
                 Justification::mp(newIndex[step.just.j], distAx));
        newIndex[k] = push(out, Formula::box(f),
                           Justification::mp(newIndex[step.just.i], mid));
        break;
      }
      case Justification::Rule::An: {
        const Formula& fi = d.steps[step.just.i].formula;
        // box fi -> box box fi
        Formula idem = Formula::imp(Formula::box(fi),
                                    Formula::box(Formula::box(fi)));
        std::size_t idemAx =
            push(out, idem, Justification::axiom(SchemeId::S4));
        newIndex[k] = push(out, Formula::box(f),
                           Justification::mp(newIndex[step.just.i], idemAx));
        break;
      }
      case Justification::Rule::Hyp:
        // unreachable: hypotheses were rejected above
        throw std::logic_error("hypothesis step in hypothesis-free derivation");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Proof files

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

}  // namespace

ProofFile parseProofFile(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineNo = 0;
  std::optional<LogicId> logic;
  Derivation derivation;
  std::size_t nextStep = 0;

  while (std::getline(in, line)) {
    ++lineNo;
    std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;

    if (!logic) {
      std::istringstream ls(body);
      std::string kw, name;
      ls >> kw >> name;
      if (kw != "logic")
        throw ParseError("expected 'logic <id> [agents <n>]' header", lineNo, 1);
      auto l = logicFromName(name);
      if (!l) throw ParseError("unknown logic '" + name + "'", lineNo, 1);
      int agents = 1;
      std::string agentsKw;
      if (ls >> agentsKw) {
        if (agentsKw != "agents" || !(ls >> agents))
          throw ParseError("expected 'agents <n>'", lineNo, 1);
      }
      logic = LogicId(*l, agents);
      continue;
    }

    if (body.rfind("hyp ", 0) == 0) {
      if (!derivation.steps.empty())
        throw ParseError("hypotheses must precede steps", lineNo, 1);
      derivation.hypotheses.push_back(
          parseFormula(body.substr(4), logic->agents, lineNo));
      continue;
    }

    std::size_t colon = body.find(':');
    std::size_t semi = body.rfind(';');
    if (colon == std::string::npos || semi == std::string::npos ||
        semi < colon)
      throw ParseError("expected '<n>: <formula> ; <justification>'", lineNo,
                       1);
    std::string numText = trim(body.substr(0, colon));
    std::size_t declared = 0;
    try {
      declared = std::stoul(numText);
    } catch (...) {
      throw ParseError("bad step number '" + numText + "'", lineNo, 1);
    }
    if (declared != nextStep)
      throw ParseError("step numbered " + numText + ", expected " +
                           std::to_string(nextStep),
                       lineNo, 1);
    ++nextStep;

    Formula f = parseFormula(body.substr(colon + 1, semi - colon - 1),
                             logic->agents, lineNo);
    std::istringstream js(body.substr(semi + 1));
    std::string rule;
    js >> rule;
    if (rule == "AXIOM") {
      std::string sname;
      js >> sname;
      auto s = schemeFromName(sname);
      if (!s) throw ParseError("unknown scheme '" + sname + "'", lineNo, 1);
      derivation.steps.push_back({f, Justification::axiom(*s)});
    } else if (rule == "HYP") {
      std::size_t k;
      if (!(js >> k)) throw ParseError("HYP needs an index", lineNo, 1);
      derivation.steps.push_back({f, Justification::hyp(k)});
    } else if (rule == "MP") {
      std::size_t i, j;
      if (!(js >> i >> j)) throw ParseError("MP needs two indices", lineNo, 1);
      derivation.steps.push_back({f, Justification::mp(i, j)});
    } else if (rule == "AN") {
      std::size_t i;
      if (!(js >> i)) throw ParseError("AN needs an index", lineNo, 1);
      derivation.steps.push_back({f, Justification::an(i)});
    } else {
      throw ParseError("unknown justification '" + rule + "'", lineNo, 1);
    }
  }
  if (!logic) throw ParseError("missing 'logic' header", lineNo + 1, 1);
  return {*logic, derivation};
}

std::string proofToText(const LogicId& logic, const Derivation& d) {
  std::ostringstream out;
  out << "logic " << logic.name() << " agents " << logic.agents << "\n";
  for (const Formula& h : d.hypotheses)
    out << "hyp " << printFormula(h) << "\n";
  for (std::size_t k = 0; k < d.steps.size(); ++k)
    out << k << ": " << printFormula(d.steps[k].formula) << " ; "
        << d.steps[k].just.str() << "\n";
  return out.str();
}

}  // namespace epik
