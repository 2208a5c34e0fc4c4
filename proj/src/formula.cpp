#include "epik/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace epik {

// ---------------------------------------------------------------------------
// Group

Group::Group(std::uint32_t mask) : mask_(mask) {
  if (mask_ == 0) throw std::invalid_argument("group must be non-empty");
}

Group::Group(std::initializer_list<AgentId> agents)
    : Group(std::vector<AgentId>(agents)) {}

Group::Group(const std::vector<AgentId>& agents) : mask_(0) {
  for (AgentId i : agents) {
    if (i < 1 || i > 32) throw std::invalid_argument("agent index out of range");
    mask_ |= 1u << (i - 1);
  }
  if (mask_ == 0) throw std::invalid_argument("group must be non-empty");
}

Group Group::fromMask(std::uint32_t mask) { return Group(mask); }

AgentId Group::maxAgent() const {
  for (int i = 32; i >= 1; --i)
    if ((mask_ >> (i - 1)) & 1u) return i;
  return 0;  // unreachable: mask_ != 0
}

std::vector<AgentId> Group::members() const {
  std::vector<AgentId> out;
  for (int i = 1; i <= 32; ++i)
    if ((mask_ >> (i - 1)) & 1u) out.push_back(i);
  return out;
}

std::size_t Group::size() const { return members().size(); }

std::string Group::str() const {
  std::string s = "{";
  bool first = true;
  for (AgentId i : members()) {
    if (!first) s += ",";
    s += std::to_string(i);
    first = false;
  }
  return s + "}";
}

// ---------------------------------------------------------------------------
// Formula nodes

struct Formula::Node {
  Kind kind;
  std::string var;                    // Var
  AgentId agent = 0;                  // Know
  std::uint32_t groupMask = 0;        // Common
  std::shared_ptr<const Node> left;   // unary child / left child
  std::shared_ptr<const Node> right;  // right child
};

Formula Formula::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->var = std::move(name);
  return Formula(n);
}

Formula Formula::bottom() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Bottom;
  return Formula(n);
}

Formula Formula::conj(Formula l, Formula r) {
  if (!l.node_ || !r.node_) throw std::invalid_argument("empty formula");
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->left = l.node_;
  n->right = r.node_;
  return Formula(n);
}

Formula Formula::disj(Formula l, Formula r) {
  if (!l.node_ || !r.node_) throw std::invalid_argument("empty formula");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->left = l.node_;
  n->right = r.node_;
  return Formula(n);
}

Formula Formula::imp(Formula l, Formula r) {
  if (!l.node_ || !r.node_) throw std::invalid_argument("empty formula");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Imp;
  n->left = l.node_;
  n->right = r.node_;
  return Formula(n);
}

Formula Formula::box(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Box;
  n->left = f.node_;
  if (!n->left) throw std::invalid_argument("empty formula");
  return Formula(n);
}

Formula Formula::know(AgentId agent, Formula f) {
  if (agent < 1 || agent > 32)
    throw std::invalid_argument("agent index out of range");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Know;
  n->agent = agent;
  n->left = f.node_;
  if (!n->left) throw std::invalid_argument("empty formula");
  return Formula(n);
}

Formula Formula::common(Group group, Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Common;
  n->groupMask = group.mask();
  n->left = f.node_;
  if (!n->left) throw std::invalid_argument("empty formula");
  return Formula(n);
}

Formula Formula::top() { return imp(bottom(), bottom()); }
Formula Formula::neg(Formula f) { return imp(std::move(f), bottom()); }
Formula Formula::iff(Formula l, Formula r) {
  return conj(imp(l, r), imp(r, l));
}
Formula Formula::ident(Formula l, Formula r) {
  return box(iff(std::move(l), std::move(r)));
}
Formula Formula::dia(Formula f) { return neg(box(neg(std::move(f)))); }

Kind Formula::kind() const { return node_->kind; }

const std::string& Formula::varName() const {
  if (node_->kind != Kind::Var) throw std::logic_error("not a variable");
  return node_->var;
}

AgentId Formula::agent() const {
  if (node_->kind != Kind::Know) throw std::logic_error("not a K node");
  return node_->agent;
}

Group Formula::group() const {
  if (node_->kind != Kind::Common) throw std::logic_error("not a C node");
  return Group::fromMask(node_->groupMask);
}

Formula Formula::left() const { return Formula(node_->left); }
Formula Formula::right() const { return Formula(node_->right); }

int Formula::compare(const Formula& a, const Formula& b) {
  const Node* x = a.node_.get();
  const Node* y = b.node_.get();
  if (x == y) return 0;
  if (!x) return -1;
  if (!y) return 1;
  if (x->kind != y->kind) return x->kind < y->kind ? -1 : 1;
  switch (x->kind) {
    case Kind::Var:
      return x->var.compare(y->var) < 0 ? -1 : (x->var == y->var ? 0 : 1);
    case Kind::Bottom:
      return 0;
    case Kind::Know:
      if (x->agent != y->agent) return x->agent < y->agent ? -1 : 1;
      break;
    case Kind::Common:
      if (x->groupMask != y->groupMask)
        return x->groupMask < y->groupMask ? -1 : 1;
      break;
    default:
      break;
  }
  int c = compare(Formula(x->left), Formula(y->left));
  if (c != 0) return c;
  if (x->right || y->right) return compare(Formula(x->right), Formula(y->right));
  return 0;
}

bool Formula::isPropositional() const {
  switch (kind()) {
    case Kind::Var:
    case Kind::Bottom:
      return true;
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      return left().isPropositional() && right().isPropositional();
    default:
      return false;
  }
}

int Formula::nodeCount() const {
  switch (kind()) {
    case Kind::Var:
    case Kind::Bottom:
      return 1;
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      return 1 + left().nodeCount() + right().nodeCount();
    default:
      return 1 + left().nodeCount();
  }
}

AgentId Formula::maxAgent() const {
  switch (kind()) {
    case Kind::Var:
    case Kind::Bottom:
      return 0;
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      return std::max(left().maxAgent(), right().maxAgent());
    case Kind::Box:
      return left().maxAgent();
    case Kind::Know:
      return std::max(agent(), left().maxAgent());
    case Kind::Common:
      return std::max(group().maxAgent(), left().maxAgent());
  }
  return 0;
}

void Formula::collectVars(std::set<std::string>& out) const {
  switch (kind()) {
    case Kind::Var:
      out.insert(varName());
      return;
    case Kind::Bottom:
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      left().collectVars(out);
      right().collectVars(out);
      return;
    default:
      left().collectVars(out);
      return;
  }
}

std::vector<std::string> Formula::vars() const {
  std::set<std::string> s;
  collectVars(s);
  return std::vector<std::string>(s.begin(), s.end());
}

// ---------------------------------------------------------------------------
// Parser

ParseError::ParseError(std::string msg, int line, int column)
    : std::runtime_error("syntax error at line " + std::to_string(line) +
                         ", column " + std::to_string(column) + ": " + msg),
      line(line),
      column(column) {}

namespace {

enum class Tok {
  End, Ident, False, True, Not, And, Or, Imp, Iff, Ident2,  // Ident2 is '=='
  BoxKw, DiaKw, Know, Common, LParen, RParen
};

struct Token {
  Tok tok;
  std::string text;   // identifier text
  AgentId agent = 0;  // Know
  std::uint32_t groupMask = 0;  // Common
  int column = 0;
};

class Lexer {
 public:
  Lexer(const std::string& text, int nAgents, int line)
      : text_(text), nAgents_(nAgents), line_(line) {}

  Token next() {
    skipSpace();
    int col = static_cast<int>(pos_) + 1;
    if (pos_ >= text_.size() || text_[pos_] == '#')
      return {Tok::End, "", 0, 0, col};
    char c = text_[pos_];
    if (c == '(') { ++pos_; return {Tok::LParen, "", 0, 0, col}; }
    if (c == ')') { ++pos_; return {Tok::RParen, "", 0, 0, col}; }
    if (c == '~') { ++pos_; return {Tok::Not, "", 0, 0, col}; }
    if (c == '&') { ++pos_; return {Tok::And, "", 0, 0, col}; }
    if (c == '|') { ++pos_; return {Tok::Or, "", 0, 0, col}; }
    if (c == '-') {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
        pos_ += 2;
        return {Tok::Imp, "", 0, 0, col};
      }
      fail("expected '->'", col);
    }
    if (c == '<') {
      if (pos_ + 2 < text_.size() && text_[pos_ + 1] == '-' &&
          text_[pos_ + 2] == '>') {
        pos_ += 3;
        return {Tok::Iff, "", 0, 0, col};
      }
      fail("expected '<->'", col);
    }
    if (c == '=') {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
        pos_ += 2;
        return {Tok::Ident2, "", 0, 0, col};
      }
      fail("expected '=='", col);
    }
    if (c == 'K') {
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected agent index after 'K'", col);
      AgentId agent = readNumber(col);
      checkAgent(agent, col);
      return {Tok::Know, "", agent, 0, col};
    }
    if (c == 'C') {
      ++pos_;
      if (pos_ >= text_.size() || text_[pos_] != '{')
        fail("expected '{' after 'C'", col);
      ++pos_;
      std::uint32_t mask = 0;
      while (true) {
        skipSpace();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
          fail("expected agent index in group", static_cast<int>(pos_) + 1);
        AgentId agent = readNumber(static_cast<int>(pos_) + 1);
        checkAgent(agent, col);
        mask |= 1u << (agent - 1);
        skipSpace();
        if (pos_ < text_.size() && text_[pos_] == ',') { ++pos_; continue; }
        if (pos_ < text_.size() && text_[pos_] == '}') { ++pos_; break; }
        fail("expected ',' or '}' in group", static_cast<int>(pos_) + 1);
      }
      if (mask == 0) fail("empty group", col);
      return {Tok::Common, "", 0, mask, col};
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
        ++pos_;
      std::string word = text_.substr(start, pos_ - start);
      if (word == "false") return {Tok::False, "", 0, 0, col};
      if (word == "true") return {Tok::True, "", 0, 0, col};
      if (word == "box") return {Tok::BoxKw, "", 0, 0, col};
      if (word == "dia") return {Tok::DiaKw, "", 0, 0, col};
      return {Tok::Ident, word, 0, 0, col};
    }
    fail(std::string("unexpected character '") + c + "'", col);
    return {};  // unreachable
  }

  [[noreturn]] void fail(const std::string& msg, int column) const {
    throw ParseError(msg, line_, column);
  }

 private:
  void skipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  AgentId readNumber(int col) {
    long v = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 1000) fail("agent index out of range", col);
      ++pos_;
    }
    return static_cast<AgentId>(v);
  }

  void checkAgent(AgentId agent, int col) const {
    if (agent < 1 || agent > nAgents_)
      fail("agent index " + std::to_string(agent) + " out of range (1.." +
               std::to_string(nAgents_) + ")",
           col);
  }

  const std::string& text_;
  int nAgents_;
  int line_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(const std::string& text, int nAgents, int line)
      : lexer_(text, nAgents, line) {
    advance();
  }

  Formula parseAll() {
    Formula f = parseEquiv();
    if (cur_.tok != Tok::End)
      lexer_.fail("unexpected trailing input", cur_.column);
    return f;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  // level 0: ==, non-associative
  Formula parseEquiv() {
    Formula l = parseIff();
    if (cur_.tok == Tok::Ident2) {
      advance();
      Formula r = parseIff();
      if (cur_.tok == Tok::Ident2)
        lexer_.fail("'==' is non-associative", cur_.column);
      return Formula::ident(l, r);
    }
    return l;
  }

  // level 1: <->, left-associative
  Formula parseIff() {
    Formula l = parseImp();
    while (cur_.tok == Tok::Iff) {
      advance();
      Formula r = parseImp();
      l = Formula::iff(l, r);
    }
    return l;
  }

  // level 2: ->, right-associative
  Formula parseImp() {
    Formula l = parseOr();
    if (cur_.tok == Tok::Imp) {
      advance();
      Formula r = parseImp();
      return Formula::imp(l, r);
    }
    return l;
  }

  Formula parseOr() {
    Formula l = parseAnd();
    while (cur_.tok == Tok::Or) {
      advance();
      l = Formula::disj(l, parseAnd());
    }
    return l;
  }

  Formula parseAnd() {
    Formula l = parseUnary();
    while (cur_.tok == Tok::And) {
      advance();
      l = Formula::conj(l, parseUnary());
    }
    return l;
  }

  Formula parseUnary() {
    switch (cur_.tok) {
      case Tok::Not: advance(); return Formula::neg(parseUnary());
      case Tok::BoxKw: advance(); return Formula::box(parseUnary());
      case Tok::DiaKw: advance(); return Formula::dia(parseUnary());
      case Tok::Know: {
        AgentId agent = cur_.agent;
        advance();
        return Formula::know(agent, parseUnary());
      }
      case Tok::Common: {
        Group g = Group::fromMask(cur_.groupMask);
        advance();
        return Formula::common(g, parseUnary());
      }
      default:
        return parseAtom();
    }
  }

  Formula parseAtom() {
    switch (cur_.tok) {
      case Tok::False: advance(); return Formula::bottom();
      case Tok::True: advance(); return Formula::top();
      case Tok::Ident: {
        std::string name = cur_.text;
        advance();
        return Formula::var(name);
      }
      case Tok::LParen: {
        advance();
        Formula f = parseEquiv();
        if (cur_.tok != Tok::RParen) lexer_.fail("expected ')'", cur_.column);
        advance();
        return f;
      }
      case Tok::End:
        lexer_.fail("expected formula, found end of input", cur_.column);
      default:
        lexer_.fail("expected formula", cur_.column);
    }
    return {};  // unreachable
  }

  Lexer lexer_;
  Token cur_;
};

}  // namespace

Formula parseFormula(const std::string& text, int nAgents, int line) {
  if (nAgents < 1) throw std::invalid_argument("agent count must be >= 1");
  return Parser(text, nAgents, line).parseAll();
}

std::vector<std::pair<int, Formula>> parseFormulaLines(const std::string& text,
                                                       int nAgents) {
  std::vector<std::pair<int, Formula>> out;
  std::istringstream in(text);
  std::string lineText;
  int lineNo = 0;
  while (std::getline(in, lineText)) {
    ++lineNo;
    std::string stripped = lineText.substr(0, lineText.find('#'));
    if (stripped.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.emplace_back(lineNo, parseFormula(stripped, nAgents, lineNo));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Printer

namespace {

bool isTop(const Formula& f) {
  return f.kind() == Kind::Imp && f.left().kind() == Kind::Bottom &&
         f.right().kind() == Kind::Bottom;
}

bool isNeg(const Formula& f, Formula* body) {
  if (f.kind() == Kind::Imp && f.right().kind() == Kind::Bottom) {
    *body = f.left();
    return true;
  }
  return false;
}

bool isDia(const Formula& f, Formula* body) {
  Formula inner;
  if (!isNeg(f, &inner) || inner.kind() != Kind::Box) return false;
  Formula core;
  if (!isNeg(inner.left(), &core)) return false;
  *body = core;
  return true;
}

bool isIff(const Formula& f, Formula* l, Formula* r) {
  if (f.kind() != Kind::And) return false;
  Formula a = f.left(), b = f.right();
  if (a.kind() != Kind::Imp || b.kind() != Kind::Imp) return false;
  if (a.left() != b.right() || a.right() != b.left()) return false;
  *l = a.left();
  *r = a.right();
  return true;
}

bool isIdent(const Formula& f, Formula* l, Formula* r) {
  return f.kind() == Kind::Box && isIff(f.left(), l, r);
}

// Precedence levels: == 0, <-> 1, -> 2, | 3, & 4, unary 5, atom 6.
void print(const Formula& f, int minLevel, std::string& out) {
  auto wrap = [&](int level, auto&& body) {
    bool parens = level < minLevel;
    if (parens) out += "(";
    body();
    if (parens) out += ")";
  };

  if (isTop(f)) { out += "true"; return; }
  Formula a, b;
  if (isIdent(f, &a, &b)) {
    wrap(0, [&] { print(a, 1, out); out += " == "; print(b, 1, out); });
    return;
  }
  if (isDia(f, &a)) {
    wrap(5, [&] { out += "dia "; print(a, 5, out); });
    return;
  }
  if (isNeg(f, &a)) {
    wrap(5, [&] { out += "~"; print(a, 5, out); });
    return;
  }
  if (isIff(f, &a, &b)) {
    wrap(1, [&] { print(a, 1, out); out += " <-> "; print(b, 2, out); });
    return;
  }
  switch (f.kind()) {
    case Kind::Var: out += f.varName(); return;
    case Kind::Bottom: out += "false"; return;
    case Kind::Imp:
      wrap(2, [&] { print(f.left(), 3, out); out += " -> "; print(f.right(), 2, out); });
      return;
    case Kind::Or:
      wrap(3, [&] { print(f.left(), 3, out); out += " | "; print(f.right(), 4, out); });
      return;
    case Kind::And:
      wrap(4, [&] { print(f.left(), 4, out); out += " & "; print(f.right(), 5, out); });
      return;
    case Kind::Box:
      wrap(5, [&] { out += "box "; print(f.left(), 5, out); });
      return;
    case Kind::Know:
      wrap(5, [&] {
        out += "K" + std::to_string(f.agent()) + " ";
        print(f.left(), 5, out);
      });
      return;
    case Kind::Common:
      wrap(5, [&] {
        out += "C" + f.group().str() + " ";
        print(f.left(), 5, out);
      });
      return;
  }
}

}  // namespace

std::string printFormula(const Formula& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Substitution / abstraction / expansion

Formula substitute(const Formula& chi, const std::string& var,
                   const Formula& phi) {
  switch (chi.kind()) {
    case Kind::Var:
      return chi.varName() == var ? phi : chi;
    case Kind::Bottom:
      return chi;
    case Kind::And:
      return Formula::conj(substitute(chi.left(), var, phi),
                           substitute(chi.right(), var, phi));
    case Kind::Or:
      return Formula::disj(substitute(chi.left(), var, phi),
                           substitute(chi.right(), var, phi));
    case Kind::Imp:
      return Formula::imp(substitute(chi.left(), var, phi),
                          substitute(chi.right(), var, phi));
    case Kind::Box:
      return Formula::box(substitute(chi.left(), var, phi));
    case Kind::Know:
      return Formula::know(chi.agent(), substitute(chi.left(), var, phi));
    case Kind::Common:
      return Formula::common(chi.group(), substitute(chi.left(), var, phi));
  }
  return chi;  // unreachable
}

namespace {

Formula abstractRec(const Formula& f, std::map<Formula, std::string>& seen,
                    Abstraction& result) {
  // left child first, so atom numbering follows reading order
  switch (f.kind()) {
    case Kind::Bottom:
      return f;
    case Kind::And: {
      Formula l = abstractRec(f.left(), seen, result);
      Formula r = abstractRec(f.right(), seen, result);
      return Formula::conj(l, r);
    }
    case Kind::Or: {
      Formula l = abstractRec(f.left(), seen, result);
      Formula r = abstractRec(f.right(), seen, result);
      return Formula::disj(l, r);
    }
    case Kind::Imp: {
      Formula l = abstractRec(f.left(), seen, result);
      Formula r = abstractRec(f.right(), seen, result);
      return Formula::imp(l, r);
    }
    default: {  // Var, Box, Know, Common: opaque atom
      auto it = seen.find(f);
      if (it == seen.end()) {
        std::string atom = "p" + std::to_string(seen.size());
        it = seen.emplace(f, atom).first;
        result.atomMeaning.emplace(atom, f);
      }
      return Formula::var(it->second);
    }
  }
}

}  // namespace

Abstraction abstractPropositional(const Formula& f) {
  Abstraction result;
  std::map<Formula, std::string> seen;
  result.propositional = abstractRec(f, seen, result);
  return result;
}

Formula expandEveryone(const Group& group, int n, const Formula& f,
                       int nodeBudget) {
  if (n < 0) throw std::invalid_argument("expansion depth must be >= 0");
  Formula cur = f;
  long long size = f.nodeCount();
  for (int step = 0; step < n; ++step) {
    std::vector<AgentId> members = group.members();
    size = size * static_cast<long long>(members.size()) +
           static_cast<long long>(members.size()) * 2;
    if (size > nodeBudget)
      throw BudgetExceeded("expansion of depth " + std::to_string(n) +
                           " exceeds the node budget");
    Formula acc;
    for (AgentId i : members) {
      Formula ki = Formula::know(i, cur);
      acc = acc.empty() ? ki : Formula::conj(acc, ki);
    }
    cur = acc;
  }
  return cur;
}

bool inLanguage(const Formula& f, LanguageId lang, int nAgents) {
  switch (f.kind()) {
    case Kind::Var:
    case Kind::Bottom:
      return true;
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      return inLanguage(f.left(), lang, nAgents) &&
             inLanguage(f.right(), lang, nAgents);
    case Kind::Box:
      return lang == LanguageId::Fm && inLanguage(f.left(), lang, nAgents);
    case Kind::Know:
      return f.agent() >= 1 && f.agent() <= nAgents &&
             inLanguage(f.left(), lang, nAgents);
    case Kind::Common:
      return lang == LanguageId::Fm && f.group().maxAgent() <= nAgents &&
             inLanguage(f.left(), lang, nAgents);
  }
  return false;  // unreachable
}

}  // namespace epik
