#include "epik/lemma_scripts.hpp"

#include <algorithm>
#include <sstream>

namespace epik {

// ---------------------------------------------------------------------------
// DerivationBuilder

DerivationBuilder::DerivationBuilder(LogicId logic, std::vector<Formula> hyps)
    : logic_(logic) {
  d_.hypotheses = std::move(hyps);
}

Formula DerivationBuilder::at(std::size_t i) const {
  return d_.steps.at(i).formula;
}

std::size_t DerivationBuilder::axiom(SchemeId s, Formula f) {
  if (!matchScheme(logic_, s, f))
    throw std::logic_error("builder: " + printFormula(f) +
                           " does not instantiate " + schemeName(s));
  d_.steps.push_back({std::move(f), Justification::axiom(s)});
  return d_.steps.size() - 1;
}

std::size_t DerivationBuilder::intAx(Formula f) {
  return axiom(SchemeId::INT, std::move(f));
}

std::size_t DerivationBuilder::hyp(std::size_t k) {
  d_.steps.push_back({d_.hypotheses.at(k), Justification::hyp(k)});
  return d_.steps.size() - 1;
}

std::size_t DerivationBuilder::mp(std::size_t ant, std::size_t imp) {
  Formula impF = at(imp);
  if (impF.kind() != Kind::Imp || !(impF.left() == at(ant)))
    throw std::logic_error("builder: modus ponens mismatch");
  d_.steps.push_back({impF.right(), Justification::mp(ant, imp)});
  return d_.steps.size() - 1;
}

std::size_t DerivationBuilder::an(std::size_t axiomStep) {
  const Step& s = d_.steps.at(axiomStep);
  if (s.just.rule != Justification::Rule::Axiom ||
      s.just.scheme == SchemeId::TND)
    throw std::logic_error("builder: box introduction needs a non-TND axiom");
  d_.steps.push_back({Formula::box(s.formula), Justification::an(axiomStep)});
  return d_.steps.size() - 1;
}

std::size_t DerivationBuilder::append(const Derivation& closed) {
  if (!closed.hypotheses.empty())
    throw std::logic_error("builder: can only splice closed derivations");
  if (closed.steps.empty()) throw std::logic_error("builder: empty splice");
  std::size_t offset = d_.steps.size();
  for (const Step& s : closed.steps) {
    Step copy = s;
    switch (copy.just.rule) {
      case Justification::Rule::Mp:
        copy.just.i += offset;
        copy.just.j += offset;
        break;
      case Justification::Rule::An:
        copy.just.i += offset;
        break;
      default:
        break;
    }
    d_.steps.push_back(copy);
  }
  return d_.steps.size() - 1;
}

std::size_t DerivationBuilder::necInt(Formula f) { return an(intAx(std::move(f))); }

std::size_t DerivationBuilder::distrib(std::size_t boxImp) {
  Formula f = at(boxImp);
  if (f.kind() != Kind::Box || f.left().kind() != Kind::Imp)
    throw std::logic_error("builder: distrib needs box(a -> b)");
  Formula a = f.left().left(), b = f.left().right();
  std::size_t ax = axiom(
      SchemeId::S3,
      Formula::imp(f, Formula::imp(Formula::box(a), Formula::box(b))));
  return mp(boxImp, ax);
}

std::size_t DerivationBuilder::boxMp(std::size_t boxImp, std::size_t boxA) {
  return mp(boxA, distrib(boxImp));
}

std::size_t DerivationBuilder::mpChain(
    std::size_t taut, const std::vector<std::size_t>& premises) {
  std::size_t cur = taut;
  for (std::size_t p : premises) cur = mp(p, cur);
  return cur;
}

std::size_t DerivationBuilder::boxChain(
    const Formula& taut, const std::vector<std::size_t>& boxedPremises) {
  std::size_t cur = necInt(taut);
  for (std::size_t p : boxedPremises) cur = boxMp(cur, p);
  return cur;
}

std::size_t DerivationBuilder::impTrans(std::size_t ab, std::size_t bc) {
  Formula fab = at(ab), fbc = at(bc);
  if (fab.kind() != Kind::Imp || fbc.kind() != Kind::Imp ||
      !(fab.right() == fbc.left()))
    throw std::logic_error("builder: transitivity mismatch");
  Formula a = fab.left(), c = fbc.right();
  std::size_t t = intAx(
      Formula::imp(fab, Formula::imp(fbc, Formula::imp(a, c))));
  std::size_t m1 = mp(ab, t);
  return mp(bc, m1);
}

std::size_t DerivationBuilder::conjIntro(std::size_t a, std::size_t b) {
  Formula fa = at(a), fb = at(b);
  std::size_t t = intAx(
      Formula::imp(fa, Formula::imp(fb, Formula::conj(fa, fb))));
  std::size_t m1 = mp(a, t);
  return mp(b, m1);
}

std::size_t DerivationBuilder::iffIntro(std::size_t ab, std::size_t ba) {
  Formula fab = at(ab), fba = at(ba);
  if (fab.kind() != Kind::Imp || fba.kind() != Kind::Imp ||
      !(fab.left() == fba.right()) || !(fab.right() == fba.left()))
    throw std::logic_error("builder: iff introduction mismatch");
  return conjIntro(ab, ba);
}

std::size_t DerivationBuilder::boxConj(std::size_t boxA, std::size_t boxB) {
  Formula fa = at(boxA), fb = at(boxB);
  if (fa.kind() != Kind::Box || fb.kind() != Kind::Box)
    throw std::logic_error("builder: boxConj needs boxed premises");
  Formula a = fa.left(), b = fb.left();
  Formula taut =
      Formula::imp(a, Formula::imp(b, Formula::conj(a, b)));
  return boxChain(taut, {boxA, boxB});
}

// ---------------------------------------------------------------------------
// Shared sub-derivations

namespace {

Formula bx(const Formula& f) { return Formula::box(f); }
Formula ng(const Formula& f) { return Formula::neg(f); }
Formula im(const Formula& a, const Formula& b) { return Formula::imp(a, b); }
Formula cj(const Formula& a, const Formula& b) { return Formula::conj(a, b); }
Formula dj(const Formula& a, const Formula& b) { return Formula::disj(a, b); }
Formula kn(AgentId i, const Formula& f) { return Formula::know(i, f); }
Formula cm(const Group& g, const Formula& f) { return Formula::common(g, f); }
Formula ff(const Formula& a, const Formula& b) { return Formula::iff(a, b); }
Formula eq(const Formula& a, const Formula& b) { return Formula::ident(a, b); }
Formula tp() { return Formula::top(); }

// box chi -> (chi == true)
Derivation boxImpliesIdentityTop(const LogicId& L, const Formula& chi) {
  DerivationBuilder b(L, {bx(chi)});
  std::size_t h = b.hyp(0);
  std::size_t j1 = b.necInt(im(chi, im(tp(), chi)));
  std::size_t j2 = b.boxMp(j1, h);  // box(true -> chi)
  std::size_t j3 = b.necInt(im(chi, im(chi, tp())));
  std::size_t j4 = b.boxMp(j3, h);  // box(chi -> true)
  b.boxConj(j4, j2);                // box((chi -> true) & (true -> chi))
  return applyDeductionTheorem(L, b.derivation());
}

// (chi == true) -> box chi
Derivation identityTopImpliesBox(const LogicId& L, const Formula& chi) {
  DerivationBuilder b(L, {eq(chi, tp())});
  std::size_t h = b.hyp(0);  // box(chi <-> true)
  std::size_t i1 = b.necInt(im(ff(chi, tp()), im(tp(), chi)));
  std::size_t i2 = b.boxMp(i1, h);  // box(true -> chi)
  std::size_t i3 = b.distrib(i2);   // box true -> box chi
  std::size_t i4 = b.necInt(tp());  // box true
  b.mp(i4, i3);                     // box chi
  return applyDeductionTheorem(L, b.derivation());
}

// box chi <-> (chi == true)
Derivation boxAsIdentityTop(const LogicId& L, const Formula& chi) {
  DerivationBuilder b(L);
  std::size_t fwd = b.append(boxImpliesIdentityTop(L, chi));
  std::size_t back = b.append(identityTopImpliesBox(L, chi));
  b.iffIntro(fwd, back);
  return b.derivation();
}

// box (box chi | ~box chi); the only bundled derivation that crosses TND
Derivation boxedDecidability(const LogicId& L, const Formula& chi) {
  DerivationBuilder b(L);
  Formula a = bx(chi);
  Formula goal = bx(dj(a, ng(a)));
  std::size_t tnd = b.axiom(SchemeId::TND, dj(a, ng(a)));
  std::size_t four = b.axiom(SchemeId::S4, im(a, bx(a)));
  std::size_t inl = b.necInt(im(a, dj(a, ng(a))));
  std::size_t d1 = b.distrib(inl);  // box box chi -> goal
  std::size_t left = b.impTrans(four, d1);
  std::size_t five = b.axiom(SchemeId::S5, im(ng(a), bx(ng(a))));
  std::size_t inr = b.necInt(im(ng(a), dj(a, ng(a))));
  std::size_t d2 = b.distrib(inr);  // box ~box chi -> goal
  std::size_t right = b.impTrans(five, d2);
  std::size_t cases = b.intAx(
      im(im(a, goal), im(im(ng(a), goal), im(dj(a, ng(a)), goal))));
  std::size_t gate = b.mpChain(cases, {left, right});
  b.mp(tnd, gate);
  return b.derivation();
}

// box(a -> b) -> box(Ki a -> Ki b)
Derivation boxedKnowledgeMono(const LogicId& L, AgentId i, const Formula& a,
                              const Formula& b) {
  DerivationBuilder bld(L);
  Group gi{i};
  Formula ab = im(a, b);
  std::size_t u1 = bld.axiom(SchemeId::S11, im(bx(ab), bx(cm(gi, ab))));
  std::size_t u2 = bld.axiom(SchemeId::S12, im(cm(gi, ab), kn(i, ab)));
  std::size_t u3 = bld.an(u2);
  std::size_t u4 = bld.distrib(u3);  // box C{i}(a->b) -> box Ki(a->b)
  std::size_t u5 = bld.impTrans(u1, u4);
  std::size_t u6 = bld.axiom(
      SchemeId::S7, im(kn(i, ab), im(kn(i, a), kn(i, b))));
  std::size_t u7 = bld.an(u6);
  std::size_t u8 = bld.distrib(u7);
  bld.impTrans(u5, u8);
  return bld.derivation();
}

// box(a -> b) -> box(CG a -> CG b)
Derivation boxedCommonMono(const LogicId& L, const Group& g, const Formula& a,
                           const Formula& b) {
  DerivationBuilder bld(L);
  Formula ab = im(a, b);
  std::size_t s1 = bld.axiom(SchemeId::S11, im(bx(ab), bx(cm(g, ab))));
  std::size_t s2 = bld.axiom(
      SchemeId::S9, im(cm(g, ab), im(cm(g, a), cm(g, b))));
  std::size_t s3 = bld.an(s2);
  std::size_t s4 = bld.distrib(s3);
  bld.impTrans(s1, s4);
  return bld.derivation();
}

// From a step proving box chi, conclude Ki chi (through C{i} and reflection).
std::size_t knowledgeFromBox(DerivationBuilder& b, AgentId i,
                             const Formula& chi, std::size_t boxChi) {
  Group gi{i};
  std::size_t q1 = b.axiom(SchemeId::S11, im(bx(chi), bx(cm(gi, chi))));
  std::size_t q2 = b.mp(boxChi, q1);  // box C{i} chi
  std::size_t q3 = b.axiom(SchemeId::S12, im(cm(gi, chi), kn(i, chi)));
  std::size_t q4 = b.an(q3);
  std::size_t q5 = b.distrib(q4);
  std::size_t q6 = b.mp(q2, q5);  // box Ki chi
  std::size_t q7 = b.axiom(SchemeId::S2, im(bx(kn(i, chi)), kn(i, chi)));
  return b.mp(q6, q7);
}

}  // namespace

// ---------------------------------------------------------------------------
// Bundled scripts

std::vector<LemmaScript> bundledScripts(int agents) {
  return bundledScripts(agents, Formula::var("x0"), Formula::var("x1"));
}

std::vector<LemmaScript> bundledScripts(int agents, const Formula& phi,
                                        const Formula& psi) {
  std::vector<LemmaScript> scripts;
  const LogicId l5(Logic::L5);
  const LogicId el5(Logic::EL5);
  const LogicId iel(Logic::IEL);
  const bool l5Ok = formulaInLogic(phi, l5) && formulaInLogic(psi, l5);

  // --- proof-predicate lemmas (home: L5) ---
  if (l5Ok) {
    Derivation d = boxAsIdentityTop(l5, phi);
    scripts.push_back({"box-as-identity-with-top", l5, d,
                       ff(bx(phi), eq(phi, tp())), 1, {}});
    scripts.push_back({"box-as-identity-with-top-eq", l5,
                       necessitate(l5, d), eq(bx(phi), eq(phi, tp())), 1, {}});
  }
  if (l5Ok) {
    // box(phi & psi) == (box phi & box psi)
    DerivationBuilder b(l5);
    Formula pq = cj(phi, psi);
    std::size_t a1 = b.necInt(im(pq, phi));
    std::size_t a2 = b.distrib(a1);
    std::size_t a3 = b.necInt(im(pq, psi));
    std::size_t a4 = b.distrib(a3);
    Formula A = bx(pq), B = bx(phi), C = bx(psi);
    std::size_t t = b.intAx(im(im(A, B), im(im(A, C), im(A, cj(B, C)))));
    std::size_t fwd = b.mpChain(t, {a2, a4});
    DerivationBuilder bh(l5, {cj(B, C)});
    std::size_t h = bh.hyp(0);
    std::size_t pr1 = bh.intAx(im(cj(B, C), B));
    std::size_t c1 = bh.mp(h, pr1);
    std::size_t pr2 = bh.intAx(im(cj(B, C), C));
    std::size_t c2 = bh.mp(h, pr2);
    bh.boxConj(c1, c2);
    std::size_t back = b.append(applyDeductionTheorem(l5, bh.derivation()));
    b.iffIntro(fwd, back);
    scripts.push_back({"box-conj-distribution", l5,
                       necessitate(l5, b.derivation()),
                       eq(bx(pq), cj(B, C)), 1, {}});
  }
  if (l5Ok) {
    // box(phi | psi) == (box phi | box psi)
    DerivationBuilder b(l5);
    Formula pq = dj(phi, psi);
    Formula A = bx(phi), B = bx(psi), C = bx(pq);
    std::size_t fwd = b.axiom(SchemeId::S1, im(C, dj(A, B)));
    std::size_t d1 = b.necInt(im(phi, pq));
    std::size_t d2 = b.distrib(d1);
    std::size_t d3 = b.necInt(im(psi, pq));
    std::size_t d4 = b.distrib(d3);
    std::size_t t = b.intAx(im(im(A, C), im(im(B, C), im(dj(A, B), C))));
    std::size_t back = b.mpChain(t, {d2, d4});
    b.iffIntro(fwd, back);
    scripts.push_back({"box-disj-distribution", l5,
                       necessitate(l5, b.derivation()),
                       eq(C, dj(A, B)), 1, {}});
  }
  if (l5Ok) {
    Derivation d = boxedDecidability(l5, phi);
    scripts.push_back({"box-decidability", l5, d,
                       bx(dj(bx(phi), ng(bx(phi)))), 1, {}});
  }
  if (l5Ok) {
    // ~~box phi == box phi
    DerivationBuilder b(l5);
    Formula a = bx(phi);
    std::size_t f = b.append(boxedDecidability(l5, phi));
    Formula taut = im(dj(a, ng(a)), ff(ng(ng(a)), a));
    b.boxChain(taut, {f});
    scripts.push_back({"box-double-negation", l5, b.derivation(),
                       eq(ng(ng(a)), a), 1, {}});
  }
  if (l5Ok) {
    // ~(box phi & box psi) == (~box phi | ~box psi)
    DerivationBuilder b(l5);
    Formula a = bx(phi), c = bx(psi);
    std::size_t f1 = b.append(boxedDecidability(l5, phi));
    std::size_t f2 = b.append(boxedDecidability(l5, psi));
    Formula taut = im(dj(a, ng(a)),
                      im(dj(c, ng(c)),
                         ff(ng(cj(a, c)), dj(ng(a), ng(c)))));
    b.boxChain(taut, {f1, f2});
    scripts.push_back({"box-de-morgan", l5, b.derivation(),
                       eq(ng(cj(a, c)), dj(ng(a), ng(c))), 1, {}});
  }
  if (l5Ok) {
    // (box phi == true) | (box phi == false)
    DerivationBuilder b(l5);
    Formula a = bx(phi);
    std::size_t f = b.append(boxedDecidability(l5, phi));
    std::size_t s1 = b.axiom(SchemeId::S1,
                             im(bx(dj(a, ng(a))), dj(bx(a), bx(ng(a)))));
    std::size_t split = b.mp(f, s1);  // box box phi | box ~box phi
    std::size_t toTop = b.append(boxImpliesIdentityTop(l5, a));
    std::size_t nb1 = b.necInt(im(ng(a), ff(a, Formula::bottom())));
    std::size_t toBot = b.distrib(nb1);  // box ~a -> (a == false)
    Formula A = bx(a), B = bx(ng(a));
    Formula C = eq(a, tp()), D = eq(a, Formula::bottom());
    std::size_t t = b.intAx(
        im(im(A, C), im(im(B, D), im(dj(A, B), dj(C, D)))));
    std::size_t gate = b.mpChain(t, {toTop, toBot});
    b.mp(split, gate);
    scripts.push_back({"box-identity-dichotomy", l5, b.derivation(),
                       dj(eq(a, tp()), eq(a, Formula::bottom())), 1, {}});
  }
  if (l5Ok) {
    // box (phi -> dia phi)
    DerivationBuilder b(l5);
    Formula core = im(phi, Formula::dia(phi));
    std::size_t s2 = b.axiom(SchemeId::S2, im(bx(ng(phi)), ng(phi)));
    std::size_t t = b.intAx(im(im(bx(ng(phi)), ng(phi)), core));
    b.mp(s2, t);
    Derivation lifted = necessitate(l5, b.derivation());
    scripts.push_back({"possibility-introduction", l5, lifted, bx(core), 1, {}});
  }
  if (l5Ok) {
    // box (dia phi -> box dia phi): an instance of the negative
    // introspection axiom, boxed
    DerivationBuilder b(l5);
    std::size_t ax = b.axiom(SchemeId::S5,
                             im(ng(bx(ng(phi))), bx(ng(bx(ng(phi))))));
    b.an(ax);
    scripts.push_back({"possibility-stability", l5, b.derivation(),
                       bx(im(Formula::dia(phi), bx(Formula::dia(phi)))), 1, {}});
  }
  if (l5Ok) {
    // box (dia(phi|psi) -> (dia phi | dia psi))
    DerivationBuilder b(l5);
    Formula a = bx(ng(phi)), c = bx(ng(psi)), pq = dj(phi, psi);
    Formula boxNotPq = bx(ng(pq));
    std::size_t f1 = b.append(boxedDecidability(l5, ng(phi)));
    std::size_t f2 = b.append(boxedDecidability(l5, ng(psi)));
    // box((box~phi & box~psi) -> box~(phi|psi)), TND-free, then boxed
    DerivationBuilder bh(l5, {cj(a, c)});
    std::size_t h = bh.hyp(0);
    std::size_t pr1 = bh.intAx(im(cj(a, c), a));
    std::size_t c1 = bh.mp(h, pr1);
    std::size_t pr2 = bh.intAx(im(cj(a, c), c));
    std::size_t c2 = bh.mp(h, pr2);
    std::size_t both = bh.boxConj(c1, c2);  // box(~phi & ~psi)
    std::size_t n1 = bh.necInt(im(cj(ng(phi), ng(psi)), ng(pq)));
    bh.boxMp(n1, both);  // box ~(phi|psi)
    Derivation conv = applyDeductionTheorem(l5, bh.derivation());
    std::size_t f3 = b.append(necessitate(l5, conv));
    Formula taut = im(dj(a, ng(a)),
                      im(dj(c, ng(c)),
                         im(im(cj(a, c), boxNotPq),
                            im(ng(boxNotPq), dj(ng(a), ng(c))))));
    b.boxChain(taut, {f1, f2, f3});
    scripts.push_back(
        {"possibility-disj-distribution", l5, b.derivation(),
         bx(im(Formula::dia(pq), dj(Formula::dia(phi), Formula::dia(psi)))),
         1, {}});
  }

  // --- verification-style systems ---
  if (formulaInLogic(phi, el5)) {
    // box phi -> K phi (the deductively equivalent form of weak co-reflection)
    DerivationBuilder b(el5);
    std::size_t w1 = b.axiom(SchemeId::EL5_WEAKCO, im(bx(phi), bx(kn(1, phi))));
    std::size_t w2 = b.axiom(SchemeId::S2, im(bx(kn(1, phi)), kn(1, phi)));
    b.impTrans(w1, w2);
    scripts.push_back({"el5-box-implies-knowledge", el5, b.derivation(),
                       im(bx(phi), kn(1, phi)), 1, {}});
  }
  if (formulaInLogic(phi, iel) && formulaInLogic(psi, iel)) {
    // knowledge of a tautology, and disjunction introduction under K
    DerivationBuilder b(iel);
    std::size_t i1 = b.intAx(im(phi, phi));
    std::size_t i2 = b.axiom(SchemeId::IEL_COREFL,
                             im(im(phi, phi), kn(1, im(phi, phi))));
    b.mp(i1, i2);
    scripts.push_back({"iel-knowledge-of-tautology", iel, b.derivation(),
                       kn(1, im(phi, phi)), 1, {}});

    DerivationBuilder b2(iel);
    Formula pq = dj(phi, psi);
    std::size_t n1 = b2.intAx(im(phi, pq));
    std::size_t n2 = b2.axiom(SchemeId::IEL_COREFL,
                              im(im(phi, pq), kn(1, im(phi, pq))));
    std::size_t n3 = b2.mp(n1, n2);
    std::size_t n4 = b2.axiom(SchemeId::IEL_DIST,
                              im(kn(1, im(phi, pq)),
                                 im(kn(1, phi), kn(1, pq))));
    b2.mp(n3, n4);
    scripts.push_back({"iel-knowledge-disj-introduction", iel, b2.derivation(),
                       im(kn(1, phi), kn(1, pq)), 1, {}});
  }

  // --- access-based lemmas (home: the system without introspection) ---
  const LogicId acm(Logic::L5ACminus, agents);
  if (agents >= 2 && formulaInLogic(phi, acm) && formulaInLogic(psi, acm)) {
    Group g12{1, 2};
    {
      scripts.push_back({"boxed-knowledge-monotonicity", acm,
                         boxedKnowledgeMono(acm, 1, phi, psi),
                         im(bx(im(phi, psi)),
                            bx(im(kn(1, phi), kn(1, psi)))),
                         2, {}});
      scripts.push_back({"boxed-common-monotonicity", acm,
                         boxedCommonMono(acm, g12, phi, psi),
                         im(bx(im(phi, psi)),
                            bx(im(cm(g12, phi), cm(g12, psi)))),
                         2, {}});
    }
    {
      // box phi == box K1 phi
      DerivationBuilder b(acm);
      Group g1{1};
      std::size_t v1a = b.axiom(SchemeId::S11, im(bx(phi), bx(cm(g1, phi))));
      std::size_t v1b = b.axiom(SchemeId::S12, im(cm(g1, phi), kn(1, phi)));
      std::size_t v1c = b.an(v1b);
      std::size_t v1d = b.distrib(v1c);
      std::size_t fwd = b.impTrans(v1a, v1d);  // box phi -> box K1 phi
      std::size_t v2a = b.axiom(SchemeId::S6, im(kn(1, phi), phi));
      std::size_t v2b = b.an(v2a);
      std::size_t back = b.distrib(v2b);  // box K1 phi -> box phi
      b.iffIntro(fwd, back);
      scripts.push_back({"box-knowledge-equivalence", acm,
                         necessitate(acm, b.derivation()),
                         eq(bx(phi), bx(kn(1, phi))), 2, {}});
    }
    {
      // box phi == box C{1,2} phi
      DerivationBuilder b(acm);
      std::size_t w1 = b.axiom(SchemeId::S11, im(bx(phi), bx(cm(g12, phi))));
      std::size_t x1 = b.axiom(SchemeId::S12, im(cm(g12, phi), kn(1, phi)));
      std::size_t x2 = b.an(x1);
      std::size_t x3 = b.distrib(x2);  // box CG phi -> box K1 phi
      std::size_t x4 = b.axiom(SchemeId::S6, im(kn(1, phi), phi));
      std::size_t x5 = b.an(x4);
      std::size_t x6 = b.distrib(x5);  // box K1 phi -> box phi
      std::size_t back = b.impTrans(x3, x6);
      b.iffIntro(w1, back);
      scripts.push_back({"box-common-equivalence", acm,
                         necessitate(acm, b.derivation()),
                         eq(bx(phi), bx(cm(g12, phi))), 2, {}});
    }
    {
      // K1(phi & psi) == (K1 phi & K1 psi)
      DerivationBuilder b(acm);
      Formula pq = cj(phi, psi);
      std::size_t p1 = b.necInt(im(pq, phi));
      std::size_t k1 = knowledgeFromBox(b, 1, im(pq, phi), p1);
      std::size_t s7a = b.axiom(SchemeId::S7,
                                im(kn(1, im(pq, phi)),
                                   im(kn(1, pq), kn(1, phi))));
      std::size_t e1 = b.mp(k1, s7a);  // K1(pq) -> K1 phi
      std::size_t p2 = b.necInt(im(pq, psi));
      std::size_t k2 = knowledgeFromBox(b, 1, im(pq, psi), p2);
      std::size_t s7b = b.axiom(SchemeId::S7,
                                im(kn(1, im(pq, psi)),
                                   im(kn(1, pq), kn(1, psi))));
      std::size_t e2 = b.mp(k2, s7b);  // K1(pq) -> K1 psi
      Formula A = kn(1, pq), B = kn(1, phi), C = kn(1, psi);
      std::size_t t = b.intAx(im(im(A, B), im(im(A, C), im(A, cj(B, C)))));
      std::size_t fwd = b.mpChain(t, {e1, e2});
      // converse under hypothesis K1 phi & K1 psi
      DerivationBuilder bh(acm, {cj(B, C)});
      std::size_t h = bh.hyp(0);
      std::size_t prB = bh.intAx(im(cj(B, C), B));
      std::size_t hB = bh.mp(h, prB);
      std::size_t prC = bh.intAx(im(cj(B, C), C));
      std::size_t hC = bh.mp(h, prC);
      Formula curry = im(phi, im(psi, pq));
      std::size_t t1 = bh.necInt(curry);
      std::size_t t2 = knowledgeFromBox(bh, 1, curry, t1);
      std::size_t t4 = bh.axiom(SchemeId::S7,
                                im(kn(1, curry),
                                   im(kn(1, phi), kn(1, im(psi, pq)))));
      std::size_t t5 = bh.mp(t2, t4);
      std::size_t t6 = bh.mp(hB, t5);  // K1(psi -> pq)
      std::size_t t7 = bh.axiom(SchemeId::S7,
                                im(kn(1, im(psi, pq)),
                                   im(kn(1, psi), kn(1, pq))));
      std::size_t t8 = bh.mp(t6, t7);
      bh.mp(hC, t8);  // K1 pq
      std::size_t back = b.append(applyDeductionTheorem(acm, bh.derivation()));
      b.iffIntro(fwd, back);
      scripts.push_back({"knowledge-conj-distribution", acm,
                         necessitate(acm, b.derivation()),
                         eq(kn(1, pq), cj(B, C)), 2, {}});
    }
    {
      // K1(phi | psi) == (K1 phi | K1 psi)
      DerivationBuilder b(acm);
      Formula pq = dj(phi, psi);
      Formula A = kn(1, pq), B = kn(1, phi), C = kn(1, psi);
      std::size_t fwd = b.axiom(SchemeId::S8, im(A, dj(B, C)));
      std::size_t r1 = b.necInt(im(phi, pq));
      std::size_t r2 = knowledgeFromBox(b, 1, im(phi, pq), r1);
      std::size_t r3 = b.axiom(SchemeId::S7,
                               im(kn(1, im(phi, pq)), im(B, A)));
      std::size_t r4 = b.mp(r2, r3);  // K1 phi -> K1 pq
      std::size_t r5 = b.necInt(im(psi, pq));
      std::size_t r6 = knowledgeFromBox(b, 1, im(psi, pq), r5);
      std::size_t r7 = b.axiom(SchemeId::S7,
                               im(kn(1, im(psi, pq)), im(C, A)));
      std::size_t r8 = b.mp(r6, r7);  // K1 psi -> K1 pq
      std::size_t t = b.intAx(im(im(B, A), im(im(C, A), im(dj(B, C), A))));
      std::size_t back = b.mpChain(t, {r4, r8});
      b.iffIntro(fwd, back);
      scripts.push_back({"knowledge-disj-distribution", acm,
                         necessitate(acm, b.derivation()),
                         eq(A, dj(B, C)), 2, {}});
    }
    {
      // box (K1 K2 phi -> K1 phi)
      DerivationBuilder b(acm);
      std::size_t d1 = b.axiom(SchemeId::S6, im(kn(2, phi), phi));
      std::size_t d2 = b.an(d1);  // box(K2 phi -> phi)
      std::size_t d3 = b.append(boxedKnowledgeMono(acm, 1, kn(2, phi), phi));
      b.mp(d2, d3);
      scripts.push_back({"nested-knowledge-collapse", acm, b.derivation(),
                         bx(im(kn(1, kn(2, phi)), kn(1, phi))), 2, {}});
    }
    scripts.push_back(redundantCommonStepScript(agents));
  }
  return scripts;
}

LemmaScript redundantCommonStepScript(int agents) {
  const LogicId ac(Logic::L5AC, std::max(agents, 2));
  Formula phi = Formula::var("x0");
  Group g12{1, 2};
  DerivationBuilder b(ac);
  Formula cgPhi = cm(g12, phi);
  Formula k1Phi = kn(1, phi);
  // box(CG phi -> K1 phi) -> box(CG CG phi -> CG K1 phi)
  std::size_t x1 = b.append(boxedCommonMono(ac, g12, cgPhi, k1Phi));
  std::size_t x2 = b.axiom(SchemeId::S12, im(cgPhi, k1Phi));
  std::size_t x3 = b.an(x2);
  std::size_t x4 = b.mp(x3, x1);  // box(CG CG phi -> CG K1 phi)
  std::size_t x5 = b.axiom(SchemeId::S2,
                           im(bx(im(cm(g12, cgPhi), cm(g12, k1Phi))),
                              im(cm(g12, cgPhi), cm(g12, k1Phi))));
  std::size_t x6 = b.mp(x4, x5);
  std::size_t x7 = b.axiom(SchemeId::S15, im(cgPhi, cm(g12, cgPhi)));
  b.impTrans(x7, x6);
  return {"common-step-redundancy", ac, b.derivation(),
          im(cgPhi, cm(g12, k1Phi)), 2, {Logic::L5ACminus}};
}

// ---------------------------------------------------------------------------
// Running the scripts

namespace {

bool schemesSubset(Logic a, Logic b) {
  const auto& sa = axiomSchemes(a);
  const auto& sb = axiomSchemes(b);
  for (SchemeId s : sa)
    if (std::find(sb.begin(), sb.end(), s) == sb.end()) return false;
  return true;
}

}  // namespace

std::string ScriptReport::str() const {
  std::ostringstream out;
  out << "scripts under " << logic.name() << " (agents " << logic.agents
      << ")\n";
  for (const ScriptOutcome& o : outcomes) {
    out << (o.pass ? "PASS " : "FAIL ") << o.name;
    if (o.pass != o.expectedPass) out << "  [UNEXPECTED]";
    if (!o.pass && o.expectedPass == false) out << "  (expected failure)";
    if (!o.detail.empty()) out << "  -- " << o.detail;
    out << "\n";
  }
  out << (allAsExpected ? "all scripts behaved as expected"
                        : "unexpected script outcomes present")
      << "\n";
  return out.str();
}

ScriptReport runRegressionScripts(const LogicId& logic) {
  ScriptReport report;
  report.logic = logic;
  for (const LemmaScript& s : bundledScripts(logic.agents)) {
    bool home = schemesSubset(s.homeLogic.logic, logic.logic);
    bool cross = std::find(s.crossChecks.begin(), s.crossChecks.end(),
                           logic.logic) != s.crossChecks.end();
    if (!home && !cross) continue;
    if (s.minAgents > logic.agents) continue;
    ScriptOutcome outcome;
    outcome.name = s.name;
    outcome.expectedPass = home;
    outcome.theorem = s.expected;
    CheckResult r = checkDerivation(logic, s.derivation);
    if (r.ok && !(*r.theorem == s.expected)) {
      outcome.pass = false;
      outcome.detail = "proved " + printFormula(*r.theorem) +
                       " instead of " + printFormula(s.expected);
    } else {
      outcome.pass = r.ok;
      if (!r.ok && !r.diagnostics.empty())
        outcome.detail = "step " + std::to_string(r.diagnostics[0].step) +
                         ": " + r.diagnostics[0].reason;
    }
    if (outcome.pass != outcome.expectedPass) report.allAsExpected = false;
    report.outcomes.push_back(std::move(outcome));
  }
  return report;
}

}  // namespace epik
