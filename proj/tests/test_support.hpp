#pragma once

#include <random>

#include "epik/kernel.hpp"

// Shared generators for randomized kernel tests: formulas in a logic's
// language and valid derivations with guaranteed rule coverage.

namespace epik::testsupport {

inline Formula randomSmall(std::mt19937_64& rng, const LogicId& logic,
                           int depth) {
  if (depth == 0 || rng() % 3 == 0)
    return rng() % 4 == 0 ? Formula::bottom()
                          : Formula::var("x" + std::to_string(rng() % 2));
  switch (rng() % 6) {
    case 0:
      return Formula::conj(randomSmall(rng, logic, depth - 1),
                           randomSmall(rng, logic, depth - 1));
    case 1:
      return Formula::disj(randomSmall(rng, logic, depth - 1),
                           randomSmall(rng, logic, depth - 1));
    case 2:
      return Formula::imp(randomSmall(rng, logic, depth - 1),
                          randomSmall(rng, logic, depth - 1));
    case 3:
      if (logic.hasBox())
        return Formula::box(randomSmall(rng, logic, depth - 1));
      return Formula::neg(randomSmall(rng, logic, depth - 1));
    case 4:
      if (logic.hasKnow())
        return Formula::know(1 + static_cast<int>(rng() % logic.agents),
                             randomSmall(rng, logic, depth - 1));
      return randomSmall(rng, logic, depth - 1);
    default:
      if (logic.hasCommon()) {
        std::uint32_t mask =
            1 + static_cast<std::uint32_t>(rng() % ((1u << logic.agents) - 1));
        return Formula::common(Group::fromMask(mask),
                               randomSmall(rng, logic, depth - 1));
      }
      return randomSmall(rng, logic, depth - 1);
  }
}

// Valid by construction: axiom instances, weakening detours that always give
// modus ponens opportunities, box introduction over eligible axiom steps.
inline Derivation randomDerivation(std::mt19937_64& rng, const LogicId& logic,
                                   bool withHyps, bool allowTnd) {
  Derivation d;
  if (withHyps) {
    int nh = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < nh; ++i)
      d.hypotheses.push_back(randomSmall(rng, logic, 2));
    for (std::size_t i = 0; i < d.hypotheses.size(); ++i)
      d.steps.push_back({d.hypotheses[i], Justification::hyp(i)});
  }
  Formula seed = randomSmall(rng, logic, 2);
  d.steps.push_back(
      {Formula::imp(seed, seed), Justification::axiom(SchemeId::INT)});
  int extra = 3 + static_cast<int>(rng() % 10);
  for (int t = 0; t < extra; ++t) {
    switch (rng() % 4) {
      case 0: {
        Formula a = randomSmall(rng, logic, 2);
        if (logic.hasBox()) {
          d.steps.push_back({Formula::imp(Formula::box(a), a),
                             Justification::axiom(SchemeId::S2)});
        } else {
          d.steps.push_back({Formula::imp(a, Formula::know(1, a)),
                             Justification::axiom(SchemeId::IEL_COREFL)});
        }
        break;
      }
      case 1: {
        Formula a = randomSmall(rng, logic, 2);
        if (allowTnd && logic.logic != Logic::IEL) {
          d.steps.push_back({Formula::disj(a, Formula::neg(a)),
                             Justification::axiom(SchemeId::TND)});
        } else {
          d.steps.push_back({Formula::imp(a, Formula::imp(a, a)),
                             Justification::axiom(SchemeId::INT)});
        }
        break;
      }
      case 2: {
        std::size_t i = rng() % d.steps.size();
        std::size_t j = rng() % d.steps.size();
        Formula a = d.steps[i].formula, b = d.steps[j].formula;
        d.steps.push_back({Formula::imp(a, Formula::imp(b, a)),
                           Justification::axiom(SchemeId::INT)});
        d.steps.push_back(
            {Formula::imp(b, a), Justification::mp(i, d.steps.size() - 1)});
        d.steps.push_back({a, Justification::mp(j, d.steps.size() - 1)});
        break;
      }
      default: {
        if (!logic.hasBox()) break;
        std::vector<std::size_t> eligible;
        for (std::size_t k = 0; k < d.steps.size(); ++k)
          if (d.steps[k].just.rule == Justification::Rule::Axiom &&
              d.steps[k].just.scheme != SchemeId::TND)
            eligible.push_back(k);
        if (eligible.empty()) break;
        std::size_t k = eligible[rng() % eligible.size()];
        d.steps.push_back(
            {Formula::box(d.steps[k].formula), Justification::an(k)});
        break;
      }
    }
  }
  return d;
}

}  // namespace epik::testsupport
