#pragma once

#include <vector>

#include "kblow/rees.hpp"

namespace kblow {

// One blow-up step of a desingularization sequence. The center is given by
// a local zero_section model; `adjust` is the character factor carried by
// the proper pushforward p_{i*} from the step's local chart down to the
// base, supplied with the sequence data. `declared_rank` must agree with
// the model.
struct BlowupStep {
  BlowupModel model;
  int declared_rank = 0;
  RationalClass adjust;

  BlowupStep(BlowupModel model_, int declared_rank_, RationalClass adjust_)
      : model(std::move(model_)), declared_rank(declared_rank_), adjust(std::move(adjust_)) {}
};

// A user-supplied sequence of blow-ups ending (when terminal_empty) in the
// empty scheme. Blow-up centers are consumed, never computed.
struct BlowupSequence {
  std::vector<BlowupStep> steps;
  bool terminal_empty = true;
};

namespace detail {

inline void validate_step(const BlowupStep& step, size_t index) {
  step.model.require_zero_section();
  if (step.declared_rank != step.model.rank())
    throw kb_error("malformed step " + std::to_string(index) +
                   ": declared rank does not match the model");
}

// det(F_i)^{-1} sum_{j=0}^{-r_i} S^j(F_i^dual): the step's correction class
// before sign and pushforward. Empty (zero) when r_i > 0.
inline LaurentPoly step_correction(const BlowupModel& m) {
  const TwoTermComplex& f = m.conormal();
  LaurentPoly corr(f.shape());
  for (int j = 0; j <= -f.rank(); ++j)
    corr += sym_virtual(f.dual(), j).shifted(det_class(f).inverse());
  return corr;
}

}  // namespace detail

// The aggregate sum_i (-1)^{r_i} p_{i*}(det(F_i)^{-1} sum_j S^j(F_i^dual)).
inline RationalClass approx_rhs(const BlowupSequence& seq) {
  if (seq.steps.empty()) throw kb_error("approx_rhs: empty sequence");
  RationalClass acc = RationalClass::zero(seq.steps.front().model.shape());
  for (size_t i = 0; i < seq.steps.size(); ++i) {
    const auto& step = seq.steps[i];
    detail::validate_step(step, i);
    LaurentPoly corr = detail::step_correction(step.model);
    if (corr.is_zero()) continue;
    if (sign_pow(step.declared_rank) < 0) corr = -corr;
    acc += step.adjust * RationalClass(std::move(corr));
  }
  return acc;
}

// Verifies a full sequence against the aggregate formula:
//  - each step satisfies the per-step comparison identity,
//  - consecutive steps match at the interface, i.e. the pushed class of one
//    step's blow-up is the next step's ambient class,
//  - the final blow-up class vanishes (terminal_empty),
//  - the telescoped total reproduces `initial`.
// Failures name the step at which the chain breaks.
inline VerificationReport sequence_telescope_check(const BlowupSequence& seq,
                                                   const RationalClass& initial) {
  if (!seq.terminal_empty)
    throw kb_error("sequence_telescope_check: non-terminating sequence flag");
  if (seq.steps.empty()) throw kb_error("sequence_telescope_check: empty sequence");
  VerificationReport rep;

  for (size_t i = 0; i < seq.steps.size(); ++i) {
    detail::validate_step(seq.steps[i], i);
    auto local = comparison_formula(seq.steps[i].model);
    rep.add_bool("approx/step-" + std::to_string(i) + "/local-comparison", "eq:noref",
                 local.all_pass());
  }

  // Global classes: G_i = adjust_i * [O_{X_i}]^local. The chain constraint
  // ties the pushed blow-up of step i to the ambient of step i+1.
  std::vector<RationalClass> global;
  std::vector<RationalClass> pushed;
  for (const auto& step : seq.steps) {
    global.push_back(step.adjust * structure_class(step.model));
    pushed.push_back(step.adjust * blowup_piece(step.model, 0));
  }
  rep.add_eq("approx/step-0/initial-class", "conj:approx", global.front(), initial);
  for (size_t i = 0; i + 1 < seq.steps.size(); ++i)
    rep.add_eq("approx/step-" + std::to_string(i + 1) + "/interface", "thm:main2", pushed[i],
               global[i + 1]);
  rep.add_eq("approx/step-" + std::to_string(seq.steps.size() - 1) + "/terminal-empty",
             "thm:main2", pushed.back(), RationalClass::zero(initial.shape()));

  rep.add_eq("approx/telescoped-total", "eq:formula", initial, approx_rhs(seq));
  return rep;
}

}  // namespace kblow
