#ifndef DEPCALC_REWRITE_HPP
#define DEPCALC_REWRITE_HPP

#include "depcalc/typecheck.hpp"

namespace depcalc {

inline constexpr std::size_t default_fuel = 100000;

// Full beta normal form of a plain lambda term (leftmost-outermost), then
// eta-contraction (functions and pairs) to a fixpoint.
TermPtr normalize_lambda(const TermPtr& t, std::size_t fuel = default_fuel);

// Left-to-right call-by-value evaluation of a closed dependency-calculus
// term. Values are lambdas, unit, pairs/injections of values, and eta of a
// value; evaluation proceeds underneath eta.
TermPtr cbv_eval(const GradeAlgebra& alg, const TermPtr& t, std::size_t fuel = default_fuel);
bool is_cbv_value(const TermPtr& t);
// One small step, or nullptr when `t` is a value. Exposed for the subject
// reduction tests.
TermPtr cbv_step(const GradeAlgebra& alg, const TermPtr& t);

// Fixpoint of the oriented modal rewrite system: beta/eta, the up laws, the
// unit/counit and (co)multiplication cancellations, functor identity and
// fusion for lift, naturality pushed outward for up and inward for the modal
// operators. Sound for the equational theories; decides them only partially.
TermPtr modal_normalize(const GradeAlgebra& alg, const TermPtr& t, std::size_t fuel = default_fuel);

// Every rewrite step performed, for the erasure-soundness property test.
struct RewriteStep {
  std::string rule;
  TermPtr before, after;
};
TermPtr modal_normalize_traced(const GradeAlgebra& alg, const TermPtr& t,
                               std::vector<RewriteStep>& steps, std::size_t fuel = default_fuel);

enum class equality_verdict { equal_full, equal_up_to_erasure, not_equal, undecided };
const char* verdict_name(equality_verdict v);

struct EqualityResult {
  equality_verdict verdict;
  std::string detail;
};

// Decides equality of two terms of the same judgement. EqualFull when the
// modal rewrite system identifies them (for graded judgements, additionally
// up to eta-long forms at the judgement type); EqualUpToErasure when only
// the erasures agree; Undecided only on fuel exhaustion. `type` (with
// `grade` for graded calculi) enables the eta-long comparison and may be
// null when unknown.
EqualityResult decide_equal(const GradeAlgebra& alg, calculus calc, const TermPtr& t1,
                            const TermPtr& t2, const TypePtr& type = nullptr,
                            std::optional<Grade> grade = std::nullopt,
                            std::size_t fuel = default_fuel);

}  // namespace depcalc

#endif
