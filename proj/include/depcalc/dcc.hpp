#ifndef DEPCALC_DCC_HPP
#define DEPCALC_DCC_HPP

#include <unordered_map>

#include "depcalc/typecheck.hpp"

namespace depcalc {

// Plain protection is the four-rule judgement of the original calculus;
// the extended mode adds the minimum and combine rules.
enum class protection_mode { plain_dcc, extended_dcce };

// Decides l <= A. Plain mode follows the syntax-directed recursion of the
// four rules. Extended mode computes the principal protection level p(A)
// (the combine rule closes protecting levels under joins, so the protecting
// set has a greatest element) and answers leq(l, p(A)).
bool protected_at(const GradeAlgebra& alg, protection_mode mode, Grade l, const TypePtr& a);

// The principal protection level of A in the extended system.
// p(Unit/Void/Base/Sum) = bottom, p(A->B) = p(B), p(S_l A) = l v p(A),
// p(A*B) = join of all common lower bounds of p(A) and p(B).
Grade principal_level(const GradeAlgebra& alg, const TypePtr& a);

// Checker for the dependency calculus: the lambda core plus eta and bind.
// bind's side condition uses the protection judgement of `mode`.
TypePtr infer_dcc(const GradeAlgebra& alg, protection_mode mode, const Context& ctx,
                  const TermPtr& t);
void check_dcc(const GradeAlgebra& alg, protection_mode mode, const Context& ctx, const TermPtr& t,
               const TypePtr& expected);

// Builds the closed coercion j with |- j : S_l B -> B whose erasure is the
// identity, following the case analysis of the protection derivation. The
// rule priority is: minimum, monad, already, product, function, and combine
// as the last resort. Precondition: protected_at(extended, l, B).
TermPtr synthesize_j(const GradeAlgebra& alg, Grade l, const TypePtr& b);

// Type-checks `t` and records the result type of every bind node, keyed by
// node identity. The observer model needs these to build the canonical
// inhabitant when a bind is blacked out.
std::unordered_map<const Term*, TypePtr> annotate_bind_types(const GradeAlgebra& alg,
                                                             protection_mode mode,
                                                             const Context& ctx, const TermPtr& t,
                                                             const TypePtr& expected = nullptr);

}  // namespace depcalc

#endif
