#ifndef DEPCALC_ORACLE_HPP
#define DEPCALC_ORACLE_HPP

#include <memory>

#include "depcalc/dcc.hpp"
#include "depcalc/syntax.hpp"

namespace depcalc {

// Brute-force oracles. These exist to be obviously correct: they search the
// inference rules directly, with a depth bound, and are used to validate the
// optimized procedures.

inline constexpr int default_protection_depth = 8;
inline constexpr int default_typing_depth = 6;

// True iff a derivation of l <= A exists with proof height <= depth using
// the rules of `mode`. Combine instantiates its two levels over all element
// pairs of the (finite) algebra.
bool protection_search(const GradeAlgebra& alg, protection_mode mode, Grade l, const TypePtr& a,
                       int depth = default_protection_depth);

// Reusable form of the same search. The memo is keyed by type-node identity,
// so it pays off across queries over a shared type enumeration.
class ProtectionOracle {
public:
  ProtectionOracle(const GradeAlgebra& alg, protection_mode mode,
                   int max_depth = default_protection_depth);
  ~ProtectionOracle();
  ProtectionOracle(const ProtectionOracle&) = delete;
  ProtectionOracle& operator=(const ProtectionOracle&) = delete;
  bool search(Grade l, const TypePtr& a, int depth);

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// All types derivable for `t` by bounded search over the typing rules of an
// ungraded calculus. Type parameters that the rules leave free (the other
// summand of an injection, the target of abort) are drawn from `pool`.
std::vector<TypePtr> typing_search(const GradeAlgebra& alg, calculus calc, const Context& ctx,
                                   const TermPtr& t, int depth = default_typing_depth,
                                   const std::vector<TypePtr>& pool = {});

// Graded variant: all (grade, type) pairs derivable for `t` in the
// graded-judgement calculus, searching the declarative rules including full
// subsumption at every node.
std::vector<std::pair<Grade, TypePtr>> typing_search_gmcce(const GradeAlgebra& alg,
                                                           const Context& ctx, const TermPtr& t,
                                                           int depth = default_typing_depth,
                                                           const std::vector<TypePtr>& pool = {});

// Exhaustive enumeration of all types of tree depth <= depth over leaves
// {Unit} with products, functions and the modal constructor at every grade.
// Subtrees are shared, so protection queries over the result memoize well.
std::vector<TypePtr> enumerate_types(const GradeAlgebra& alg, int depth);

}  // namespace depcalc

#endif
