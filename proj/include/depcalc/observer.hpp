#ifndef DEPCALC_OBSERVER_HPP
#define DEPCALC_OBSERVER_HPP

#include "depcalc/dcc.hpp"

namespace depcalc {

// Semantic values of the presence-absence set model. `blank` is the one
// inhabitant of positions whose type collapses under the observer; closures
// are never compared directly, only applied.
enum class ovalue_kind { unit, inj, pair, closure, constant_fn, blank };

struct OValue;
using OValuePtr = std::shared_ptr<const OValue>;

struct OValue {
  ovalue_kind kind;
  int inj_index = 0;                 // inj
  OValuePtr a, b;                    // inj payload / pair components
  std::vector<OValuePtr> env;        // closure
  TermPtr fn;                        // closure: the lambda term
  TypePtr result_type;               // constant_fn: result collapses to this
};

OValuePtr ov_unit();
OValuePtr ov_inj(int i, OValuePtr v);
OValuePtr ov_pair(OValuePtr a, OValuePtr b);
OValuePtr ov_blank();

// Structural equality; comparing closures (either kind) is IllTyped.
bool ovalue_equal(const OValuePtr& a, const OValuePtr& b);
std::string ovalue_show(const OValuePtr& v);

// The canonical inhabitant of a type that the protection judgement
// guarantees to collapse under observer `level`. Sums, base types and Void
// have no canonical inhabitant: reaching one is NoCanonical, which signals a
// protection bug.
OValuePtr canonical(const GradeAlgebra& alg, Grade level, const TypePtr& type);

// Interprets a dependency-calculus term in the set model of the observer at
// `level`: visible modal layers are identity, invisible ones collapse to
// blank, and a blacked-out bind returns the canonical inhabitant of its
// result type. `env` matches `ctx` positionally. Lambdas met by the
// interpreter must carry annotations when their binder type matters for a
// nested bind (generated and translated terms always do).
OValuePtr interpret_dcce(const GradeAlgebra& alg, Grade level, const Context& ctx,
                         const std::vector<OValuePtr>& env, const TermPtr& t,
                         const TypePtr& expected = nullptr);

// Stage-zero interpreter for the staging calculus: everything under `next`
// is blacked out, the rest evaluates call-by-value.
OValuePtr interpret_stage0(const std::vector<OValuePtr>& env, const TermPtr& t);

// A noninterference trial and its cross-checks.
struct NiOutcome {
  bool pass = false;            // the two runs produced the same value
  bool observer_agrees = false; // the observer sees the same value on both
  bool adequacy_agrees = false; // observer matches the operational value
  std::string detail;
};

// Runs f a1 and f a2 (f : A -> Bool or A -> S[l'] Bool, with l protecting A
// and l not below l' resp. bottom), compares the values, and cross-checks
// the observer interpretation at l' (resp. bottom).
NiOutcome ni_check_dcce(const GradeAlgebra& alg, const TermPtr& f, const TermPtr& a1,
                        const TermPtr& a2, Grade l);

// Runs f b1 and f b2 (f :^0 O A -> Bool) through the erased-term normalizer
// and cross-checks the stage-zero interpreter.
NiOutcome ni_check_lcirc(const TermPtr& f, const TermPtr& b1, const TermPtr& b2);

}  // namespace depcalc

#endif
