#ifndef DEPCALC_SYNTAX_HPP
#define DEPCALC_SYNTAX_HPP

#include <string>

#include "depcalc/ast.hpp"

namespace depcalc {

// Parses a term in the concrete grammar (see README). Free identifiers are
// resolved against `ctx`; anything unresolved is an UnboundVariable error.
// Grade literals must name elements of `alg` (or be numerals over the
// naturals).
TermPtr parse_term(const std::string& source, const GradeAlgebra& alg,
                   const Context& ctx = Context(), const std::string& origin = "<input>");

TypePtr parse_type(const std::string& source, const GradeAlgebra& alg,
                   const std::string& origin = "<type>");

// A term file: zero or more `var x : T ;` / `var x :^g T ;` declarations
// followed by one term. Declarations are innermost-last.
struct TermFile {
  Context ctx;
  TermPtr term;
};
TermFile parse_term_file(const std::string& source, const GradeAlgebra& alg,
                         const std::string& origin = "<input>");
TermFile load_term_file(const std::string& path, const GradeAlgebra& alg);

// Printing inverts parsing up to alpha equality: parse(print(t)) == t.
// Free variables are printed via `ctx` names when available.
std::string print_term(const TermPtr& t, const GradeAlgebra& alg, const Context& ctx = Context());
std::string print_type(const TypePtr& t, const GradeAlgebra& alg);

// Keyword in the concrete grammar (binders must avoid these when printing).
bool is_reserved_word(const std::string& s);

}  // namespace depcalc

#endif
