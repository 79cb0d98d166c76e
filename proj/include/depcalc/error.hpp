#ifndef DEPCALC_ERROR_HPP
#define DEPCALC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace depcalc {

enum class errc {
  syntax_error,
  unknown_grade,
  unbound_variable,
  foreign_grade,
  malformed_table,
  constructor_not_in_calculus,
  type_mismatch,
  grade_not_leq,
  missing_annotation,
  requires_semilattice,
  infinite_carrier,
  protection_failure,
  not_protected,
  time_mismatch,
  fuel_exhausted,
  stuck_term,
  ill_typed,
  no_canonical,
  precondition_failure,
  io_error,
  usage_error,
};

const char* errc_name(errc c);

// Single exception type for the whole library. The code distinguishes the
// failure classes the checkers and evaluators can report; `where` carries a
// source position ("line:col") when one is known.
class error : public std::runtime_error {
public:
  error(errc code, std::string message, std::string where = {})
      : std::runtime_error(where.empty() ? message : where + ": " + message),
        code_(code),
        where_(std::move(where)) {}

  errc code() const { return code_; }
  const std::string& where() const { return where_; }

private:
  errc code_;
  std::string where_;
};

[[noreturn]] inline void fail(errc code, std::string message, std::string where = {}) {
  throw error(code, std::move(message), std::move(where));
}

}  // namespace depcalc

#endif
