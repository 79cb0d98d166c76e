#ifndef DEPCALC_ALGEBRA_HPP
#define DEPCALC_ALGEBRA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "depcalc/error.hpp"

namespace depcalc {

// An element of one grade algebra. For finite algebras `v` is the index of
// the element in the declaration order; for the naturals it is the number
// itself. A Grade is only meaningful relative to the algebra it came from.
struct Grade {
  std::uint32_t v = 0;
  friend bool operator==(Grade a, Grade b) { return a.v == b.v; }
  friend bool operator!=(Grade a, Grade b) { return a.v != b.v; }
};

enum class algebra_kind { finite_monoid, finite_join_semilattice, naturals };

// One violated law together with a witness, as produced by validate().
struct law_violation {
  std::string law;      // e.g. "associativity"
  std::string witness;  // e.g. "(a,b,c)"
};

// A preordered monoid, a bounded join-semilattice given by explicit tables,
// or the built-in naturals (N,+,0) with the discrete order. Immutable after
// construction; validate() checks every law by exhaustive enumeration for
// the finite kinds and trusts the built-in laws for the naturals.
class GradeAlgebra {
public:
  static GradeAlgebra naturals();
  // op_table and leq_table are n*n row-major tables over element indices.
  static GradeAlgebra finite_monoid(std::vector<std::string> elements,
                                    std::vector<std::vector<std::uint32_t>> op_table,
                                    std::uint32_t unit,
                                    std::vector<std::vector<bool>> leq_table);
  static GradeAlgebra finite_join_semilattice(std::vector<std::string> elements,
                                              std::vector<std::vector<std::uint32_t>> join_table,
                                              std::uint32_t bottom,
                                              std::vector<std::vector<bool>> leq_table);

  // The three structures the library ships with: the two-point security
  // lattice Public < Secret, the six-point diamond lattice, and (N,+,0).
  static GradeAlgebra l2();
  static GradeAlgebra diamond();
  static GradeAlgebra builtin(const std::string& name);  // "l2" | "diamond" | "nat"

  // Parses the declarative definition format (see README). Reflexive leq
  // pairs are implied; every other pair must be listed.
  static GradeAlgebra from_file(const std::string& path);
  static GradeAlgebra from_text(const std::string& text, const std::string& origin = "<algebra>");

  algebra_kind kind() const { return kind_; }
  bool is_semilattice() const { return kind_ == algebra_kind::finite_join_semilattice; }
  bool is_finite() const { return kind_ != algebra_kind::naturals; }
  const std::string& name() const { return name_; }

  // Empty iff every law holds. MalformedTable problems (wrong dimensions,
  // out-of-range entries) are reported the same way.
  std::vector<law_violation> validate() const;

  Grade unit() const { return unit_; }
  Grade bottom() const;  // semilattices only
  Grade op(Grade a, Grade b) const;
  bool leq(Grade a, Grade b) const;

  std::size_t size() const { return elements_.size(); }
  std::vector<Grade> elements() const;  // finite algebras only
  std::optional<Grade> grade_by_name(const std::string& name) const;
  Grade parse_grade(const std::string& token) const;  // name, or number for naturals
  std::string grade_name(Grade g) const;

private:
  GradeAlgebra() = default;
  void check_member(Grade g, const char* who) const;

  algebra_kind kind_ = algebra_kind::naturals;
  std::string name_ = "nat";
  std::vector<std::string> elements_;
  std::vector<std::vector<std::uint32_t>> op_;
  std::vector<std::vector<bool>> leq_;
  Grade unit_{0};
};

}  // namespace depcalc

#endif
