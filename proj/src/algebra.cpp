#include "depcalc/algebra.hpp"

#include <fstream>
#include <sstream>

namespace depcalc {

const char* errc_name(errc c) {
  switch (c) {
    case errc::syntax_error: return "SyntaxError";
    case errc::unknown_grade: return "UnknownGrade";
    case errc::unbound_variable: return "UnboundVariable";
    case errc::foreign_grade: return "ForeignGrade";
    case errc::malformed_table: return "MalformedTable";
    case errc::constructor_not_in_calculus: return "ConstructorNotInCalculus";
    case errc::type_mismatch: return "TypeMismatch";
    case errc::grade_not_leq: return "GradeNotLeq";
    case errc::missing_annotation: return "MissingAnnotation";
    case errc::requires_semilattice: return "RequiresSemilattice";
    case errc::infinite_carrier: return "InfiniteCarrier";
    case errc::protection_failure: return "ProtectionFailure";
    case errc::not_protected: return "NotProtected";
    case errc::time_mismatch: return "TimeMismatch";
    case errc::fuel_exhausted: return "FuelExhausted";
    case errc::stuck_term: return "Stuck";
    case errc::ill_typed: return "IllTyped";
    case errc::no_canonical: return "NoCanonical";
    case errc::precondition_failure: return "PreconditionFailure";
    case errc::io_error: return "IoError";
    case errc::usage_error: return "UsageError";
  }
  return "Error";
}

GradeAlgebra GradeAlgebra::naturals() {
  GradeAlgebra a;
  a.kind_ = algebra_kind::naturals;
  a.name_ = "nat";
  a.unit_ = Grade{0};
  return a;
}

GradeAlgebra GradeAlgebra::finite_monoid(std::vector<std::string> elements,
                                         std::vector<std::vector<std::uint32_t>> op_table,
                                         std::uint32_t unit,
                                         std::vector<std::vector<bool>> leq_table) {
  GradeAlgebra a;
  a.kind_ = algebra_kind::finite_monoid;
  a.name_ = "monoid";
  a.elements_ = std::move(elements);
  a.op_ = std::move(op_table);
  a.leq_ = std::move(leq_table);
  a.unit_ = Grade{unit};
  return a;
}

GradeAlgebra GradeAlgebra::finite_join_semilattice(std::vector<std::string> elements,
                                                   std::vector<std::vector<std::uint32_t>> join_table,
                                                   std::uint32_t bottom,
                                                   std::vector<std::vector<bool>> leq_table) {
  GradeAlgebra a = finite_monoid(std::move(elements), std::move(join_table), bottom, std::move(leq_table));
  a.kind_ = algebra_kind::finite_join_semilattice;
  a.name_ = "semilattice";
  return a;
}

GradeAlgebra GradeAlgebra::l2() {
  // Public < Secret, join = max.
  GradeAlgebra a = finite_join_semilattice(
      {"Public", "Secret"},
      {{0, 1}, {1, 1}},
      0,
      {{true, true}, {false, true}});
  a.name_ = "l2";
  return a;
}

GradeAlgebra GradeAlgebra::diamond() {
  // bot < l11 < l21 < top, bot < l12 < l22 < top, l21,l22 < l3 < top,
  // and l11 v l12 = l3.
  // Indices: 0 bot, 1 l11, 2 l12, 3 l21, 4 l22, 5 l3, 6 top.
  const int n = 7;
  std::vector<std::string> names = {"bot", "l11", "l12", "l21", "l22", "l3", "top"};
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  auto le = [&](int a_, int b_) { leq[a_][b_] = true; };
  for (int i = 0; i < n; i++) le(i, i);
  for (int i = 1; i < n; i++) le(0, i);
  for (int i = 0; i < n; i++) le(i, 6);
  le(1, 3); le(2, 4);        // l11 < l21, l12 < l22
  le(3, 5); le(4, 5);        // l21, l22 < l3
  le(1, 5); le(2, 5);        // transitive closure through l21/l22
  std::vector<std::vector<std::uint32_t>> join(n, std::vector<std::uint32_t>(n, 0));
  for (int i = 0; i < n; i++) {
    for (int j = 0; j < n; j++) {
      // least upper bound by scan; total order inside each chain plus l3/top caps.
      int best = 6;
      for (int k = 0; k < n; k++) {
        if (leq[i][k] && leq[j][k] && leq[k][best]) best = k;
      }
      join[i][j] = static_cast<std::uint32_t>(best);
    }
  }
  GradeAlgebra a = finite_join_semilattice(std::move(names), std::move(join), 0, std::move(leq));
  a.name_ = "diamond";
  return a;
}

GradeAlgebra GradeAlgebra::builtin(const std::string& name) {
  if (name == "l2") return l2();
  if (name == "diamond") return diamond();
  if (name == "nat") return naturals();
  fail(errc::usage_error, "unknown built-in algebra '" + name + "' (expected l2, diamond or nat)");
}

void GradeAlgebra::check_member(Grade g, const char* who) const {
  if (kind_ == algebra_kind::naturals) return;
  if (g.v >= elements_.size())
    fail(errc::foreign_grade, std::string(who) + ": grade #" + std::to_string(g.v) +
                                  " is not an element of algebra '" + name_ + "'");
}

Grade GradeAlgebra::op(Grade a, Grade b) const {
  if (kind_ == algebra_kind::naturals) return Grade{a.v + b.v};
  check_member(a, "op");
  check_member(b, "op");
  return Grade{op_[a.v][b.v]};
}

bool GradeAlgebra::leq(Grade a, Grade b) const {
  if (kind_ == algebra_kind::naturals) return a.v == b.v;  // discrete order
  check_member(a, "leq");
  check_member(b, "leq");
  return leq_[a.v][b.v];
}

Grade GradeAlgebra::bottom() const {
  if (!is_semilattice())
    fail(errc::requires_semilattice, "algebra '" + name_ + "' has no bottom element");
  return unit_;
}

std::vector<Grade> GradeAlgebra::elements() const {
  if (kind_ == algebra_kind::naturals)
    fail(errc::infinite_carrier, "the naturals cannot be enumerated");
  std::vector<Grade> out;
  out.reserve(elements_.size());
  for (std::uint32_t i = 0; i < elements_.size(); i++) out.push_back(Grade{i});
  return out;
}

std::optional<Grade> GradeAlgebra::grade_by_name(const std::string& name) const {
  for (std::uint32_t i = 0; i < elements_.size(); i++)
    if (elements_[i] == name) return Grade{i};
  return std::nullopt;
}

Grade GradeAlgebra::parse_grade(const std::string& token) const {
  if (kind_ == algebra_kind::naturals) {
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
      fail(errc::unknown_grade, "'" + token + "' is not a natural number");
    return Grade{static_cast<std::uint32_t>(std::stoul(token))};
  }
  if (auto g = grade_by_name(token)) return *g;
  fail(errc::unknown_grade, "'" + token + "' is not an element of algebra '" + name_ + "'");
}

std::string GradeAlgebra::grade_name(Grade g) const {
  if (kind_ == algebra_kind::naturals) return std::to_string(g.v);
  check_member(g, "grade_name");
  return elements_[g.v];
}

std::vector<law_violation> GradeAlgebra::validate() const {
  std::vector<law_violation> out;
  if (kind_ == algebra_kind::naturals) return out;  // built-in laws of +, 0, =

  const std::size_t n = elements_.size();
  auto nm = [&](std::uint32_t i) { return elements_[i]; };

  if (n == 0) {
    out.push_back({"nonempty-carrier", "no elements declared"});
    return out;
  }
  if (op_.size() != n || leq_.size() != n) {
    out.push_back({"malformed-table", "table row count does not match element count"});
    return out;
  }
  for (std::size_t i = 0; i < n; i++) {
    if (op_[i].size() != n || leq_[i].size() != n) {
      out.push_back({"malformed-table", "row for " + nm((std::uint32_t)i) + " has wrong width"});
      return out;
    }
    for (std::size_t j = 0; j < n; j++) {
      if (op_[i][j] >= n) {
        out.push_back({"malformed-table",
                       "op(" + nm((std::uint32_t)i) + "," + nm((std::uint32_t)j) + ") references undeclared element"});
        return out;
      }
    }
  }
  if (unit_.v >= n) {
    out.push_back({"malformed-table", "unit references undeclared element"});
    return out;
  }

  for (std::size_t a = 0; a < n; a++)
    for (std::size_t b = 0; b < n; b++)
      for (std::size_t c = 0; c < n; c++)
        if (op_[op_[a][b]][c] != op_[a][op_[b][c]]) {
          out.push_back({"associativity", "(" + nm((std::uint32_t)a) + "," + nm((std::uint32_t)b) + "," + nm((std::uint32_t)c) + ")"});
          goto assoc_done;
        }
assoc_done:
  for (std::size_t a = 0; a < n; a++) {
    if (op_[unit_.v][a] != a || op_[a][unit_.v] != a) {
      out.push_back({"unit-identity", nm((std::uint32_t)a)});
      break;
    }
  }
  for (std::size_t a = 0; a < n; a++) {
    if (!leq_[a][a]) {
      out.push_back({"reflexivity", nm((std::uint32_t)a)});
      break;
    }
  }
  for (std::size_t a = 0; a < n; a++)
    for (std::size_t b = 0; b < n; b++)
      for (std::size_t c = 0; c < n; c++)
        if (leq_[a][b] && leq_[b][c] && !leq_[a][c]) {
          out.push_back({"transitivity", "(" + nm((std::uint32_t)a) + "," + nm((std::uint32_t)b) + "," + nm((std::uint32_t)c) + ")"});
          goto trans_done;
        }
trans_done:
  // compatibility of the order with the operation
  for (std::size_t a = 0; a < n; a++)
    for (std::size_t a2 = 0; a2 < n; a2++) {
      if (!leq_[a][a2]) continue;
      for (std::size_t b = 0; b < n; b++)
        for (std::size_t b2 = 0; b2 < n; b2++) {
          if (!leq_[b][b2]) continue;
          if (!leq_[op_[a][b]][op_[a2][b2]]) {
            out.push_back({"monotonicity",
                           "(" + nm((std::uint32_t)a) + "<=" + nm((std::uint32_t)a2) + ", " + nm((std::uint32_t)b) + "<=" + nm((std::uint32_t)b2) + ")"});
            goto mono_done;
          }
        }
    }
mono_done:

  if (kind_ == algebra_kind::finite_join_semilattice) {
    for (std::size_t a = 0; a < n; a++)
      if (op_[a][a] != a) {
        out.push_back({"idempotence", nm((std::uint32_t)a)});
        break;
      }
    for (std::size_t a = 0; a < n; a++)
      for (std::size_t b = 0; b < n; b++)
        if (op_[a][b] != op_[b][a]) {
          out.push_back({"commutativity", "(" + nm((std::uint32_t)a) + "," + nm((std::uint32_t)b) + ")"});
          goto comm_done;
        }
comm_done:
    for (std::size_t a = 0; a < n; a++)
      for (std::size_t b = 0; b < n; b++)
        if (leq_[a][b] != (op_[a][b] == b)) {
          out.push_back({"semilattice-order",
                         "leq(" + nm((std::uint32_t)a) + "," + nm((std::uint32_t)b) + ") disagrees with join"});
          goto order_done;
        }
order_done:
    for (std::size_t a = 0; a < n; a++)
      if (!leq_[unit_.v][a]) {
        out.push_back({"bottom-least", nm((std::uint32_t)a)});
        break;
      }
  }
  return out;
}

namespace {

std::vector<std::string> tokenize_line(const std::string& line) {
  std::vector<std::string> toks;
  std::string cur;
  for (std::size_t i = 0; i < line.size(); i++) {
    char c = line[i];
    if (c == '-' && i + 1 < line.size() && line[i + 1] == '-') break;  // comment
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) { toks.push_back(cur); cur.clear(); }
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) toks.push_back(cur);
  return toks;
}

}  // namespace

GradeAlgebra GradeAlgebra::from_text(const std::string& text, const std::string& origin) {
  std::string kind;
  std::vector<std::string> elements;
  std::string unit;
  std::vector<std::vector<std::string>> op_rows, leq_rows;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    auto toks = tokenize_line(line);
    if (toks.empty()) continue;
    auto where = origin + ":" + std::to_string(lineno);
    const std::string& head = toks[0];
    if (head == "kind" && toks.size() == 2) {
      kind = toks[1];
    } else if (head == "elements") {
      elements.assign(toks.begin() + 1, toks.end());
    } else if (head == "unit" && toks.size() == 2) {
      unit = toks[1];
    } else if (head == "op" && toks.size() == 4) {
      op_rows.push_back({toks[1], toks[2], toks[3]});
    } else if (head == "leq" && toks.size() == 3) {
      leq_rows.push_back({toks[1], toks[2]});
    } else {
      fail(errc::syntax_error, "unrecognized algebra directive '" + head + "'", where);
    }
  }

  if (kind == "naturals" || kind == "nat") return naturals();
  if (kind != "monoid" && kind != "semilattice")
    fail(errc::syntax_error, "algebra kind must be monoid, semilattice or naturals", origin);

  auto index_of = [&](const std::string& name) -> std::uint32_t {
    for (std::uint32_t i = 0; i < elements.size(); i++)
      if (elements[i] == name) return i;
    fail(errc::malformed_table, "'" + name + "' is not a declared element", origin);
  };

  if (elements.empty()) fail(errc::syntax_error, "algebra declares no elements", origin);
  if (unit.empty()) fail(errc::syntax_error, "algebra declares no unit", origin);

  const std::size_t n = elements.size();
  std::vector<std::vector<std::uint32_t>> op(n, std::vector<std::uint32_t>(n, 0));
  std::vector<std::vector<bool>> have(n, std::vector<bool>(n, false));
  for (auto& row : op_rows) {
    auto a = index_of(row[0]), b = index_of(row[1]), c = index_of(row[2]);
    op[a][b] = c;
    have[a][b] = true;
  }
  for (std::size_t a = 0; a < n; a++)
    for (std::size_t b = 0; b < n; b++)
      if (!have[a][b])
        fail(errc::malformed_table,
             "op(" + elements[a] + "," + elements[b] + ") is not defined", origin);

  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; a++) leq[a][a] = true;  // reflexivity implied
  for (auto& row : leq_rows) leq[index_of(row[0])][index_of(row[1])] = true;

  GradeAlgebra a = (kind == "semilattice")
                       ? finite_join_semilattice(elements, std::move(op), index_of(unit), std::move(leq))
                       : finite_monoid(elements, std::move(op), index_of(unit), std::move(leq));
  a.name_ = origin;
  return a;
}

GradeAlgebra GradeAlgebra::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_error, "cannot open algebra file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str(), path);
}

}  // namespace depcalc
