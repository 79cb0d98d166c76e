#include <sstream>

#include "depcalc/syntax.hpp"

namespace depcalc {

namespace {

// type precedence: 0 fun, 1 sum, 2 prod, 3 modal/base
void print_ty(std::ostream& os, const TypePtr& t, const GradeAlgebra& alg, int level) {
  auto paren = [&](int need, auto body) {
    if (level > need) os << "(";
    body();
    if (level > need) os << ")";
  };
  switch (t->kind) {
    case type_kind::unit: os << "Unit"; return;
    case type_kind::void_: os << "Void"; return;
    case type_kind::base: os << t->base_name; return;
    case type_kind::fun:
      paren(0, [&] {
        print_ty(os, t->left, alg, 1);
        os << " -> ";
        print_ty(os, t->right, alg, 0);
      });
      return;
    case type_kind::sum:
      paren(1, [&] {
        print_ty(os, t->left, alg, 1);
        os << " + ";
        print_ty(os, t->right, alg, 2);
      });
      return;
    case type_kind::prod:
      paren(2, [&] {
        print_ty(os, t->left, alg, 2);
        os << " * ";
        print_ty(os, t->right, alg, 3);
      });
      return;
    case type_kind::modal:
      paren(3, [&] {
        if (alg.kind() == algebra_kind::naturals && t->grade == Grade{1})
          os << "O ";
        else
          os << "S[" << alg.grade_name(t->grade) << "] ";
        print_ty(os, t->right, alg, 3);
      });
      return;
  }
}

struct NameScope {
  std::vector<std::string> names;

  bool in_scope(const std::string& n) const {
    for (const auto& s : names)
      if (s == n) return true;
    return false;
  }

  std::string fresh(const std::string& hint) {
    std::string base = hint.empty() ? "x" : hint;
    if (is_reserved_word(base)) base += "'";
    std::string cand = base;
    int i = 0;
    while (in_scope(cand)) {
      cand = base + "'";
      if (i > 0) cand += std::to_string(i);
      i++;
    }
    return cand;
  }
};

// term precedence: 0 open (lam/bind/case ok), 1 application, 2 prefix operand
class TermPrinter {
public:
  TermPrinter(const GradeAlgebra& alg, const Context& ctx) : alg_(alg) {
    for (const auto& e : ctx.entries()) scope_.names.push_back(e.name);
  }

  void print(std::ostream& os, const TermPtr& t, int level) {
    switch (t->kind) {
      case term_kind::var: {
        std::size_t n = scope_.names.size();
        if (t->index >= 0 && static_cast<std::size_t>(t->index) < n)
          os << scope_.names[n - 1 - static_cast<std::size_t>(t->index)];
        else
          os << "#" << t->index;  // dangling index; not reparseable
        return;
      }
      case term_kind::unit: os << "unit"; return;
      case term_kind::lam: {
        open(os, t, level, [&] {
          std::string n = scope_.fresh(t->hint);
          os << "\\" << n;
          if (t->annot) {
            os << ":";
            print_ty(os, *t->annot, alg_, 0);
          }
          os << ". ";
          scope_.names.push_back(n);
          print(os, t->a, 0);
          scope_.names.pop_back();
        });
        return;
      }
      case term_kind::bind: {
        open(os, t, level, [&] {
          std::string n = scope_.fresh(t->hint);
          os << "bind[" << alg_.grade_name(t->g1) << "] " << n << " = ";
          print(os, t->a, 0);
          os << " in ";
          scope_.names.push_back(n);
          print(os, t->b, 0);
          scope_.names.pop_back();
        });
        return;
      }
      case term_kind::case_: {
        open(os, t, level, [&] {
          os << "case ";
          print(os, t->a, 0);
          os << " of ";
          print(os, t->b, 0);
          os << " ; ";
          print(os, t->c, 0);
        });
        return;
      }
      case term_kind::app: {
        if (level > 1) {
          os << "(";
          print(os, t, 0);
          os << ")";
          return;
        }
        print(os, t->a, 1);
        os << " ";
        print(os, t->b, 2);
        return;
      }
      case term_kind::pair: {
        os << "(";
        print(os, t->a, 0);
        os << ", ";
        print(os, t->b, 0);
        os << ")";
        return;
      }
      case term_kind::proj: prefix(os, t, level, t->index == 1 ? "proj1" : "proj2"); return;
      case term_kind::inj: prefix(os, t, level, t->index == 1 ? "inj1" : "inj2"); return;
      case term_kind::abort: prefix(os, t, level, "abort"); return;
      case term_kind::ret: prefix(os, t, level, "ret"); return;
      case term_kind::extr: prefix(os, t, level, "extr"); return;
      case term_kind::next: prefix(os, t, level, "next"); return;
      case term_kind::prev: prefix(os, t, level, "prev"); return;
      case term_kind::lift: prefix(os, t, level, "lift[" + alg_.grade_name(t->g1) + "]"); return;
      case term_kind::eta: prefix(os, t, level, "eta[" + alg_.grade_name(t->g1) + "]"); return;
      case term_kind::split: prefix(os, t, level, "split[" + alg_.grade_name(t->g1) + "]"); return;
      case term_kind::merge: prefix(os, t, level, "merge[" + alg_.grade_name(t->g1) + "]"); return;
      case term_kind::join:
        prefix(os, t, level, "join[" + alg_.grade_name(t->g1) + "," + alg_.grade_name(t->g2) + "]");
        return;
      case term_kind::fork:
        prefix(os, t, level, "fork[" + alg_.grade_name(t->g1) + "," + alg_.grade_name(t->g2) + "]");
        return;
      case term_kind::up:
        prefix(os, t, level, "up[" + alg_.grade_name(t->g1) + "," + alg_.grade_name(t->g2) + "]");
        return;
    }
  }

private:
  template <typename F>
  void open(std::ostream& os, const TermPtr&, int level, F body) {
    if (level > 0) os << "(";
    body();
    if (level > 0) os << ")";
  }

  void prefix(std::ostream& os, const TermPtr& t, int level, const std::string& op) {
    if (level > 2) {
      os << "(";
      prefix(os, t, 0, op);
      os << ")";
      return;
    }
    os << op << " ";
    print(os, t->a, 2);
  }

  const GradeAlgebra& alg_;
  NameScope scope_;
};

}  // namespace

std::string print_term(const TermPtr& t, const GradeAlgebra& alg, const Context& ctx) {
  std::ostringstream os;
  TermPrinter p(alg, ctx);
  p.print(os, t, 0);
  return os.str();
}

std::string print_type(const TypePtr& t, const GradeAlgebra& alg) {
  std::ostringstream os;
  print_ty(os, t, alg, 0);
  return os.str();
}

}  // namespace depcalc
