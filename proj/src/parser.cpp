#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "depcalc/syntax.hpp"

namespace depcalc {

namespace {

enum class tok_kind { ident, number, sym, eof };

struct Token {
  tok_kind kind;
  std::string text;
  int line, col;
};

const std::unordered_set<std::string> keywords = {
    "unit", "true",  "false", "proj1", "proj2", "inj1", "inj2", "case", "of",
    "abort", "ret",  "extr",  "lift",  "join",  "fork", "up",   "eta",  "bind",
    "in",    "next", "prev",  "split", "merge", "var",  "Unit", "Void", "Bool",
    "S",     "O"};

class Lexer {
public:
  Lexer(const std::string& src, std::string origin) : src_(src), origin_(std::move(origin)) {
    advance();
  }

  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }
  bool at(const std::string& s) const {
    return (cur_.kind == tok_kind::sym || cur_.kind == tok_kind::ident) && cur_.text == s;
  }
  bool accept(const std::string& s) {
    if (!at(s)) return false;
    advance();
    return true;
  }
  void expect(const std::string& s) {
    if (!accept(s)) err("expected '" + s + "', found '" + cur_.text + "'");
  }
  [[noreturn]] void err(const std::string& msg) const {
    fail(errc::syntax_error, msg, where(cur_));
  }
  std::string where(const Token& t) const {
    return origin_ + ":" + std::to_string(t.line) + ":" + std::to_string(t.col);
  }

private:
  void advance() {
    skip_ws();
    cur_.line = line_;
    cur_.col = col_;
    if (pos_ >= src_.size()) {
      cur_ = {tok_kind::eof, "<eof>", line_, col_};
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' || src_[pos_] == '\'')) {
        s.push_back(src_[pos_]);
        bump();
      }
      cur_ = {tok_kind::ident, s, cur_.line, cur_.col};
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string s;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        s.push_back(src_[pos_]);
        bump();
      }
      cur_ = {tok_kind::number, s, cur_.line, cur_.col};
      return;
    }
    // multi-char symbols first
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      bump(); bump();
      cur_ = {tok_kind::sym, "->", cur_.line, cur_.col};
      return;
    }
    if (c == ':' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '^') {
      bump(); bump();
      cur_ = {tok_kind::sym, ":^", cur_.line, cur_.col};
      return;
    }
    bump();
    cur_ = {tok_kind::sym, std::string(1, c), cur_.line, cur_.col};
  }

  void skip_ws() {
    for (;;) {
      while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) bump();
      if (pos_ + 1 < src_.size() && src_[pos_] == '-' && src_[pos_ + 1] == '-') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
        continue;
      }
      break;
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      line_++;
      col_ = 1;
    } else {
      col_++;
    }
    pos_++;
  }

  const std::string& src_;
  std::string origin_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token cur_{tok_kind::eof, "", 1, 1};
};

class Parser {
public:
  Parser(const std::string& src, const GradeAlgebra& alg, std::string origin)
      : lex_(src, std::move(origin)), alg_(alg) {}

  TermFile file() {
    TermFile f;
    while (lex_.at("var")) {
      lex_.take();
      std::string name = ident("variable name");
      if (lex_.accept(":^")) {
        Grade g = grade();
        TypePtr ty = type();
        f.ctx.push(name, g, ty);
      } else {
        lex_.expect(":");
        f.ctx.push(name, type());
      }
      lex_.expect(";");
    }
    names_.clear();
    for (const auto& e : f.ctx.entries()) names_.push_back(e.name);
    f.term = term();
    expect_eof();
    return f;
  }

  TermPtr whole_term(const Context& ctx) {
    for (const auto& e : ctx.entries()) names_.push_back(e.name);
    TermPtr t = term();
    expect_eof();
    return t;
  }

  TypePtr whole_type() {
    TypePtr t = type();
    expect_eof();
    return t;
  }

private:
  void expect_eof() {
    if (lex_.peek().kind != tok_kind::eof)
      lex_.err("unexpected trailing input '" + lex_.peek().text + "'");
  }

  std::string ident(const char* what) {
    if (lex_.peek().kind != tok_kind::ident || keywords.count(lex_.peek().text))
      lex_.err(std::string("expected ") + what);
    return lex_.take().text;
  }

  Grade grade() {
    Token t = lex_.peek();
    if (t.kind != tok_kind::ident && t.kind != tok_kind::number)
      lex_.err("expected a grade");
    lex_.take();
    try {
      return alg_.parse_grade(t.text);
    } catch (const error& e) {
      fail(e.code(), e.what(), lex_.where(t));
    }
  }

  // ---- types -------------------------------------------------------------

  TypePtr type() {
    TypePtr lhs = sum_type();
    if (lex_.accept("->")) return t_fun(lhs, type());
    return lhs;
  }

  TypePtr sum_type() {
    TypePtr lhs = prod_type();
    while (lex_.accept("+")) lhs = t_sum(lhs, prod_type());
    return lhs;
  }

  TypePtr prod_type() {
    TypePtr lhs = modal_type();
    while (lex_.accept("*")) lhs = t_prod(lhs, modal_type());
    return lhs;
  }

  TypePtr modal_type() {
    if (lex_.at("S")) {
      lex_.take();
      lex_.expect("[");
      Grade g = grade();
      lex_.expect("]");
      return t_modal(g, modal_type());
    }
    if (lex_.at("O")) {
      Token t = lex_.take();
      if (alg_.kind() != algebra_kind::naturals)
        fail(errc::unknown_grade, "the circle type needs the naturals algebra", lex_.where(t));
      return t_modal(Grade{1}, modal_type());
    }
    return base_type();
  }

  TypePtr base_type() {
    Token t = lex_.peek();
    if (lex_.accept("Unit")) return t_unit();
    if (lex_.accept("Void")) return t_void();
    if (lex_.accept("Bool")) return t_bool();
    if (lex_.accept("(")) {
      TypePtr inner = type();
      lex_.expect(")");
      return inner;
    }
    if (t.kind == tok_kind::ident && !keywords.count(t.text)) {
      lex_.take();
      return t_base(t.text);
    }
    lex_.err("expected a type, found '" + t.text + "'");
  }

  // ---- terms -------------------------------------------------------------

  TermPtr term() {
    Token t = lex_.peek();
    if (lex_.accept("\\")) {
      std::string name = ident("binder name");
      std::optional<TypePtr> annot;
      if (lex_.accept(":")) annot = type();
      lex_.expect(".");
      names_.push_back(name);
      TermPtr body = term();
      names_.pop_back();
      return pos(mk::lam(name, annot, body), t);
    }
    if (lex_.accept("bind")) {
      lex_.expect("[");
      Grade l = grade();
      lex_.expect("]");
      std::string name = ident("binder name");
      lex_.expect("=");
      TermPtr bound = term();
      lex_.expect("in");
      names_.push_back(name);
      TermPtr body = term();
      names_.pop_back();
      return pos(mk::bind(l, name, bound, body), t);
    }
    if (lex_.accept("case")) {
      TermPtr scrut = term();
      lex_.expect("of");
      TermPtr b1 = term();
      lex_.expect(";");
      TermPtr b2 = term();
      return pos(mk::case_(scrut, b1, b2), t);
    }
    return app_term();
  }

  TermPtr app_term() {
    TermPtr head = prefix_term();
    for (;;) {
      if (starts_prefix_term()) {
        head = mk::app(head, prefix_term());
      } else {
        return head;
      }
    }
  }

  bool starts_prefix_term() {
    const Token& t = lex_.peek();
    if (t.kind == tok_kind::eof) return false;
    if (t.kind == tok_kind::ident) {
      static const std::unordered_set<std::string> stops = {"of", "in", "var"};
      if (stops.count(t.text)) return false;
      if (t.text == "Unit" || t.text == "Void" || t.text == "Bool" || t.text == "S" || t.text == "O")
        return false;
      return true;
    }
    return t.text == "(";
  }

  TermPtr prefix_term() {
    Token t = lex_.peek();
    auto unary = [&](auto make) {
      lex_.take();
      return pos(make(prefix_term()), t);
    };
    auto graded1 = [&](auto make) {
      lex_.take();
      lex_.expect("[");
      Grade g = grade();
      lex_.expect("]");
      return pos(make(g, prefix_term()), t);
    };
    auto graded2 = [&](auto make) {
      lex_.take();
      lex_.expect("[");
      Grade g1 = grade();
      lex_.expect(",");
      Grade g2 = grade();
      lex_.expect("]");
      return pos(make(g1, g2, prefix_term()), t);
    };
    if (lex_.at("proj1")) return unary([](TermPtr a) { return mk::proj(1, a); });
    if (lex_.at("proj2")) return unary([](TermPtr a) { return mk::proj(2, a); });
    if (lex_.at("inj1")) return unary([](TermPtr a) { return mk::inj(1, a); });
    if (lex_.at("inj2")) return unary([](TermPtr a) { return mk::inj(2, a); });
    if (lex_.at("abort")) return unary([](TermPtr a) { return mk::abort(a); });
    if (lex_.at("ret")) return unary([](TermPtr a) { return mk::ret(a); });
    if (lex_.at("extr")) return unary([](TermPtr a) { return mk::extr(a); });
    if (lex_.at("next")) return unary([](TermPtr a) { return mk::next(a); });
    if (lex_.at("prev")) return unary([](TermPtr a) { return mk::prev(a); });
    if (lex_.at("lift")) return graded1([](Grade g, TermPtr a) { return mk::lift(g, a); });
    if (lex_.at("eta")) return graded1([](Grade g, TermPtr a) { return mk::eta(g, a); });
    if (lex_.at("split")) return graded1([](Grade g, TermPtr a) { return mk::split(g, a); });
    if (lex_.at("merge")) return graded1([](Grade g, TermPtr a) { return mk::merge(g, a); });
    if (lex_.at("join")) return graded2([](Grade a_, Grade b_, TermPtr x) { return mk::join(a_, b_, x); });
    if (lex_.at("fork")) return graded2([](Grade a_, Grade b_, TermPtr x) { return mk::fork(a_, b_, x); });
    if (lex_.at("up")) return graded2([](Grade a_, Grade b_, TermPtr x) { return mk::up(a_, b_, x); });
    return atom();
  }

  TermPtr atom() {
    Token t = lex_.peek();
    if (lex_.accept("unit")) return pos(mk::unit(), t);
    if (lex_.accept("true")) return pos(mk::tru(), t);
    if (lex_.accept("false")) return pos(mk::fls(), t);
    if (lex_.accept("(")) {
      TermPtr first = term();
      if (lex_.accept(",")) {
        TermPtr second = term();
        lex_.expect(")");
        return pos(mk::pair(first, second), t);
      }
      lex_.expect(")");
      return first;
    }
    if (t.kind == tok_kind::ident && !keywords.count(t.text)) {
      lex_.take();
      for (std::size_t i = 0; i < names_.size(); i++) {
        std::size_t j = names_.size() - 1 - i;
        if (names_[j] == t.text) return pos(mk::var(static_cast<int>(i), t.text), t);
      }
      fail(errc::unbound_variable, "unbound variable '" + t.text + "'", lex_.where(t));
    }
    lex_.err("expected a term, found '" + t.text + "'");
  }

  TermPtr pos(TermPtr t, const Token& at) {
    auto n = std::make_shared<Term>(*t);
    n->line = at.line;
    n->col = at.col;
    return n;
  }

  Lexer lex_;
  const GradeAlgebra& alg_;
  std::vector<std::string> names_;
};

}  // namespace

TermPtr parse_term(const std::string& source, const GradeAlgebra& alg, const Context& ctx,
                   const std::string& origin) {
  Parser p(source, alg, origin);
  return p.whole_term(ctx);
}

TypePtr parse_type(const std::string& source, const GradeAlgebra& alg, const std::string& origin) {
  Parser p(source, alg, origin);
  return p.whole_type();
}

TermFile parse_term_file(const std::string& source, const GradeAlgebra& alg,
                         const std::string& origin) {
  Parser p(source, alg, origin);
  return p.file();
}

TermFile load_term_file(const std::string& path, const GradeAlgebra& alg) {
  std::ifstream in(path);
  if (!in) fail(errc::io_error, "cannot open term file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_term_file(ss.str(), alg, path);
}

bool is_reserved_word(const std::string& s) { return keywords.count(s) != 0; }

}  // namespace depcalc
