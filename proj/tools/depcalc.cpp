// depcalc: batch front end for the graded dependency calculi workbench.
//
// Subcommands: check, translate, erase, eq, eval, ni, roundtrip, oracle,
// validate-algebra. Exit status: 0 success/pass, 1 checked failure (type
// error, NotEqual, noninterference violation), 2 usage or IO error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "depcalc/gen.hpp"
#include "depcalc/observer.hpp"
#include "depcalc/oracle.hpp"
#include "depcalc/rewrite.hpp"
#include "depcalc/staged.hpp"
#include "depcalc/syntax.hpp"
#include "depcalc/translate.hpp"

using json = nlohmann::json;
using namespace depcalc;

namespace {

struct Options {
  std::string algebra = "l2";
  std::string calc = "gmcc";
  bool as_json = false;
  std::size_t fuel = default_fuel;
  std::uint64_t seed = 1;
  int trials = 1000;
  std::string grade;  // judgement grade/time for the graded calculi
};

GradeAlgebra load_algebra_raw(const std::string& spec) {
  if (spec == "l2" || spec == "diamond" || spec == "nat") return GradeAlgebra::builtin(spec);
  return GradeAlgebra::from_file(spec);
}

// every command runs over a validated algebra
GradeAlgebra load_algebra(const std::string& spec) {
  GradeAlgebra alg = load_algebra_raw(spec);
  auto violations = alg.validate();
  if (!violations.empty())
    fail(errc::usage_error, "algebra '" + spec + "' violates " + violations.front().law +
                                " (witness " + violations.front().witness + ")");
  return alg;
}

calculus need_calc(const std::string& name) {
  auto c = calculus_by_name(name);
  if (!c) fail(errc::usage_error, "unknown calculus '" + name + "'");
  return *c;
}

void emit(const Options& opt, const json& j, const std::string& human) {
  if (opt.as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << human << "\n";
}

Grade judgement_grade(const Options& opt, const GradeAlgebra& alg, calculus c) {
  if (!opt.grade.empty()) return alg.parse_grade(opt.grade);
  if (c == calculus::lcirc) return Grade{0};
  return alg.unit();
}

int cmd_check(const Options& opt, const std::string& path) {
  GradeAlgebra alg = load_algebra(opt.algebra);
  calculus c = need_calc(opt.calc);
  if (c == calculus::lcirc && alg.kind() != algebra_kind::naturals)
    fail(errc::usage_error, "lcirc requires --algebra nat");
  TermFile f = load_term_file(path, alg);
  TypePtr ty;
  std::optional<Grade> g;
  switch (c) {
    case calculus::lcirc:
      g = judgement_grade(opt, alg, c);
      ty = infer_lcirc(f.ctx, f.term, *g);
      break;
    case calculus::gmcce:
      g = judgement_grade(opt, alg, c);
      ty = infer_gmcce(alg, f.ctx, f.term, *g);
      break;
    case calculus::dcc:
      ty = infer_dcc(alg, protection_mode::plain_dcc, f.ctx, f.term);
      break;
    case calculus::dcce:
      ty = infer_dcc(alg, protection_mode::extended_dcce, f.ctx, f.term);
      break;
    default:
      ty = infer_core(alg, c, f.ctx, f.term);
      break;
  }
  json j = {{"ok", true},
            {"calculus", opt.calc},
            {"type", print_type(ty, alg)},
            {"term", print_term(f.term, alg, f.ctx)}};
  std::string human = "|- " + print_term(f.term, alg, f.ctx) + " : " + print_type(ty, alg);
  if (g) {
    j["grade"] = alg.grade_name(*g);
    human = "|-^" + alg.grade_name(*g) + " " + print_term(f.term, alg, f.ctx) + " : " +
            print_type(ty, alg);
  }
  emit(opt, j, human);
  return 0;
}

int cmd_translate(const Options& opt, const std::string& from, const std::string& to,
                  const std::string& path) {
  GradeAlgebra alg = load_algebra(opt.algebra);
  calculus src = need_calc(from), dst = need_calc(to);
  TermFile f = load_term_file(path, alg);
  TermPtr out;
  std::string recheck;
  if ((src == calculus::gmcc || src == calculus::gmc || src == calculus::gcc) &&
      dst == calculus::dcce) {
    out = overline(alg, f.ctx, f.term);
    TypePtr ty = infer_dcc(alg, protection_mode::extended_dcce, f.ctx, out);
    recheck = print_type(ty, alg);
  } else if (src == calculus::dcce && dst == calculus::gmcc) {
    out = underline(alg, f.ctx, f.term);
    TypePtr ty = infer_core(alg, calculus::gmcc, f.ctx, out);
    recheck = print_type(ty, alg);
  } else if (src == calculus::gmcc && dst == calculus::gmcce) {
    out = tilde(alg, f.ctx, f.term);
    Context graded = grade_context(f.ctx, alg.bottom());
    TypePtr ty = infer_core(alg, calculus::gmcc, f.ctx, f.term);
    check_gmcce(alg, graded, out, alg.bottom(), ty);
    recheck = print_type(ty, alg) + " at grade " + alg.grade_name(alg.bottom());
  } else if (src == calculus::lcirc && dst == calculus::gmcce) {
    Grade n = judgement_grade(opt, alg, calculus::lcirc);
    out = hat(f.ctx, f.term, n);
    TypePtr ty = infer_lcirc(f.ctx, f.term, n);
    check_gmcce(alg, f.ctx, out, n, ty);
    recheck = print_type(ty, alg) + " at grade " + alg.grade_name(n);
  } else {
    fail(errc::usage_error,
         "unsupported translation " + from + " -> " + to +
             " (supported: gmcc->dcce, dcce->gmcc, gmcc->gmcce, lcirc->gmcce)");
  }
  emit(opt,
       json{{"ok", true}, {"term", print_term(out, alg, f.ctx)}, {"rechecked", recheck}},
       print_term(out, alg, f.ctx) + "\n-- rechecks at: " + recheck);
  return 0;
}

int cmd_erase(const Options& opt, const std::string& path) {
  GradeAlgebra alg = load_algebra(opt.algebra);
  TermFile f = load_term_file(path, alg);
  TermPtr e = erase(f.term);
  emit(opt, json{{"ok", true}, {"term", print_term(e, alg, f.ctx)}},
       print_term(e, alg, f.ctx));
  return 0;
}

int cmd_eq(const Options& opt, const std::string& path1, const std::string& path2) {
  GradeAlgebra alg = load_algebra(opt.algebra);
  calculus c = need_calc(opt.calc);
  TermFile f1 = load_term_file(path1, alg);
  TermFile f2 = load_term_file(path2, alg);
  TypePtr ty;
  std::optional<Grade> g;
  if (c == calculus::gmcce) {
    g = judgement_grade(opt, alg, c);
    ty = infer_gmcce(alg, f1.ctx, f1.term, *g);
    check_gmcce(alg, f1.ctx, f2.term, *g, ty);
  }
  EqualityResult r = decide_equal(alg, c, f1.term, f2.term, ty, g, opt.fuel);
  emit(opt, json{{"verdict", verdict_name(r.verdict)}, {"detail", r.detail}},
       std::string(verdict_name(r.verdict)) + " (" + r.detail + ")");
  return r.verdict == equality_verdict::not_equal ? 1 : 0;
}

int cmd_eval(const Options& opt, const std::string& path) {
  GradeAlgebra alg = load_algebra(opt.algebra);
  calculus c = need_calc(opt.calc);
  if (c != calculus::dcc && c != calculus::dcce)
    fail(errc::usage_error, "eval runs the dependency-calculus CBV semantics; use --calc dcce");
  TermFile f = load_term_file(path, alg);
  infer_dcc(alg,
            c == calculus::dcc ? protection_mode::plain_dcc : protection_mode::extended_dcce,
            f.ctx, f.term);
  if (!f.ctx.empty()) fail(errc::usage_error, "eval needs a closed term");
  TermPtr v = cbv_eval(alg, f.term, opt.fuel);
  emit(opt, json{{"ok", true}, {"value", print_term(v, alg)}}, print_term(v, alg));
  return 0;
}

void write_counterexample(const std::string& stem, const GradeAlgebra& alg, const TermPtr& f,
                          const TermPtr& a1, const TermPtr& a2, const json& report) {
  std::ofstream(stem + "_f.dep") << print_term(f, alg) << "\n";
  std::ofstream(stem + "_a1.dep") << print_term(a1, alg) << "\n";
  std::ofstream(stem + "_a2.dep") << print_term(a2, alg) << "\n";
  std::ofstream(stem + "_report.json") << report.dump(2) << "\n";
}

int cmd_ni(const Options& opt, const std::string& mode, const std::string& outdir) {
  GradeAlgebra alg = load_algebra(opt.algebra);
  TermGen gen(alg, opt.seed);
  int failures = 0, ran = 0;
  bool run_dcce = mode == "dcce" || mode == "both";
  bool run_lcirc = mode == "lcirc" || mode == "both";
  if (run_dcce && !alg.is_semilattice())
    fail(errc::usage_error, "dcce noninterference needs a semilattice algebra");

  if (run_dcce) {
    for (int i = 0; i < opt.trials; i++) {
      auto tr = gen.ni_dcce_triple(i % 2 == 0);
      NiOutcome r = ni_check_dcce(alg, tr.f, tr.a1, tr.a2, tr.l);
      ran++;
      if (!r.pass || !r.observer_agrees || !r.adequacy_agrees) {
        failures++;
        auto still = [&](const TermPtr& cand) {
          NiOutcome rr = ni_check_dcce(alg, cand, tr.a1, tr.a2, tr.l);
          return !rr.pass || !rr.observer_agrees || !rr.adequacy_agrees;
        };
        TermPtr small = shrink_term(tr.f, still);
        json report = {{"mode", "dcce"},
                       {"trial", i},
                       {"level", alg.grade_name(tr.l)},
                       {"detail", r.detail},
                       {"f", print_term(small, alg)}};
        std::filesystem::create_directories(outdir);
        write_counterexample(outdir + "/ni_dcce_" + std::to_string(i), alg, small, tr.a1, tr.a2,
                             report);
        std::cerr << "ni violation (dcce, trial " << i << "): " << r.detail << "\n";
      }
    }
  }
  if (run_lcirc) {
    GradeAlgebra nat = GradeAlgebra::naturals();
    TermGen lgen(nat, opt.seed + 1);
    for (int i = 0; i < opt.trials; i++) {
      auto tr = lgen.ni_lcirc_triple();
      NiOutcome r = ni_check_lcirc(tr.f, tr.b1, tr.b2);
      ran++;
      if (!r.pass || !r.observer_agrees || !r.adequacy_agrees) {
        failures++;
        auto still = [&](const TermPtr& cand) {
          NiOutcome rr = ni_check_lcirc(cand, tr.b1, tr.b2);
          return !rr.pass || !rr.observer_agrees || !rr.adequacy_agrees;
        };
        TermPtr small = shrink_term(tr.f, still);
        json report = {{"mode", "lcirc"},
                       {"trial", i},
                       {"detail", r.detail},
                       {"f", print_term(small, nat)}};
        std::filesystem::create_directories(outdir);
        write_counterexample(outdir + "/ni_lcirc_" + std::to_string(i), nat, small, tr.b1, tr.b2,
                             report);
        std::cerr << "ni violation (lcirc, trial " << i << "): " << r.detail << "\n";
      }
    }
  }
  emit(opt, json{{"trials", ran}, {"failures", failures}},
       "ni: " + std::to_string(ran) + " trials, " + std::to_string(failures) + " failures");
  return failures == 0 ? 0 : 1;
}

int cmd_roundtrip(const Options& opt) {
  GradeAlgebra alg = load_algebra(opt.algebra);
  if (!alg.is_semilattice()) fail(errc::usage_error, "roundtrip needs a semilattice algebra");
  TermGen gen(alg, opt.seed);
  int erasure_ok = 0, full = 0;
  Context empty;
  for (int i = 0; i < opt.trials; i++) {
    GenItem item = gen.random_term(calculus::gmcc, empty, 30);
    TermPtr back = underline(alg, empty, overline(alg, empty, item.term));
    EqualityResult r = decide_equal(alg, calculus::gmcc, back, item.term, item.type, std::nullopt,
                                    opt.fuel);
    if (r.verdict == equality_verdict::equal_full) {
      full++;
      erasure_ok++;
    } else if (r.verdict == equality_verdict::equal_up_to_erasure) {
      erasure_ok++;
    } else {
      std::cerr << "roundtrip failure on: " << print_term(item.term, alg) << "\n";
    }
  }
  double frac = opt.trials ? static_cast<double>(full) / opt.trials : 0.0;
  emit(opt,
       json{{"trials", opt.trials},
            {"erasure_equal", erasure_ok},
            {"full_equal", full},
            {"full_fraction", frac}},
       "roundtrip: " + std::to_string(erasure_ok) + "/" + std::to_string(opt.trials) +
           " erasure-equal, " + std::to_string(full) + " fully equal");
  return erasure_ok == opt.trials ? 0 : 1;
}

int cmd_oracle_protect(const Options& opt, const std::string& level, const std::string& type_src,
                       const std::string& mode_name, int depth) {
  GradeAlgebra alg = load_algebra(opt.algebra);
  protection_mode mode =
      mode_name == "dcc" ? protection_mode::plain_dcc : protection_mode::extended_dcce;
  Grade l = alg.parse_grade(level);
  TypePtr ty = parse_type(type_src, alg);
  bool search = protection_search(alg, mode, l, ty, depth);
  bool fast = protected_at(alg, mode, l, ty);
  emit(opt,
       json{{"search", search}, {"optimized", fast}, {"agree", search == fast}},
       std::string("search: ") + (search ? "protected" : "not protected") + ", optimized: " +
           (fast ? "protected" : "not protected"));
  return search == fast ? 0 : 1;
}

int cmd_oracle_typing(const Options& opt, const std::string& path, int depth) {
  GradeAlgebra alg = load_algebra(opt.algebra);
  calculus c = need_calc(opt.calc);
  TermFile f = load_term_file(path, alg);
  json types = json::array();
  std::string human;
  if (c == calculus::gmcce) {
    for (auto& [g, ty] : typing_search_gmcce(alg, f.ctx, f.term, depth)) {
      types.push_back({{"grade", alg.grade_name(g)}, {"type", print_type(ty, alg)}});
      human += "  :^" + alg.grade_name(g) + " " + print_type(ty, alg) + "\n";
    }
  } else {
    for (auto& ty : typing_search(alg, c, f.ctx, f.term, depth)) {
      types.push_back(print_type(ty, alg));
      human += "  : " + print_type(ty, alg) + "\n";
    }
  }
  emit(opt, json{{"derivable", types}},
       "derivable types:\n" + (human.empty() ? "  (none)\n" : human));
  return 0;
}

int cmd_validate_algebra(const Options& opt) {
  GradeAlgebra alg = load_algebra_raw(opt.algebra);
  auto violations = alg.validate();
  json vj = json::array();
  std::string human;
  for (auto& v : violations) {
    vj.push_back({{"law", v.law}, {"witness", v.witness}});
    human += "  " + v.law + ": " + v.witness + "\n";
  }
  emit(opt, json{{"valid", violations.empty()}, {"violations", vj}},
       violations.empty() ? "algebra is valid" : "violations:\n" + human);
  return violations.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graded dependency calculi workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--algebra", opt.algebra, "built-in name (l2, diamond, nat) or definition file");
  app.add_option("--calc", opt.calc, "gmc|gcc|gmcc|dcc|dcce|lcirc|gmcce");
  app.add_flag("--json", opt.as_json, "machine-readable output");
  app.add_option("--fuel", opt.fuel, "normalization/evaluation step budget");
  app.add_option("--seed", opt.seed, "random seed");
  app.add_option("--trials", opt.trials, "number of generated trials");
  app.add_option("--grade", opt.grade, "judgement grade (gmcce) or time (lcirc)");

  std::string file, file2, from, to, level, type_src, mode = "both", outdir = "ni_out";
  int depth = default_protection_depth;

  auto* check = app.add_subcommand("check", "type-check a term file");
  check->add_option("file", file)->required();

  auto* translate = app.add_subcommand("translate", "translate between calculi");
  translate->add_option("--from", from)->required();
  translate->add_option("--to", to)->required();
  translate->add_option("file", file)->required();

  auto* erase_cmd = app.add_subcommand("erase", "erase to the plain lambda fragment");
  erase_cmd->add_option("file", file)->required();

  auto* eq = app.add_subcommand("eq", "decide equality of two terms");
  eq->add_option("file1", file)->required();
  eq->add_option("file2", file2)->required();

  auto* eval = app.add_subcommand("eval", "call-by-value evaluation (dcce)");
  eval->add_option("file", file)->required();

  auto* ni = app.add_subcommand("ni", "noninterference fuzzing");
  ni->add_option("--mode", mode, "dcce|lcirc|both");
  ni->add_option("--out", outdir, "counterexample directory");

  auto* roundtrip = app.add_subcommand("roundtrip", "underline(overline(a)) equality report");

  auto* oracle = app.add_subcommand("oracle", "brute-force rule search");
  auto* oprotect = oracle->add_subcommand("protect", "protection derivation search");
  oprotect->add_option("--level", level)->required();
  oprotect->add_option("--type", type_src)->required();
  std::string omode = "dcce";
  oprotect->add_option("--mode", omode, "dcc|dcce");
  oprotect->add_option("--depth", depth);
  auto* otyping = oracle->add_subcommand("typing", "typing derivation search");
  otyping->add_option("file", file)->required();
  otyping->add_option("--depth", depth);

  auto* validate = app.add_subcommand("validate-algebra", "check the algebra laws");

  for (auto* sub : {check, translate, erase_cmd, eq, eval, ni, roundtrip, oracle, validate})
    sub->fallthrough();
  for (auto* sub : {oprotect, otyping}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(opt, file);
    if (translate->parsed()) return cmd_translate(opt, from, to, file);
    if (erase_cmd->parsed()) return cmd_erase(opt, file);
    if (eq->parsed()) return cmd_eq(opt, file, file2);
    if (eval->parsed()) return cmd_eval(opt, file);
    if (ni->parsed()) return cmd_ni(opt, mode, outdir);
    if (roundtrip->parsed()) return cmd_roundtrip(opt);
    if (oracle->parsed()) {
      if (oprotect->parsed()) return cmd_oracle_protect(opt, level, type_src, omode, depth);
      if (otyping->parsed()) return cmd_oracle_typing(opt, file, depth);
      fail(errc::usage_error, "oracle needs a subcommand (protect or typing)");
    }
    if (validate->parsed()) return cmd_validate_algebra(opt);
    fail(errc::usage_error, "no subcommand given");
  } catch (const error& e) {
    std::cerr << errc_name(e.code()) << ": " << e.what() << "\n";
    return (e.code() == errc::usage_error || e.code() == errc::io_error) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
