#ifndef FROBRIG_CLI_HPP
#define FROBRIG_CLI_HPP

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "artin_schreier.hpp"
#include "counting.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "laurent.hpp"
#include "lpoly.hpp"
#include "parse.hpp"
#include "perfection.hpp"
#include "rigidity.hpp"

namespace frobrig::cli {

using ordered_json = nlohmann::ordered_json;

// sysexits-style: 0/1/2 carry the verdict, higher values are malfunctions
inline constexpr int kExitEquivalent = 0;
inline constexpr int kExitNotEquivalent = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitError = 65;
inline constexpr int kExitInconsistency = 70;

struct Config {
  std::uint64_t enum_budget = kDefaultEnumBudget;
  std::int64_t precision = kDefaultSeriesPrec;
  std::uint64_t n_cap = 50;
  std::int64_t depth = 4;
  std::int64_t d_max = 6;
  std::uint64_t seed = 0;
  bool json = false;
};

namespace detail {

inline std::string field_string(const FieldCtxPtr& F) {
  if (F->e() == 1) return "GF(" + std::to_string(F->p()) + ")";
  return "GF(" + std::to_string(F->p()) + "^" + std::to_string(F->e()) + ")";
}

inline FieldElem elem_from_value(const FieldCtxPtr& F, std::uint64_t value) {
  std::vector<std::uint32_t> coords(F->e(), 0);
  for (std::uint32_t i = 0; i < F->e() && value; ++i) {
    coords[i] = static_cast<std::uint32_t>(value % F->p());
    value /= F->p();
  }
  return F->from_coords(std::move(coords));
}

inline std::string witness_string(const FieldCtxPtr& base, const PointWitness& w) {
  auto tower = FieldCtx::create(base->p(),
                                base->e() * static_cast<std::uint32_t>(w.tower_degree));
  return to_string(elem_from_value(tower, w.elem_value));
}

inline ordered_json terms_json(const LPoly& f) {
  ordered_json arr = ordered_json::array();
  for (const auto& [e, c] : f.terms()) arr.push_back({e, to_string(c)});
  return arr;
}

inline const char* verdict_name(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::FrobeniusEquivalent: return "equivalent";
    case Verdict::Kind::NotEquivalent: return "not-equivalent";
    default: return "inconclusive";
  }
}

inline ordered_json verdict_json(const FieldCtxPtr& F, const Verdict& v) {
  ordered_json j;
  j["verdict"] = verdict_name(v.kind);
  if (v.equivalent()) {
    j["a"] = v.a;
    j["b"] = v.b;
  }
  if (v.point)
    j["witness"] = {{"y", witness_string(F, *v.point)}, {"tower_degree", v.point->tower_degree}};
  else if (v.torsor)
    j["witness"] = {{"n", *v.torsor}};
  else
    j["witness"] = nullptr;
  j["depth"] = v.depth_reached;
  return j;
}

inline void print_verdict_line(std::ostream& out, const FieldCtxPtr& F, const std::string& name,
                               const Verdict& v) {
  out << name << ": " << verdict_name(v.kind);
  if (v.equivalent()) out << " (a=" << v.a << ", b=" << v.b << ")";
  if (v.point)
    out << ", witness y = " << witness_string(F, *v.point) << " in tower of degree "
        << v.point->tower_degree;
  if (v.torsor) out << ", nontrivial torsor at n = " << *v.torsor;
  if (v.kind == Verdict::Kind::Inconclusive) out << " (no violation through " << v.depth_reached << ")";
  out << "\n";
}

inline const char* local_verdict_name(LocalVerdict v) {
  switch (v) {
    case LocalVerdict::Solvable: return "solvable";
    case LocalVerdict::Unsolvable: return "unsolvable";
    default: return "inconclusive";
  }
}

inline const char* eps_case_name(EpsilonCase c) {
  switch (c) {
    case EpsilonCase::ValuationPositive: return "v(eps)>0";
    case EpsilonCase::RootOfUnity: return "root-of-unity";
    default: return "generic-unit";
  }
}

inline std::string opt_string(const std::optional<std::int64_t>& v) {
  return v ? std::to_string(*v) : std::string("-");
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  if (const char* env = std::getenv("FROBRIG_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) cfg.enum_budget = v;
  }

  CLI::App app{"frobrig: decides whether two polynomial maps of the affine line over a "
               "finite field agree up to a power of Frobenius"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--budget", cfg.enum_budget, "enumeration budget (elements)");
  app.add_option("--seed", cfg.seed, "seed for sampled diagnostics");

  std::string f_str, g_str, field_str, expr_str;

  auto* check = app.add_subcommand("check", "run the syntactic, closed-point and torsor checkers");
  check->fallthrough();
  bool check_decide = false;
  check->add_option("--f", f_str, "first map")->required();
  check->add_option("--g", g_str, "second map")->required();
  check->add_option("--field", field_str, "base field literal")->required();
  check->add_option("--depth", cfg.depth, "closed-point scan depth");
  check->add_option("--nmax", cfg.n_cap, "torsor scan cap");
  check->add_flag("--decide", check_decide, "also run the full counting decision");
  check->add_flag("--json", cfg.json, "machine-readable output");

  auto* decide = app.add_subcommand("decide", "decide equivalence through the counting bound");
  decide->fallthrough();
  decide->add_option("--f", f_str, "first map")->required();
  decide->add_option("--g", g_str, "second map")->required();
  decide->add_option("--field", field_str, "base field literal")->required();
  decide->add_flag("--json", cfg.json, "machine-readable output");

  auto* asclass = app.add_subcommand("as-class", "canonical class of z modulo h - h^p");
  asclass->fallthrough();
  asclass->add_option("expr", expr_str, "polynomial, optionally \"<poly> over <field>\"")
      ->required();
  asclass->add_option("--field", field_str, "base field literal");
  asclass->add_flag("--json", cfg.json, "machine-readable output");

  auto* local = app.add_subcommand("local", "formal local analysis at t = 0");
  local->fallthrough();
  auto* probe = local->add_subcommand("probe", "obstruction valuations for f^n - g^n");
  probe->fallthrough();
  local->require_subcommand(1);
  probe->add_option("--f", f_str, "first Laurent polynomial")->required();
  probe->add_option("--g", g_str, "second Laurent polynomial")->required();
  probe->add_option("--field", field_str, "coefficient field literal")->required();
  std::uint64_t probe_nmax = 9;
  probe->add_option("--nmax", probe_nmax, "largest n probed");
  probe->add_option("--prec", cfg.precision, "working precision");
  probe->add_flag("--json", cfg.json, "machine-readable output");

  auto* count = app.add_subcommand("count", "depth-by-depth counting report");
  count->fallthrough();
  count->add_option("--f", f_str, "first map")->required();
  count->add_option("--g", g_str, "second map")->required();
  count->add_option("--field", field_str, "base field literal")->required();
  count->add_option("--dmax", cfg.d_max, "largest depth tabulated");
  count->add_flag("--json", cfg.json, "machine-readable output");

  auto* perf = app.add_subcommand("perf", "iterated p-th root membership of a rational function");
  perf->fallthrough();
  std::uint32_t perf_nmax = 8;
  perf->add_option("--expr", expr_str, "rational function num/den")->required();
  perf->add_option("--field", field_str, "base field literal")->required();
  perf->add_option("--nmax", perf_nmax, "largest root depth tried");
  perf->add_flag("--json", cfg.json, "machine-readable output");

  auto* family = app.add_subcommand("family", "classes of the covers y^p - t y over GF(q)^x");
  family->fallthrough();
  family->add_option("--field", field_str, "base field literal")->required();
  family->add_flag("--json", cfg.json, "machine-readable output");

  auto* reduce = app.add_subcommand("reduce", "strip the maximal p-power part of a map");
  reduce->fallthrough();
  reduce->add_option("--f", f_str, "map to reduce")->required();
  reduce->add_option("--field", field_str, "base field literal")->required();
  reduce->add_flag("--json", cfg.json, "machine-readable output");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("frobrig");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (check->parsed() || decide->parsed()) {
      auto F = parse_field(field_str);
      MapPair pair(parse_poly(f_str, F), parse_poly(g_str, F));

      if (decide->parsed()) {
        Verdict v = decide_top(pair, cfg.enum_budget);
        if (cfg.json) {
          ordered_json j;
          j["field"] = detail::field_string(F);
          j["f"] = to_string(pair.f);
          j["g"] = to_string(pair.g);
          j["decision"] = detail::verdict_json(F, v);
          out << j.dump(2) << "\n";
        } else {
          detail::print_verdict_line(out, F, "decision", v);
        }
        return v.equivalent() ? kExitEquivalent : kExitNotEquivalent;
      }

      CrosscheckReport rep =
          crosscheck(pair, cfg.depth, cfg.n_cap, check_decide, cfg.enum_budget);
      if (cfg.json) {
        ordered_json j;
        j["field"] = detail::field_string(F);
        j["f"] = to_string(pair.f);
        j["g"] = to_string(pair.g);
        j["frobenius"] = detail::verdict_json(F, rep.frobenius);
        j["topological"] = detail::verdict_json(F, rep.topological);
        j["h1"] = detail::verdict_json(F, rep.h1);
        j["decision"] = rep.decided ? detail::verdict_json(F, *rep.decided) : ordered_json(nullptr);
        j["consistent"] = rep.consistent;
        out << j.dump(2) << "\n";
      } else {
        out << "field: " << detail::field_string(F) << "\n";
        detail::print_verdict_line(out, F, "frobenius", rep.frobenius);
        detail::print_verdict_line(out, F, "topological", rep.topological);
        detail::print_verdict_line(out, F, "h1", rep.h1);
        if (rep.decided) detail::print_verdict_line(out, F, "decision", *rep.decided);
        out << "consistent: " << (rep.consistent ? "yes" : "no") << "\n";
      }
      return rep.frobenius.equivalent() ? kExitEquivalent : kExitNotEquivalent;
    }

    if (asclass->parsed()) {
      LPoly z(FieldCtx::create(2, 1));
      FieldCtxPtr F;
      if (expr_str.find(" over ") != std::string::npos) {
        auto parsed = parse_poly_over(expr_str);
        z = parsed.first;
        F = parsed.second;
      } else {
        if (field_str.empty()) throw UsageError("as-class needs --field or \"... over GF(...)\"");
        F = parse_field(field_str);
        z = parse_poly(expr_str, F);
      }
      ASClass cls = as_reduce(z);
      if (cfg.json) {
        ordered_json j;
        j["reduced"] = detail::terms_json(cls.reduced);
        j["residue"] = cls.constant_residue;
        j["trivial"] = cls.trivial();
        out << j.dump(2) << "\n";
      } else {
        out << "class: " << to_string(cls, "t") << "\n";
        out << "trivial: " << (cls.trivial() ? "yes" : "no") << "\n";
      }
      return 0;
    }

    if (probe->parsed()) {
      auto F = parse_field(field_str);
      LaurentSeries f = LaurentSeries::exact_poly(parse_poly(f_str, F));
      LaurentSeries g = LaurentSeries::exact_poly(parse_poly(g_str, F));
      ProbeReport rep = local_probe(f, g, probe_nmax, cfg.precision);
      if (cfg.json) {
        ordered_json j;
        j["field"] = detail::field_string(F);
        j["f"] = f_str;
        j["g"] = g_str;
        j["swapped"] = rep.swapped;
        j["eps_case"] = detail::eps_case_name(rep.eps_case);
        j["eps_order"] = rep.eps_order;
        j["v_f"] = rep.v_f;
        j["c"] = std::to_string(rep.c_num) + "/" + std::to_string(rep.c_den);
        ordered_json rows = ordered_json::array();
        for (const auto& r : rep.rows) {
          ordered_json row;
          row["n"] = r.n;
          row["decided"] = r.decided;
          row["v_diff"] = r.v_diff ? ordered_json(*r.v_diff) : ordered_json(nullptr);
          row["v_unit"] = r.v_unit ? ordered_json(*r.v_unit) : ordered_json(nullptr);
          row["v_xn"] = r.v_obstruction ? ordered_json(*r.v_obstruction) : ordered_json(nullptr);
          row["identity_ok"] = r.identity_ok;
          row["solvable"] = detail::local_verdict_name(r.solvable);
          row["certified_unsolvable"] = r.below_growth_bound;
          rows.push_back(row);
        }
        j["rows"] = rows;
        out << j.dump(2) << "\n";
      } else {
        out << "eps case: " << detail::eps_case_name(rep.eps_case);
        if (rep.eps_case == EpsilonCase::RootOfUnity) out << " (order " << rep.eps_order << ")";
        out << ", c = " << rep.c_num << "/" << rep.c_den
            << (rep.swapped ? ", inputs swapped so v(f) <= v(g)" : "") << "\n";
        out << std::setw(4) << "n" << std::setw(13) << "v(f^n-g^n)" << std::setw(8) << "v(x_n)"
            << std::setw(10) << "c*n" << std::setw(16) << "case" << std::setw(14) << "solvable?"
            << "\n";
        for (const auto& r : rep.rows) {
          std::ostringstream cn;
          cn << rep.c_num * static_cast<std::int64_t>(r.n) << "/" << rep.c_den;
          out << std::setw(4) << r.n << std::setw(13) << detail::opt_string(r.v_diff)
              << std::setw(8) << detail::opt_string(r.v_obstruction) << std::setw(10) << cn.str()
              << std::setw(16) << detail::eps_case_name(rep.eps_case) << std::setw(14)
              << (r.decided ? detail::local_verdict_name(r.solvable) : "-")
              << (r.below_growth_bound ? "  [below growth bound]" : "") << "\n";
        }
      }
      return 0;
    }

    if (count->parsed()) {
      auto F = parse_field(field_str);
      LPoly f = parse_poly(f_str, F);
      LPoly g = parse_poly(g_str, F);
      CountingReport rep = counting_report(f, g, cfg.d_max, cfg.enum_budget);
      if (cfg.json) {
        ordered_json j;
        j["field"] = detail::field_string(F);
        j["f"] = to_string(f);
        j["g"] = to_string(g);
        j["deg_f"] = rep.deg_f;
        j["deg_g"] = rep.deg_g;
        j["slack"] = rep.slack;
        ordered_json rows = ordered_json::array();
        for (const auto& r : rep.rows) {
          ordered_json row;
          row["d"] = r.d;
          row["m_window"] = r.m_window;
          row["fiber_count"] = r.fiber_count;
          ordered_json degs = ordered_json::array();
          for (const auto& [m, deg] : r.graph_degrees) degs.push_back({m, deg.str()});
          row["graph_degrees"] = degs;
          row["degenerate_twists"] = r.degenerate_twists;
          row["degree_sum"] = r.degree_sum.str();
          row["lower"] = r.lower.str();
          row["upper_sq"] = r.upper_sq.str();
          row["containment"] = r.containment;
          row["witness"] = r.witness
                               ? ordered_json{{"y", detail::witness_string(
                                                        F, PointWitness{r.witness->first,
                                                                        r.witness->second})},
                                              {"tower_degree", r.witness->second}}
                               : ordered_json(nullptr);
          rows.push_back(row);
        }
        j["rows"] = rows;
        j["break_depth"] = rep.break_at ? ordered_json(*rep.break_at) : ordered_json(nullptr);
        out << j.dump(2) << "\n";
      } else {
        out << "deg f = " << rep.deg_f << ", deg g = " << rep.deg_g << ", slack B = " << rep.slack
            << "\n";
        for (const auto& r : rep.rows) {
          out << "d=" << r.d << "  fiber=" << r.fiber_count << "  lower=" << r.lower.str()
              << "  degsum=" << r.degree_sum.str() << "  upper^2=" << r.upper_sq.str()
              << "  containment=" << (r.containment ? "yes" : "no");
          if (r.witness)
            out << "  witness y = "
                << detail::witness_string(F, PointWitness{r.witness->first, r.witness->second})
                << " (tower degree " << r.witness->second << ")";
          if (!r.degenerate_twists.empty()) {
            out << "  degenerate m:";
            for (auto m : r.degenerate_twists) out << " " << m;
          }
          out << "\n";
        }
        if (rep.break_at)
          out << "chain breaks at d = " << *rep.break_at << "\n";
        else
          out << "chain does not break within dmax\n";
      }
      return 0;
    }

    if (perf->parsed()) {
      auto F = parse_field(field_str);
      RationalFn z = parse_rational(expr_str, F);
      auto res = perfection_of(z, perf_nmax);
      if (cfg.json) {
        ordered_json j;
        j["field"] = detail::field_string(F);
        j["expr"] = expr_str;
        if (std::holds_alternative<FieldElem>(res)) {
          j["kind"] = "constant";
          j["constant"] = to_string(std::get<FieldElem>(res));
          j["first_failure"] = nullptr;
        } else {
          j["kind"] = "not-perfect";
          j["constant"] = nullptr;
          j["first_failure"] = std::get<NotPerfect>(res).first_failure;
        }
        out << j.dump(2) << "\n";
      } else {
        if (std::holds_alternative<FieldElem>(res))
          out << "constant: " << to_string(std::get<FieldElem>(res)) << "\n";
        else
          out << "not perfect: first failing root depth n = "
              << std::get<NotPerfect>(res).first_failure << "\n";
      }
      return 0;
    }

    if (family->parsed()) {
      auto F = parse_field(field_str);
      if (cfg.json) {
        ordered_json j;
        j["field"] = detail::field_string(F);
        ordered_json classes = ordered_json::array();
        for (const FieldElem& t : F->all_elements(cfg.enum_budget)) {
          if (t.is_zero()) continue;
          ASClass cls = family_class(t);
          ordered_json c;
          c["t"] = to_string(t);
          c["reduced"] = detail::terms_json(cls.reduced);
          c["residue"] = cls.constant_residue;
          c["trivial"] = cls.trivial();
          classes.push_back(c);
        }
        j["classes"] = classes;
        out << j.dump(2) << "\n";
      } else {
        std::set<std::string> forms;
        std::uint64_t nonzero = 0;
        for (const FieldElem& t : F->all_elements(cfg.enum_budget)) {
          if (t.is_zero()) continue;
          ++nonzero;
          ASClass cls = family_class(t);
          std::string form = to_string(cls, "y");
          forms.insert(form);
          out << "t = " << to_string(t) << ": " << form << "\n";
        }
        out << "distinct classes: " << forms.size() << " of " << nonzero
            << (forms.size() == nonzero ? " (injective)" : " (collision!)") << "\n";
      }
      return 0;
    }

    if (reduce->parsed()) {
      auto F = parse_field(field_str);
      LPoly f = parse_poly(f_str, F);
      FrobeniusForm form = frobenius_reduce(f);
      if (cfg.json) {
        ordered_json j;
        j["field"] = detail::field_string(F);
        j["f"] = to_string(f);
        j["core"] = to_string(form.core);
        j["exponent"] = form.exponent;
        out << j.dump(2) << "\n";
      } else {
        out << "core: " << to_string(form.core) << "\n";
        out << "exponent: " << form.exponent << "\n";
      }
      return 0;
    }

    err << "no subcommand selected\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const InconsistencyDetected& e) {
    err << e.what() << "\n";
    return kExitInconsistency;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace frobrig::cli

#endif
