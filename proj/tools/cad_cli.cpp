// Command-line front end; talks to the engine only through the C interface.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cad/cad.h"

namespace {

struct Failure {
  cad_status status;
};

void check(cad_status s) {
  if (s != CAD_OK) throw Failure{s};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  cad_string_free(s);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path);
  if (!in) return false;
  std::stringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

// A formula argument is a file (plain text, or `order = ...` / `formula = ...` lines) or the text itself.
struct FormulaArg {
  std::string text;
  std::string order;
};

FormulaArg load_formula(const std::string& arg) {
  FormulaArg f;
  std::string content;
  if (!read_file(arg, content)) {
    f.text = arg;
    return f;
  }
  std::istringstream in(content);
  std::string line;
  bool keyed = false;
  while (std::getline(in, line)) {
    auto h = line.find('#');
    if (h != std::string::npos) line.resize(h);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = trim(line.substr(0, eq));
    if (key == "formula") {
      f.text = trim(line.substr(eq + 1));
      keyed = true;
    } else if (key == "order") {
      f.order = trim(line.substr(eq + 1));
    }
  }
  if (!keyed) f.text = trim(content);
  return f;
}

struct Handles {
  cad_formula* f = nullptr;
  cad_tree* t = nullptr;
  ~Handles() {
    cad_tree_free(t);
    cad_formula_free(f);
  }
};

struct Common {
  std::string formula;
  std::string order;
  std::string mode = "si";
  std::size_t cap = 0;
  std::string ecs;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--formula", c.formula, "formula text or file")->required();
  app->add_option("--order", c.order, "variables, lowest first (default: order of appearance)");
  app->add_option("--mode", c.mode, "si, ec-res or ec-gb")->check(CLI::IsMember({"si", "ec-res", "ec-gb"}));
  app->add_option("--cap", c.cap, "cell cap (default 1000000)");
  app->add_option("--ec", c.ecs, "designated equational constraints, ';'-separated (overrides --mode)");
}

void parse_common(const Common& c, Handles& h, std::string& order, cad_mode& mode) {
  FormulaArg fa = load_formula(c.formula);
  order = c.order.empty() ? fa.order : c.order;
  check(cad_mode_parse(c.mode.c_str(), &mode));
  check(cad_formula_parse(fa.text.c_str(), order.c_str(), &h.f));
}

void print_counts(cad_tree* t) {
  std::size_t total = 0, depth = 0;
  int ell = 0;
  check(cad_tree_count(t, &total, nullptr, 0, &depth, &ell));
  std::vector<std::size_t> per(depth);
  check(cad_tree_count(t, &total, per.data(), per.size(), nullptr, nullptr));
  std::cout << "cells: " << total << "\nper level:";
  for (auto n : per) std::cout << ' ' << n;
  std::cout << "\nell: " << ell << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cylindrical algebraic decomposition"};
  app.require_subcommand(1);

  Common build_c, decide_c, count_c;
  std::string json_out, plan_out;
  auto* build = app.add_subcommand("build", "build a CAD and report its cells");
  add_common(build, build_c);
  build->add_option("--json", json_out, "write the tree as JSON");
  build->add_option("--plan", plan_out, "write the projection plan as JSON");
  auto* decide = app.add_subcommand("decide", "decide a closed formula");
  add_common(decide, decide_c);
  auto* count = app.add_subcommand("count", "print cell counts");
  add_common(count, count_c);

  auto* bench = app.add_subcommand("bench", "benchmark family, experiments and bounds");
  bench->require_subcommand(1);
  unsigned depth = 1;
  std::string fmap = "t^2", form = "nested", report_order;
  bool report = false;
  auto* dh = bench->add_subcommand("dh", "print a member of the nested doubly-exponential family");
  dh->add_option("--depth", depth)->check(CLI::PositiveNumber);
  dh->add_option("--f", fmap, "univariate map in t");
  dh->add_option("--form", form)->check(CLI::IsMember({"nested", "prenex", "negated", "cnf", "product"}));
  dh->add_flag("--report", report, "also print the primitivity report of the equational constraints");
  dh->add_option("--report-order", report_order, "variable order for the report");
  std::string corpus, modes = "si,ec-res,ec-gb", csv;
  std::size_t run_cap = 0;
  auto* run = bench->add_subcommand("run", "run a corpus and write CSV");
  run->add_option("--corpus", corpus)->required();
  run->add_option("--modes", modes);
  run->add_option("--csv", csv, "output file (default stdout)");
  run->add_option("--cap", run_cap, "cell cap");
  unsigned bn = 1, bm = 1, bd = 1;
  auto* bound = bench->add_subcommand("bound", "evaluate the dominant term of the cell bound");
  bound->add_option("--n", bn)->required();
  bound->add_option("--m", bm)->required();
  bound->add_option("--d", bd)->required();

  std::string gb_order = "lex", gb_vars, gb_gens;
  auto* gb = app.add_subcommand("gb", "reduced Groebner basis, dimension and elimination ideals");
  gb->add_option("--order", gb_order)->check(CLI::IsMember({"lex", "grevlex"}));
  gb->add_option("--vars", gb_vars, "variables, lowest first")->required();
  gb->add_option("--gens", gb_gens, "file or ';'-separated generators")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    Handles h;
    std::string order;
    cad_mode mode = CAD_MODE_SI;
    if (*build || *count) {
      const Common& c = *build ? build_c : count_c;
      parse_common(c, h, order, mode);
      if (c.ecs.empty()) check(cad_build(h.f, order.c_str(), mode, c.cap, &h.t));
      else check(cad_build_designated(h.f, order.c_str(), c.ecs.c_str(), c.cap, &h.t));
      print_counts(h.t);
      if (!json_out.empty()) {
        char* s = nullptr;
        check(cad_tree_json(h.t, &s));
        std::ofstream(json_out) << take(s) << '\n';
      }
      if (!plan_out.empty()) {
        char* s = nullptr;
        check(cad_tree_plan_json(h.t, &s));
        std::ofstream(plan_out) << take(s) << '\n';
      }
    } else if (*decide) {
      parse_common(decide_c, h, order, mode);
      int value = 0;
      std::size_t cells = 0;
      check(cad_decide(h.f, order.c_str(), mode, decide_c.cap, &value, &cells));
      std::cout << (value ? "true" : "false") << "\ncells: " << cells << '\n';
    } else if (*dh) {
      check(cad_dh_generate(depth, fmap.c_str(), form.c_str(), &h.f));
      char* s = nullptr;
      check(cad_formula_order(h.f, &s));
      std::cout << "order = " << take(s) << '\n';
      check(cad_formula_to_string(h.f, &s));
      std::cout << "formula = " << take(s) << '\n';
      if (report) {
        std::size_t bad = 0;
        check(cad_primitivity_report(h.f, report_order.c_str(), &s, &bad));
        std::cout << take(s);
      }
    } else if (*run) {
      char* s = nullptr;
      check(cad_bench_run(corpus.c_str(), modes.c_str(), run_cap, &s));
      std::string out = take(s);
      if (csv.empty()) std::cout << out;
      else std::ofstream(csv) << out;
    } else if (*bound) {
      char* s = nullptr;
      check(cad_bound_eq1(bn, bm, bd, &s));
      std::cout << take(s) << '\n';
    } else if (*gb) {
      std::string gens;
      if (!read_file(gb_gens, gens)) gens = gb_gens;
      char* s = nullptr;
      check(cad_gb(gb_order.c_str(), gb_vars.c_str(), gens.c_str(), &s));
      std::cout << take(s);
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << cad_last_error() << '\n';
    return static_cast<int>(f.status);
  }
  return 0;
}
