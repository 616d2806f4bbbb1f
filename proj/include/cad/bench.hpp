#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cad/formula.hpp"

namespace cad {

/// Shapes of the nested doubly-exponential family.
enum class DhForm { Nested, Prenex, Negated, CnfL, ProductL };

const char* to_string(DhForm f);
DhForm parse_dh_form(std::string_view s);

/// x0, y0, then z_i, x_i, y_i for i = 1..depth.
VarOrder dh_order(unsigned depth);

/// `f` is univariate (in its ring's variable 0). Nested and prenex forms state P_0;
/// the other three state its negation, with L in disjunctive, CNF or product form.
Formula generate_dh(unsigned depth, const Polynomial& f, DhForm form);
/// `f` is written in the variable t.
Formula generate_dh(unsigned depth, std::string_view f, DhForm form);

/// (2d)^(2^n-1) m^(2^n-1) 2^(2^(n-1)-1)
Integer bound_eq1(unsigned n, unsigned m, unsigned d);

enum class BenchMode { SignInvariant, EcResultant, EcGroebner };
const char* to_string(BenchMode m);
BenchMode parse_bench_mode(std::string_view s);

struct CorpusEntry {
  std::string id;
  Formula formula;
  VarOrder order;
};

/// Reads `order = a, b` and `formula = ...` lines from every *.cad file of `dir`
/// (sorted by name); `#` starts a comment.
std::vector<CorpusEntry> load_corpus(const std::string& dir);
CorpusEntry parse_corpus_entry(const std::string& id, std::string_view text);

struct BoundReport {
  std::string id;
  BenchMode mode = BenchMode::SignInvariant;
  unsigned n = 0, m = 0, d = 0;
  int ell = 0;
  /// Dimension of the ideal of the ECs, computed in the Groebner mode.
  std::optional<int> r;
  Integer eq1_value;
  std::string ec_bound_note;
  CellCount observed;
  /// Degree and count of the projection polynomials in the lowest variable.
  unsigned D_obs = 0, M_obs = 0;
  /// Largest propagated EC degree before normalization.
  unsigned propagated_raw_degree = 0;
  double time_ms = 0;
  std::string status = "ok";
  std::string message;
};

struct ExperimentOptions {
  BuildOptions build;
  std::size_t projection_cap = 10000;
};

BoundReport run_one(const CorpusEntry& e, BenchMode mode, const ExperimentOptions& opt = {});
std::vector<BoundReport> run_experiment(const std::vector<CorpusEntry>& corpus, const std::vector<BenchMode>& modes,
                                        const ExperimentOptions& opt = {});
std::string to_csv(const std::vector<BoundReport>& rows);

struct PrimitivityEntry {
  Polynomial poly;
  Var main_var = 0;
  bool primitive = true;
  Polynomial content;
};

struct PrimitivityReport {
  VarOrder order;
  std::vector<PrimitivityEntry> entries;
  std::size_t imprimitive = 0;
};

/// Equational constraints of the (matrix of the) formula and their primitivity,
/// over `order` when given.
PrimitivityReport primitivity_report(const Formula& f, const std::optional<VarOrder>& order = std::nullopt);
std::string to_string(const PrimitivityReport& r);

}  // namespace cad
