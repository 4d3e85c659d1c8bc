// hankel_lab: analyze / verify / aak front end. Exit codes: 0 success,
// 1 failed check, 2 bad input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hankel_lab/analysis.hpp"

using namespace hankel_lab;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;

struct Common {
  std::string spec_file;
  std::optional<std::uint64_t> seed;
  std::string kind = "rational";
  int n = 0;
  int grid = 0;
  double tol_cluster = Tolerances{}.rel_gap;
  double tol_subspace = Tolerances{}.subspace_tol;
  double tol_residual = Tolerances{}.residual_tol;
  double inject_fault = 0.0;
};

void add_common(CLI::App* cmd, Common& c, bool spec_required) {
  auto* spec = cmd->add_option("spec", c.spec_file, "symbol spec (JSON)");
  if (spec_required) spec->required();
  cmd->add_option("--seed", c.seed, "random symbol seed (instead of a spec file)");
  cmd->add_option("--kind", c.kind, "kind of random symbol for --seed/--sweep")
      ->check(CLI::IsMember({"rational", "real_rational"}));
  cmd->add_option("--n", c.n, "truncation order (default: from the symbol decay)")->check(CLI::Range(8, 1 << 14));
  cmd->add_option("--grid", c.grid, "starting boundary grid size")->check(CLI::Range(16, 1 << 18));
  cmd->add_option("--tol-cluster", c.tol_cluster, "relative gap for clustering singular values")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-subspace", c.tol_subspace, "Schmidt subspace residual tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--tol-residual", c.tol_residual, "tolerance for structural identities")->check(CLI::PositiveNumber);
  cmd->add_option("--inject-fault", c.inject_fault, "")->group("");  // test hook: perturb Gamma~
}

AnalysisOptions options(const Common& c) {
  AnalysisOptions o;
  o.n = c.n;
  o.grid = c.grid;
  o.tol.rel_gap = c.tol_cluster;
  o.tol.subspace_tol = c.tol_subspace;
  o.tol.residual_tol = c.tol_residual;
  o.corruption = c.inject_fault;
  if (const char* cap = std::getenv("HANKEL_LAB_MAX_N")) {
    try {
      o.max_n = std::stoi(cap);
    } catch (const std::exception&) {
      throw SpecError("HANKEL_LAB_MAX_N must be an integer");
    }
    if (o.max_n < 8) throw SpecError("HANKEL_LAB_MAX_N must be at least 8");
  }
  return o;
}

SymbolSpec seeded_spec(const std::string& kind, std::uint64_t seed) {
  SymbolSpec s;
  s.kind = kind == "real_rational" ? SymbolKind::RealRational : SymbolKind::Rational;
  s.seed = seed;
  s.degree = sweep_degree(seed);
  return s;
}

SymbolSpec input_spec(const Common& c) {
  if (!c.spec_file.empty()) return load_symbol_spec(c.spec_file);
  if (c.seed) return seeded_spec(c.kind, *c.seed);
  throw SpecError("give a spec file or --seed");
}

// Builds the symbol first so pole and parameter errors map to exit code 2.
HankelOperator checked_operator(const SymbolSpec& spec, const AnalysisOptions& opt) {
  try {
    return build_operator(spec, opt);
  } catch (const DomainError& e) {
    throw SpecError(e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int cmd_analyze(const Common& c, const std::string& plot_data) {
  const AnalysisOptions opt = options(c);
  const SymbolSpec spec = input_spec(c);
  const HankelOperator op = checked_operator(spec, opt);
  const AnalysisReport r = analyze(op, spec, opt);
  std::cout << to_json(r).dump(2) << '\n';
  if (!plot_data.empty()) write_file(plot_data, plot_data_csv(op, r, c.grid));
  return r.ok() ? kOk : kFailed;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const auto v = std::stoull(text);
      return {v, v};
    }
    const auto a = std::stoull(text.substr(0, dots));
    const auto b = std::stoull(text.substr(dots + 2));
    if (b < a) throw SpecError("empty seed range " + text);
    return {a, b};
  } catch (const std::logic_error&) {
    throw SpecError("seed range must look like A..B, got '" + text + "'");
  }
}

int cmd_verify(const Common& c, const std::string& sweep, bool json) {
  const AnalysisOptions opt = options(c);
  InvariantTable total;
  Json failures = Json::array();
  std::string header;
  if (!sweep.empty()) {
    const auto [a, b] = parse_range(sweep);
    header = "sweep " + c.kind + " seeds " + std::to_string(a) + ".." + std::to_string(b);
    for (std::uint64_t seed = a; seed <= b; ++seed) {
      const SymbolSpec spec = seeded_spec(c.kind, seed);
      const AnalysisReport r = analyze(checked_operator(spec, opt), spec, opt);
      if (!r.ok()) failures.push_back(seed);
      total.merge(r.invariants);
    }
  } else {
    const SymbolSpec spec = input_spec(c);
    const AnalysisReport r = analyze(checked_operator(spec, opt), spec, opt);
    header = "symbol " + to_json(spec).dump() + ", N = " + std::to_string(r.n) + ", " +
             std::to_string(r.clusters.size()) + " clusters";
    total = r.invariants;
  }
  if (json) {
    Json rows = Json::array();
    for (const InvariantRow& row : total.rows()) rows.push_back(to_json(row));
    std::cout << Json{{"run", header}, {"invariants", rows}, {"failed_seeds", failures}, {"pass", total.ok()}}.dump(2)
              << '\n';
  } else {
    std::cout << header << '\n' << format_table(total);
    if (!failures.empty()) std::cout << "failed seeds: " << failures.dump() << '\n';
    std::cout << (total.ok() ? "all invariants hold" : "invariant check FAILED") << '\n';
  }
  return total.ok() ? kOk : kFailed;
}

int cmd_aak(const Common& c, int k, const std::string& emit_symbol) {
  const AnalysisOptions opt = options(c);
  const SymbolSpec spec = input_spec(c);
  const HankelOperator op = checked_operator(spec, opt);
  AAKCertificate cert;
  try {
    cert = best_rank_k(op, k, opt.tol, opt.grid);
  } catch (const NumericalError& e) {
    std::cerr << "aak: " << e.what() << '\n';
    return kFailed;
  }
  Json out{{"symbol", to_json(spec)}, {"truncation", op.order()}, {"certificate", to_json(cert)}};
  bool ok = true;
  if (cert.s > 0.0) {
    const SchmidtDecomposition d = decompose(op, cert.s, opt.tol);
    const AAKReport rep = verify_aak_bounds(op, cert, d.inner_factor, opt.tol);
    out["error"] = rep.error_norm;
    out["check"] = to_json(rep);
    ok = rep.ok() && cert.phi.unimodularity <= opt.tol.unimodularity_tol;
  } else {
    // k reaches the rank: the approximant is the operator itself.
    out["error"] = 0.0;
  }
  out["pass"] = ok;
  std::cout << out.dump(2) << '\n';
  if (!emit_symbol.empty())
    write_file(emit_symbol, Json{{"k", k}, {"coefficients", to_json(cert.low_rank_symbol)}}.dump(2) + "\n");
  return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schmidt subspaces and AAK approximants of Hankel operators with rational symbols"};
  app.require_subcommand(1);

  Common an, ve, ak;
  std::string plot_data, sweep, emit_symbol;
  bool json = false;
  int k = 0;

  auto* analyze_cmd = app.add_subcommand("analyze", "full pipeline, JSON report on stdout");
  add_common(analyze_cmd, an, false);
  analyze_cmd->add_option("--plot-data", plot_data, "write boundary samples as CSV");

  auto* verify_cmd = app.add_subcommand("verify", "invariant pass/fail table");
  add_common(verify_cmd, ve, false);
  verify_cmd->add_option("--sweep", sweep, "seed range A..B of random symbols");
  verify_cmd->add_flag("--json", json, "JSON instead of a text table");

  auto* aak_cmd = app.add_subcommand("aak", "best rank-k Hankel approximant");
  add_common(aak_cmd, ak, false);
  aak_cmd->add_option("--k", k, "approximation rank")->required()->check(CLI::NonNegativeNumber);
  aak_cmd->add_option("--emit-symbol", emit_symbol, "write the approximant's symbol coefficients (JSON)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(an, plot_data);
    if (*verify_cmd) return cmd_verify(ve, sweep, json);
    return cmd_aak(ak, k, emit_symbol);
  } catch (const SpecError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
}
