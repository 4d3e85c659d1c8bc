#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hankel_lab/json_io.hpp"

namespace hankel_lab {

struct AnalysisOptions {
  int n = 0;        // truncation order; 0 picks it from the symbol decay
  int max_n = 512;  // cap on the truncation order
  int grid = 0;     // starting boundary grid for the unimodular ratio
  Tolerances tol;
  double corruption = 0.0;  // test hook: perturb one entry of Gamma~
};

/// One named identity, aggregated over every cluster it applies to.
struct InvariantRow {
  std::string name;
  std::string display;  // the identity being checked, as a formula
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  int checks = 0;
  std::string detail;  // where the worst residual (or the failure) occurred
};

class InvariantTable {
 public:
  void record(const std::string& name, const std::string& display, double residual, double tolerance,
              const std::string& where);
  void fail(const std::string& name, const std::string& display, const std::string& why);
  void merge(const InvariantTable& other);
  const std::vector<InvariantRow>& rows() const { return rows_; }
  bool ok() const;

 private:
  InvariantRow& row(const std::string& name, const std::string& display);
  std::vector<InvariantRow> rows_;
};

struct ClusterReport {
  SingularCluster cluster;
  int multiplicity_h = 0;
  int multiplicity_k = 0;
  std::optional<SchmidtDecomposition> decomposition;
  std::optional<InnerParameter> inner_parameter;  // clusters of Gamma~ only
  std::optional<DegreeReport> degree;
  std::optional<AAKCertificate> aak;
  std::optional<AAKReport> aak_report;
  std::vector<std::string> errors;
};

struct AnalysisReport {
  SymbolSpec spec;
  int n = 0;
  double norm = 0.0;
  std::vector<SingularCluster> clusters_h, clusters_k;
  std::vector<ClusterReport> clusters;
  InvariantTable invariants;
  std::vector<std::string> warnings;
  bool ok() const;
};

/// Truncation order for a symbol under the options (and the max_n cap).
int truncation_order(const RationalFunction& u, const AnalysisOptions& opt);
HankelOperator build_operator(const SymbolSpec& spec, const AnalysisOptions& opt);

/// build -> clusters -> classify -> extract -> degree check -> AAK, plus the
/// invariant suite. Numerical failures become failed rows, never exceptions.
AnalysisReport analyze(const SymbolSpec& spec, const AnalysisOptions& opt = {});
AnalysisReport analyze(const HankelOperator& op, const SymbolSpec& spec, const AnalysisOptions& opt = {});

Json to_json(const InvariantRow& r);
Json to_json(const AnalysisReport& r);
/// Fixed-width pass/fail table, one line per row.
std::string format_table(const InvariantTable& t);

/// CSV with one block per H-cluster: cluster, angle, then re/im of u, p, theta, phi
/// (inner factor of p) and the unimodular ratio on the grid.
std::string plot_data_csv(const HankelOperator& op, const AnalysisReport& r, int grid);

}  // namespace hankel_lab
