#include "hankel_lab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "hankel_lab/linalg.hpp"

namespace hankel_lab {

namespace {

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string at_s(double s) { return "s=" + fmt("%.6g", s); }

bool same_value(double a, double b, double width, const Tolerances& tol) {
  return std::abs(a - b) <= std::max(tol.rel_gap * std::max(a, b), width);
}

bool real_symbol(const HankelOperator& op) {
  const CVector& g = op.symbol().coeffs();
  if (g.size() == 0) return true;
  const double gmax = std::max(g.cwiseAbs().maxCoeff(), 1e-300);
  return g.imag().cwiseAbs().maxCoeff() <= 1e-13 * gmax;
}

// Display strings for the rows.
constexpr const char* kSymmetry = "<H_u f, g> = <H_u g, f>";
constexpr const char* kRankOne = "K_u^2 = H_u^2 - (. | u) u";
constexpr const char* kShifted = "K_u = H_u S = S^* H_u";
constexpr const char* kCommutation = "H_u(f g) = P(conj(f) H_u g), f polynomial";
constexpr const char* kProjection = "H_theta^2 is an orthogonal projection";
constexpr const char* kSpectrum = "clusters = {(s, deg psi + 1), (s~, deg psi~)}";
constexpr const char* kDominancePrediction = "s is H-dominant, s~ is K-dominant";
constexpr const char* kRoundTrip = "psi_s = psi, psi~_s~ = psi~";
constexpr const char* kSymbolRecovery = "u~_s~ = u";
constexpr const char* kClustering = "singular values separate into clusters";
constexpr const char* kSchmidt = "H_u^2 f = s^2 f on E_H(s)";
constexpr const char* kTakagi = "s^-1 H_u e = e on a real frame of E_H(s)";
constexpr const char* kDichotomy = "E_K(s) = E_H(s) cap u^perp  or  E_H(s) = E_K(s) cap u^perp";
constexpr const char* kShift = "S(E_H cap u^perp) = E_H cap 1^perp  /  S(E_K cap (K_u u)^perp) = E_K cap u^perp";
constexpr const char* kOnes = "1_s(0) = |1_s|^2";
constexpr const char* kInnerParameter = "u_s = s psi_s 1_s  /  K_u u~_s = s psi~_s u~_s";
constexpr const char* kExtraction = "E_H(s) -> (p, theta) extraction completes";
constexpr const char* kModelSpace = "E_H(s) = p Ran H_theta";
constexpr const char* kIsometry = "|p f| = |f| on Ran H_theta";
constexpr const char* kIntertwining = "H_u T_p = s T_p H_theta";
constexpr const char* kCompanion = "E_K(s) = p K_psi  /  E_K(s) = u~ Ran H_psi~, with the matching action";
constexpr const char* kInnerOuter = "p = phi p_0, |p_0| = |p| on the circle";
constexpr const char* kDegree = "deg phi = n(s)";
constexpr const char* kRestricted = "|H_u restricted to phi H^2| = s";
constexpr const char* kAAKCert = "unimodular ratio and v = s P(phi) exist";
constexpr const char* kAAKRank = "n(s) = rank H_{u-v} = deg phi";
constexpr const char* kAAKError = "|H_u - H_{u-v}| = s";
constexpr const char* kUnimodular = "|H_u f / (s conj f)| = 1";
constexpr const char* kIndependence = "conj(f1) H_u f2 = conj(f2) H_u f1 on E_H(s)";
constexpr const char* kAAKKernel = "phi H^2 in Ker H_{u-v}";
constexpr const char* kImbalance = "|dim Ker(H_u - s) - dim Ker(H_u + s)| <= 1";
constexpr const char* kEigenspaces = "Ker(H_u -+ s) = p {f : H_theta f = +-f}";
constexpr const char* kDivisor = "H_u(f / a) = P(a H_u f) for inner divisors a of f in E_H(|H_u|)";
constexpr const char* kKOnly = "E_H(s) = {0}: K_u u~_s = s psi~_s u~_s";

double max_abs_entry(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

void global_rows(const HankelOperator& op, const SymbolSpec& spec, InvariantTable& t) {
  const CMatrix& g = op.matrix();
  const CMatrix& gt = op.shifted_matrix();
  const int n = op.order();
  const double nrm = std::max(op.norm(), 1e-300);
  const double sym = std::max(max_abs_entry(g - g.transpose()), max_abs_entry(gt - gt.transpose())) / nrm;
  t.record("symmetry", kSymmetry, sym, 1e-12, "Gamma, Gamma~");

  const double nrm2 = op.norm() > 0.0 ? op.norm() * op.norm() : 1.0;
  t.record("rank-one identity", kRankOne, rank_one_identity_residual(op) / nrm2, 1e-10, "N=" + std::to_string(n));

  double shifted = 0.0;
  if (n > 1) {
    shifted = std::max(max_abs_entry(gt.leftCols(n - 1) - g.rightCols(n - 1)),
                       max_abs_entry(gt.topRows(n - 1) - g.bottomRows(n - 1))) / nrm;
  }
  t.record("shifted operator", kShifted, shifted, 1e-12, "N=" + std::to_string(n));

  if (n >= 8) {
    const Polynomial f({Complex(1.0, 0.0), Complex(0.0, 0.5), Complex(-0.25, 0.0)});
    CVector gc = CVector::Zero(n);
    for (int k = 0; k < n / 2; ++k) gc(k) = std::polar(std::pow(0.9, k), 0.7 * k);
    t.record("commutation", kCommutation, commutation_residual(op, f, ComplexSeries(gc)), 1e-12,
             "f = 1 + i z / 2 - z^2 / 4");
  }

  if (spec.kind == SymbolKind::Inner) {
    const CMatrix p = g * g.adjoint();
    t.record("projection", kProjection, max_abs_entry(p * p - p), 1e-10, "Gamma Gamma^*");
  }
}

void prediction_rows(const AnalysisReport& r, const std::vector<PredictedCluster>& pred, const Tolerances& tol,
                     InvariantTable& t) {
  double worst = 0.0;
  std::string problem;
  auto check = [&](const std::vector<SingularCluster>& got, bool h) {
    std::vector<PredictedCluster> want;
    for (const PredictedCluster& p : pred)
      if ((h ? p.multiplicity_h : p.multiplicity_k) > 0) want.push_back(p);
    const char* which = h ? "Gamma" : "Gamma~";
    if (got.size() != want.size()) {
      problem = std::string(which) + ": " + std::to_string(got.size()) + " clusters, expected " +
                std::to_string(want.size());
      return;
    }
    for (size_t i = 0; i < want.size(); ++i) {
      const int m = h ? want[i].multiplicity_h : want[i].multiplicity_k;
      worst = std::max(worst, std::abs(got[i].s - want[i].s) / want[i].s);
      if (got[i].multiplicity != m)
        problem = std::string(which) + " " + at_s(want[i].s) + ": multiplicity " + std::to_string(got[i].multiplicity) +
                  ", expected " + std::to_string(m);
    }
  };
  check(r.clusters_h, true);
  check(r.clusters_k, false);
  if (!problem.empty())
    t.fail("spectrum prediction", kSpectrum, problem);
  else
    t.record("spectrum prediction", kSpectrum, worst, tol.residual_tol, "relative deviation of s");

  for (const PredictedCluster& p : pred)
    for (const ClusterReport& c : r.clusters) {
      if (!c.decomposition || !same_value(c.cluster.s, p.s, c.cluster.width, tol)) continue;
      const double miss = c.decomposition->dominance == p.dominance ? 0.0 : 1.0;
      t.record("dominance prediction", kDominancePrediction, miss, 0.0,
               at_s(p.s) + " " + to_string(c.decomposition->dominance));
    }
}

void two_sv_rows(const HankelOperator& op, const AnalysisReport& r, const Tolerances& tol, InvariantTable& t) {
  const SymbolSpec& spec = r.spec;
  for (const ClusterReport& c : r.clusters) {
    if (!c.decomposition) continue;
    const SchmidtDecomposition& d = *c.decomposition;
    const bool top = same_value(d.s, spec.s, c.cluster.width, tol);
    const bool low = same_value(d.s, spec.s_tilde, c.cluster.width, tol);
    if (!top && !low) continue;
    const InnerComparison cmp = compare_inner(d.psi, top ? spec.psi : spec.psi_tilde);
    t.record("round trip", kRoundTrip, std::max(cmp.zero_distance, std::abs(cmp.phase_difference)), tol.residual_tol,
             at_s(d.s));
    if (low) {
      const DominanceResult dr = classify_dominance(op, d.s, tol);
      const CVector u = op.u().coeffs();
      const double miss = dr.dominance == Dominance::K ? (u - dr.u_tilde.coeffs()).norm() / u.norm() : 1.0;
      t.record("symbol recovery", kSymbolRecovery, miss, tol.reconstruction_tol, at_s(d.s));
    }
  }
}

void selfadjoint_rows(const HankelOperator& op, const AnalysisReport& r, const Tolerances& tol, InvariantTable& t) {
  for (const SingularCluster& c : r.clusters_h) {
    try {
      const SelfAdjointSplit sp = selfadjoint_eigen_split(op, c.s, tol);
      const std::string where = at_s(c.s) + " (+" + std::to_string(sp.dim_plus) + ", -" + std::to_string(sp.dim_minus) + ")";
      t.record("eigenvalue imbalance", kImbalance, std::abs(sp.dim_plus - sp.dim_minus), 1.0, where);
      t.record("eigenspaces", kEigenspaces, std::max(sp.angle_plus, sp.angle_minus), tol.residual_tol, where);
    } catch (const std::exception& e) {
      t.fail("eigenspaces", kEigenspaces, at_s(c.s) + ": " + e.what());
    }
  }
}

ClusterReport h_cluster(const HankelOperator& op, const SingularCluster& c, const AnalysisOptions& opt,
                        InvariantTable& t) {
  const Tolerances& tol = opt.tol;
  const std::string where = at_s(c.s);
  ClusterReport cr;
  cr.cluster = c;
  cr.multiplicity_h = c.multiplicity;

  try {
    const SchmidtSubspace sub = schmidt_subspace(op, c.s, Which::H, tol);
    const CMatrix& v = sub.basis;
    const CMatrix& g = op.matrix();
    const double scale = std::max(op.norm() * op.norm(), 1e-300);
    t.record("Schmidt subspace", kSchmidt, max_abs_entry(g * (g.adjoint() * v) - v * (sub.s * sub.s)) / scale,
             tol.subspace_tol, where);
    const CMatrix b = involution_fixed_basis(sub, op);
    t.record("Takagi frame", kTakagi, max_abs_entry(g * b.conjugate() / sub.s - b), tol.residual_tol, where);
  } catch (const std::exception& e) {
    cr.errors.push_back(e.what());
    t.fail("Takagi frame", kTakagi, where + ": " + e.what());
  }

  try {
    const DominanceResult dr = classify_dominance(op, c.s, tol);
    if (dr.e_k) cr.multiplicity_k = dr.e_k->multiplicity;
    t.record("dichotomy", kDichotomy, dichotomy_angle(op, dr), tol.residual_tol, where);
    t.record("shift relation", kShift, shift_relation_angle(op, dr), tol.residual_tol, where);
    if (dr.dominance == Dominance::H)
      t.record("projection of 1", kOnes, std::abs(dr.ones_s[0] - dr.ones_s.norm() * dr.ones_s.norm()), 1e-10, where);
  } catch (const std::exception& e) {
    cr.errors.push_back(e.what());
    t.fail("dichotomy", kDichotomy, where + ": " + e.what());
  }

  try {
    cr.decomposition = decompose(op, c.s, tol);
    const SchmidtDecomposition& d = *cr.decomposition;
    t.record("extraction", kExtraction, 0.0, 0.0, where);
    t.record("inner parameter", kInnerParameter, d.psi_relation_residual, tol.residual_tol, where);
    t.record("weighted model space", kModelSpace, d.subspace_angle, tol.residual_tol, where);
    t.record("isometric multiplier", kIsometry, d.isometry_residual, tol.residual_tol, where);
    t.record("intertwining", kIntertwining, d.intertwining_residual, tol.residual_tol, where);
    t.record("companion space", kCompanion, std::max(d.companion_angle, d.companion_residual), tol.residual_tol, where);
    if (!d.inner_factor_from_winding) t.record("inner-outer", kInnerOuter, d.outer_residual, tol.reconstruction_tol, where);
    cr.degree = verify_degree_count(op, d, tol);
    t.record("degree law", kDegree, std::abs(cr.degree->deg_phi - cr.degree->n_s), 0.0,
             where + " deg=" + std::to_string(cr.degree->deg_phi) + " n=" + std::to_string(cr.degree->n_s));
    t.record("restricted norm", kRestricted, std::abs(cr.degree->restricted_norm - d.s) / d.s, tol.norm_tol, where);
  } catch (const std::exception& e) {
    cr.errors.push_back(e.what());
    t.fail("extraction", kExtraction, where + ": " + e.what());
  }

  try {
    cr.aak = aak_certificate(op, c.s, tol, opt.grid);
    const AAKCertificate& a = *cr.aak;
    t.record("AAK certificate", kAAKCert, 0.0, 0.0, where);
    t.record("unimodular ratio", kUnimodular, a.phi.unimodularity, tol.unimodularity_tol, where);
    t.record("ratio independence", kIndependence, a.independence_residual, tol.residual_tol, where);
    if (cr.decomposition) {
      cr.aak_report = verify_aak_bounds(op, a, cr.decomposition->inner_factor, tol);
      const AAKReport& ar = *cr.aak_report;
      t.record("AAK rank", kAAKRank, std::abs(ar.rank - ar.n_s) + std::abs(ar.deg_phi - ar.n_s), 0.0,
               where + " rank=" + std::to_string(ar.rank));
      t.record("AAK error", kAAKError, ar.error_deviation, tol.norm_tol, where);
      t.record("AAK kernel", kAAKKernel, ar.kernel_residual, tol.residual_tol, where);
    }
  } catch (const std::exception& e) {
    cr.errors.push_back(e.what());
    t.fail("AAK certificate", kAAKCert, where + ": " + e.what());
  }
  return cr;
}

ClusterReport k_only_cluster(const HankelOperator& op, const SingularCluster& c, const Tolerances& tol,
                             InvariantTable& t) {
  const std::string where = at_s(c.s);
  ClusterReport cr;
  cr.cluster = c;
  cr.multiplicity_k = c.multiplicity;
  try {
    cr.inner_parameter = extract_inner_parameter(op, c.s, tol);
    t.record("K-only cluster", kKOnly, cr.inner_parameter->relation_residual, tol.residual_tol, where);
    const DominanceResult dr = classify_dominance(op, c.s, tol);
    t.record("dichotomy", kDichotomy, dichotomy_angle(op, dr), tol.residual_tol, where);
    t.record("shift relation", kShift, shift_relation_angle(op, dr), tol.residual_tol, where);
  } catch (const std::exception& e) {
    cr.errors.push_back(e.what());
    t.fail("K-only cluster", kKOnly, where + ": " + e.what());
  }
  return cr;
}

}  // namespace

// ---------------------------------------------------------------- InvariantTable

InvariantRow& InvariantTable::row(const std::string& name, const std::string& display) {
  for (InvariantRow& r : rows_)
    if (r.name == name) return r;
  InvariantRow& r = rows_.emplace_back();
  r.name = name;
  r.display = display;
  return r;
}

void InvariantTable::record(const std::string& name, const std::string& display, double residual, double tolerance,
                            const std::string& where) {
  InvariantRow& r = row(name, display);
  r.tolerance = tolerance;
  const bool good = residual <= tolerance;  // false for NaN
  if (r.checks == 0 || residual > r.residual || std::isnan(residual) || (!good && r.pass)) {
    r.residual = residual;
    if (r.pass || !good) r.detail = where;
  }
  r.pass = r.pass && good;
  ++r.checks;
}

void InvariantTable::fail(const std::string& name, const std::string& display, const std::string& why) {
  InvariantRow& r = row(name, display);
  if (r.pass) r.detail = why;
  r.pass = false;
  ++r.checks;
}

void InvariantTable::merge(const InvariantTable& other) {
  for (const InvariantRow& o : other.rows_) {
    InvariantRow& r = row(o.name, o.display);
    if (r.checks == 0) {
      r = o;
      continue;
    }
    r.tolerance = o.tolerance;
    if (o.residual > r.residual || std::isnan(o.residual)) {
      r.residual = o.residual;
      if (r.pass) r.detail = o.detail;
    }
    if (r.pass && !o.pass) r.detail = o.detail;
    r.pass = r.pass && o.pass;
    r.checks += o.checks;
  }
}

bool InvariantTable::ok() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const InvariantRow& r) { return r.pass; });
}

bool AnalysisReport::ok() const { return invariants.ok(); }

// ---------------------------------------------------------------- pipeline

int truncation_order(const RationalFunction& u, const AnalysisOptions& opt) {
  const int cap = std::max(opt.max_n, 8);
  if (opt.n > 0) return std::min(opt.n, cap);
  return choose_truncation(u, std::min(128, cap), cap);
}

HankelOperator build_operator(const SymbolSpec& spec, const AnalysisOptions& opt) {
  const RationalFunction u = build_symbol(spec);
  HankelOperator op = HankelOperator::from_rational(u, truncation_order(u, opt));
  if (opt.corruption != 0.0) return op.corrupted_for_testing(opt.corruption * std::max(op.norm(), 1.0));
  return op;
}

AnalysisReport analyze(const SymbolSpec& spec, const AnalysisOptions& opt) {
  return analyze(build_operator(spec, opt), spec, opt);
}

AnalysisReport analyze(const HankelOperator& op, const SymbolSpec& spec, const AnalysisOptions& opt) {
  const Tolerances& tol = opt.tol;
  AnalysisReport r;
  r.spec = spec;
  r.n = op.order();
  r.norm = op.norm();
  r.warnings = op.warnings();
  InvariantTable& t = r.invariants;
  global_rows(op, spec, t);

  try {
    r.clusters_h = singular_clusters(op, tol, Which::H);
    r.clusters_k = singular_clusters(op, tol, Which::K);
  } catch (const std::exception& e) {
    t.fail("clustering", kClustering, e.what());
    return r;
  }

  for (const SingularCluster& c : r.clusters_h) r.clusters.push_back(h_cluster(op, c, opt, t));
  for (const SingularCluster& c : r.clusters_k) {
    const bool paired = std::any_of(r.clusters_h.begin(), r.clusters_h.end(), [&](const SingularCluster& h) {
      return same_value(h.s, c.s, std::max(h.width, c.width), tol);
    });
    if (!paired) r.clusters.push_back(k_only_cluster(op, c, tol, t));
  }
  std::stable_sort(r.clusters.begin(), r.clusters.end(),
                   [](const ClusterReport& a, const ClusterReport& b) { return a.cluster.s > b.cluster.s; });

  const std::vector<PredictedCluster> pred = predicted_spectrum(spec);
  if (!pred.empty()) prediction_rows(r, pred, tol, t);
  if (spec.kind == SymbolKind::TwoSV) two_sv_rows(op, r, tol, t);
  if (real_symbol(op) && !r.clusters_h.empty()) selfadjoint_rows(op, r, tol, t);

  if (!r.clusters_h.empty() && op.rational_symbol()) {
    try {
      t.record("divisor stability", kDivisor, divisor_stability_residual(op, tol), tol.residual_tol,
               at_s(r.clusters_h.front().s));
    } catch (const std::exception& e) {
      t.fail("divisor stability", kDivisor, e.what());
    }
  }
  return r;
}

// ---------------------------------------------------------------- output

Json to_json(const InvariantRow& r) {
  return Json{{"name", r.name},   {"identity", r.display}, {"residual", r.residual}, {"tolerance", r.tolerance},
              {"pass", r.pass},   {"checks", r.checks},    {"detail", r.detail}};
}

Json to_json(const AnalysisReport& r) {
  Json j;
  j["symbol"] = to_json(r.spec);
  j["truncation"] = r.n;
  j["norm"] = r.norm;
  Json ch = Json::array(), ck = Json::array();
  for (const SingularCluster& c : r.clusters_h) ch.push_back(to_json(c));
  for (const SingularCluster& c : r.clusters_k) ck.push_back(to_json(c));
  j["clusters"] = ch;
  j["shifted_clusters"] = ck;
  Json cl = Json::array();
  for (const ClusterReport& c : r.clusters) {
    Json e{{"s", c.cluster.s}, {"dim_E_H", c.multiplicity_h}, {"dim_E_K", c.multiplicity_k}};
    if (c.decomposition) e["decomposition"] = to_json(*c.decomposition);
    if (c.inner_parameter) e["inner_parameter"] = to_json(*c.inner_parameter);
    if (c.degree) e["degree"] = to_json(*c.degree);
    if (c.aak) e["aak"] = to_json(*c.aak);
    if (c.aak_report) e["aak_check"] = to_json(*c.aak_report);
    if (!c.errors.empty()) e["errors"] = c.errors;
    cl.push_back(e);
  }
  j["schmidt"] = cl;
  Json rows = Json::array();
  for (const InvariantRow& row : r.invariants.rows()) rows.push_back(to_json(row));
  j["invariants"] = rows;
  j["warnings"] = r.warnings;
  j["pass"] = r.ok();
  return j;
}

std::string format_table(const InvariantTable& t) {
  std::string out;
  char buf[512];
  for (const InvariantRow& r : t.rows()) {
    std::snprintf(buf, sizeof buf, "%-4s %-22s %10.3e <= %-9.2e %-4d %s  [%s]\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                  r.residual, r.tolerance, r.checks, r.display.c_str(), r.detail.c_str());
    out += buf;
  }
  return out;
}

std::string plot_data_csv(const HankelOperator& op, const AnalysisReport& r, int grid_size) {
  const CircleGrid grid(grid_size > 0 ? grid_size : CircleGrid::for_order(op.order()).size());
  std::string out = "cluster,s,angle,u_re,u_im,p_re,p_im,theta_re,theta_im,phi_re,phi_im,ratio_re,ratio_im\n";
  const CVector u = op.rational_symbol() ? op.rational_symbol()->sample(grid) : grid.sample(op.symbol());
  int index = 0;
  char buf[64];
  auto put = [&](Complex c) {
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g", c.real(), c.imag());
    out += buf;
  };
  for (const ClusterReport& c : r.clusters) {
    if (!c.decomposition) continue;
    const SchmidtDecomposition& d = *c.decomposition;
    const CVector p = d.p_rational ? d.p_rational->sample(grid) : grid.sample(d.p_series);
    const CVector th = d.theta.sample(grid);
    const CVector ph = d.inner_factor.sample(grid);
    CVector ratio = CVector::Constant(grid.size(), Complex(std::numeric_limits<double>::quiet_NaN(), 0.0));
    if (c.aak && c.aak->phi.grid_size % grid.size() == 0) {
      const int stride = c.aak->phi.grid_size / grid.size();
      for (int k = 0; k < grid.size(); ++k) ratio(k) = c.aak->phi.samples(k * stride);
    }
    for (int k = 0; k < grid.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g", index, d.s, grid.angle(k));
      out += buf;
      put(u(k));
      put(p(k));
      put(th(k));
      put(ph(k));
      put(ratio(k));
      out += '\n';
    }
    ++index;
  }
  return out;
}

}  // namespace hankel_lab
