#pragma once

#include "surf4/catalog.hpp"
#include "surf4/frenet.hpp"
#include "surf4/invariants.hpp"
#include "surf4/surface_file.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace surf4::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kUsage = 1, kDegenerate = 2 };

inline constexpr double kDefaultTol = 1e-9;

/// A chart to work on, with the generating curve when it is a rotational fixture.
struct Source {
  std::string name;
  Chart chart;
  std::optional<RotationalCurve> rotational;
};

struct SourceOptions {
  std::optional<std::string> input;
  std::optional<std::string> fixture;
  std::optional<JetMode> jets;
  std::optional<double> fd_step;
};

/// Loads the surface file or fixture and applies the jet mode. The command line
/// overrides the file's jets and fd_step; a step only affects difference jets.
inline Source resolve_source(const SourceOptions& o) {
  if (o.input.has_value() == o.fixture.has_value()) throw InputError("exactly one of --input or --fixture is required");
  std::optional<JetMode> mode = o.jets;
  std::optional<double> step = o.fd_step;
  std::optional<Source> s;
  if (o.input) {
    const SurfaceFile surface = load_surface_file(*o.input);
    s = Source{surface.name, expr::compile_chart(surface.coords, surface.domain), std::nullopt};
    if (!mode) mode = surface.jets;
    if (!step) step = surface.fd_step;
  } else {
    const Fixture& f = fixture(*o.fixture);
    s = Source{f.name, f.chart, f.rotational};
  }
  if (mode == JetMode::FiniteDifference || (!mode && step && s->chart.source() == DerivativeSource::FiniteDifference)) {
    s->chart = s->chart.with_finite_differences(step);
  } else if (mode == JetMode::Analytic) {
    if (!s->chart.has_exact_jets()) throw InputError("'" + s->name + "' has no analytic jets");
    s->chart = s->chart.with_exact_jets();
  }
  return *s;
}

inline std::string format_real(double x, int digits = 17) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x == 0.0 ? 0.0 : x);
  return buf;
}

// ---------------------------------------------------------------------------
// scan

struct ScanRow {
  double u = 0, v = 0;
  double E = NAN, F = NAN, G = NAN;
  double L = NAN, M = NAN, N = NAN;
  double k = NAN, kappa = NAN, K = NAN;
  double scale = NAN;
  std::optional<PointClass> point_class;  // empty for a singular sample

  bool singular() const { return !point_class.has_value(); }
};

/// Class is decided from the double-precision k, kappa and scale so it can be
/// recomputed from the row.
inline ScanRow scan_row(const Chart& chart, double u, double v, double tol) {
  ScanRow r;
  r.u = u;
  r.v = v;
  try {
    const Jet2<double> jet = eval_jet2(chart, u, v);
    const Metric<double> m = metric(jet);
    const SecondFundamental<double> s = second_fundamental(jet, normal_frame(jet));
    const WeingartenForm<double> w = weingarten(m, s);
    const InvariantSet<double> inv = invariant_set(m, w, s, tol);
    const std::array<double, 10> fields{m.E, m.F, m.G, w.L, w.M, w.N, inv.k, inv.kappa, inv.K, inv.scale};
    if (!std::all_of(fields.begin(), fields.end(), [](double x) { return std::isfinite(x); })) return r;
    std::tie(r.E, r.F, r.G, r.L, r.M, r.N) = std::tuple{m.E, m.F, m.G, w.L, w.M, w.N};
    std::tie(r.k, r.kappa, r.K, r.scale) = std::tuple{inv.k, inv.kappa, inv.K, inv.scale};
    r.point_class = classify(inv.k, inv.kappa, inv.scale, tol);
  } catch (const DegenerateMetric&) {
  } catch (const EvalError&) {
  }
  return r;
}

inline constexpr const char* kScanHeader = "u,v,E,F,G,L,M,N,k,kappa,K,class";

inline std::string csv_line(const ScanRow& r) {
  std::string line;
  for (double x : {r.u, r.v, r.E, r.F, r.G, r.L, r.M, r.N, r.k, r.kappa, r.K}) line += format_real(x) + ",";
  line += r.point_class ? std::string(to_string(*r.point_class)) : "singular";
  return line;
}

struct ScanOptions {
  int nu = 16;
  int nv = 16;
  double tol = kDefaultTol;
};

/// Rows over the full nu x nv grid (endpoints included), v-major.
inline std::vector<ScanRow> scan(const Chart& chart, const ScanOptions& o) {
  if (o.nu < 2 || o.nv < 2) throw InputError("scan needs --nu and --nv of at least 2");
  if (!(o.tol >= 0)) throw InputError("--tol must be nonnegative");
  std::vector<ScanRow> rows;
  for (const auto& [u, v] : grid_points(chart.domain(), GridSpec{o.nu, o.nv, false}))
    rows.push_back(scan_row(chart, u, v, o.tol));
  return rows;
}

inline void write_histogram(const std::vector<ScanRow>& rows, std::ostream& out) {
  const std::array<std::pair<const char*, std::optional<PointClass>>, 5> bins{{{"flat", PointClass::Flat},
                                                                               {"elliptic", PointClass::Elliptic},
                                                                               {"parabolic", PointClass::Parabolic},
                                                                               {"hyperbolic", PointClass::Hyperbolic},
                                                                               {"singular", std::nullopt}}};
  const std::size_t total = std::max<std::size_t>(rows.size(), 1);
  out << "class histogram (" << rows.size() << " samples)\n";
  for (const auto& [label, cls] : bins) {
    const auto n = static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [&](const ScanRow& r) { return r.point_class == cls; }));
    out << "  " << std::left << std::setw(11) << label << std::right << std::setw(7) << n << "  "
        << std::string(n * 40 / total, '#') << '\n';
  }
}

/// Writes the table to `out_path` (or `out`) and the histogram to `out` when the
/// table went to a file, `err` otherwise. Returns 2 when any row is singular.
inline int cmd_scan(const Source& src, const ScanOptions& o, const std::optional<std::string>& out_path,
                    std::ostream& out, std::ostream& err) {
  const std::vector<ScanRow> rows = scan(src.chart, o);
  std::ofstream file;
  if (out_path) {
    file.open(*out_path);
    if (!file) throw InputError("cannot write '" + *out_path + "'");
  }
  std::ostream& table = out_path ? static_cast<std::ostream&>(file) : out;
  table << kScanHeader << '\n';
  for (const ScanRow& r : rows) table << csv_line(r) << '\n';
  table.flush();
  write_histogram(rows, out_path ? out : err);
  const bool singular = std::any_of(rows.begin(), rows.end(), [](const ScanRow& r) { return r.singular(); });
  if (singular) err << "warning: chart is singular at some samples\n";
  return singular ? kDegenerate : kOk;
}

// ---------------------------------------------------------------------------
// info

template <class Vec>
Json json_vector(const Vec& x) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) a.push_back(static_cast<double>(x(i)));
  return a;
}

inline Json json_matrix(const Mat2<double>& m) {
  return Json::array({Json::array({m(0, 0), m(0, 1)}), Json::array({m(1, 0), m(1, 1)})});
}

/// Full single-point report. Errors that make a later section undefined are
/// recorded in that section.
inline Json point_report(const Source& src, double u, double v, double tol) {
  const Jet2<double> jet = eval_jet2(src.chart, u, v);
  const Metric<double> m = metric(jet);
  const NormalFrame<double> frame = normal_frame(jet);
  const SecondFundamental<double> s = second_fundamental(jet, frame);
  const WeingartenForm<double> w = weingarten(m, s);
  const InvariantSet<double> inv = invariant_set(m, w, s, tol);

  Json j;
  j["surface"] = src.name;
  j["u"] = u;
  j["v"] = v;
  j["jets"] = src.chart.source() == DerivativeSource::Exact ? "analytic" : "fd";
  j["position"] = json_vector(jet.p);
  j["metric"] = {{"E", m.E}, {"F", m.F}, {"G", m.G}, {"W", m.W}};
  j["normal_frame"] = {{"e1", json_vector(frame.e1)}, {"e2", json_vector(frame.e2)}};
  j["second_fundamental"] = {{"c11", json_vector(s.c11)}, {"c12", json_vector(s.c12)}, {"c22", json_vector(s.c22)}};
  j["weingarten"] = {{"delta1", w.delta1}, {"delta2", w.delta2}, {"delta3", w.delta3}, {"L", w.L},
                     {"M", w.M},           {"N", w.N},           {"gamma", json_matrix(w.gamma)}};
  j["invariants"] = {{"k", inv.k},
                     {"kappa", inv.kappa},
                     {"K", inv.K},
                     {"scale", inv.scale},
                     {"class", std::string(to_string(inv.point_class))},
                     {"discriminant", inv.kappa * inv.kappa - inv.k}};
  const auto [r1, r2] = characteristic_roots(inv);
  j["roots"] = Json::array({r1, r2});

  try {
    const PrincipalDirections<double> d = principal_directions(m, w, tol);
    j["principal"] = {{"x", json_vector(tangent(jet, d.x))},
                      {"y", json_vector(tangent(jet, d.y))},
                      {"x_coefficients", json_vector(d.x)},
                      {"y_coefficients", json_vector(d.y)}};
  } catch (const PrincipalUndefined&) {
    j["principal"] = "undefined";
  }

  const Vec4<double> H = mean_curvature_vector(m, s);
  j["mean_curvature"] = {{"H", json_vector(H)}, {"norm", H.norm()}, {"minimal", is_minimal(inv, tol)}};

  try {
    const FrenetData<double> f = frenet_coefficients(src.chart, u, v, kDefaultFrameStep, tol);
    j["frenet"] = {{"nu1", f.nu1},       {"nu2", f.nu2},       {"lambda", f.lambda}, {"mu", f.mu},
                   {"beta1", f.beta1},   {"beta2", f.beta2},   {"gamma1", f.gamma1}, {"gamma2", f.gamma2}};
  } catch (const NotGeneralType&) {
    j["frenet"] = "not a general-type point";
  } catch (const Error& e) {
    j["frenet"] = std::string("unavailable: ") + e.what();
  }

  if (inv.point_class == PointClass::Flat) {
    try {
      const FlatPointReport fr = flat_point_analysis(src.chart, u, v);
      j["flat_point"] = {{"verdict", std::string(to_string(fr.verdict))},
                         {"beta", fr.beta},
                         {"beta1", fr.beta1},
                         {"beta2", fr.beta2},
                         {"K", fr.gauss_K}};
    } catch (const Error& e) {
      j["flat_point"] = std::string("unavailable: ") + e.what();
    }
  }

  if (src.rotational) {
    const RotationalInvariants c = rotational_closed_forms(*src.rotational, u);
    j["rotational"] = {{"r", c.r}, {"kappa1", c.kappa1}, {"k", c.k}, {"kappa", c.kappa}, {"K", c.K}};
  }
  return j;
}

inline std::string text_value(const Json& x) {
  if (x.is_number()) return format_real(x.get<double>(), 12);
  if (x.is_boolean()) return x.get<bool>() ? "true" : "false";
  if (x.is_string()) return x.get<std::string>();
  if (x.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + text_value(x[i]);
    return s + "]";
  }
  return x.dump();
}

/// One "section.key  value" line per leaf.
inline void render_text(const Json& j, std::ostream& out, const std::string& prefix = "") {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) render_text(value, out, prefix.empty() ? key : prefix + "." + key);
    return;
  }
  out << std::left << std::setw(28) << prefix << text_value(j) << '\n';
}

struct InfoOptions {
  std::optional<double> u;
  std::optional<double> v;
  double tol = kDefaultTol;
  bool json = false;
};

/// Reports at (u, v), defaulting to the middle of the domain.
inline int cmd_info(const Source& src, const InfoOptions& o, std::ostream& out) {
  const Domain& d = src.chart.domain();
  const double u = o.u.value_or(0.5 * (d.u.lo + d.u.hi));
  const double v = o.v.value_or(0.5 * (d.v.lo + d.v.hi));
  const Json report = point_report(src, u, v, o.tol);
  if (o.json) out << report.dump(2) << '\n';
  else render_text(report, out);
  return kOk;
}

// ---------------------------------------------------------------------------
// validate

struct Check {
  std::string name;
  double worst = 0.0;
  double bound = 0.0;
  bool pass = true;
  bool informative = false;  // reported only; never fails the run
  std::string note;
};

struct ValidateOptions {
  int nu = 16;
  int nv = 16;
  double tol = kDefaultTol;
  double residual_bound = 1e-3;
  double h_frame = kDefaultFrameStep;
  unsigned seed = 1;
};

namespace detail {

struct Sample {
  double u, v;
  Jet2<double> jet;
  Metric<double> m;
  NormalFrame<double> frame;
  SecondFundamental<double> s;
  WeingartenForm<double> w;
  InvariantSet<double> inv;
};

inline Sample sample_with_frame(const Jet2<double>& jet, const NormalFrame<double>& frame, double tol) {
  Sample p{};
  p.jet = jet;
  p.m = metric(jet);
  p.frame = frame;
  p.s = second_fundamental(jet, frame);
  p.w = weingarten(p.m, p.s);
  p.inv = invariant_set(p.m, p.w, p.s, tol);
  return p;
}

class Worst {
 public:
  explicit Worst(std::string name, double bound) : check_{std::move(name), 0.0, bound, true, false, {}} {}
  void add(double x) {
    if (std::isnan(x)) x = std::numeric_limits<double>::infinity();
    check_.worst = std::max(check_.worst, x);
    ++count_;
  }
  Check finish(std::string note = {}) {
    check_.pass = check_.worst <= check_.bound;
    check_.note = note.empty() ? std::to_string(count_) + " values" : std::move(note);
    return check_;
  }

 private:
  Check check_;
  std::size_t count_ = 0;
};

}  // namespace detail

/// The property suite: frame and parameter invariance, characteristic roots and
/// discriminant, frame identities, mean curvature norm, integrability residuals,
/// minimality agreement, and the rotational closed forms when the source has a curve.
inline std::vector<Check> validation_suite(const Source& src, const ValidateOptions& o) {
  if (o.nu < 1 || o.nv < 1) throw InputError("validate needs --nu and --nv of at least 1");
  using detail::Sample;
  using detail::Worst;
  const Chart& chart = src.chart;
  const bool exact = chart.source() == DerivativeSource::Exact;
  const GridSpec grid{o.nu, o.nv, true};
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  std::uniform_real_distribution<double> entry(-2.0, 2.0);

  std::vector<Sample> samples;
  std::size_t singular = 0;
  for (const auto& [u, v] : grid_points(chart.domain(), grid)) {
    try {
      const Jet2<double> jet = eval_jet2(chart, u, v);
      Sample p = detail::sample_with_frame(jet, normal_frame(jet), o.tol);
      p.u = u;
      p.v = v;
      samples.push_back(p);
    } catch (const DegenerateMetric&) {
      ++singular;
    } catch (const EvalError&) {
      ++singular;
    }
  }

  std::vector<Check> checks;
  {
    Check c{"regular samples", static_cast<double>(singular), 0.0, singular == 0, false, {}};
    c.note = std::to_string(samples.size()) + " of " + std::to_string(samples.size() + singular) + " regular";
    checks.push_back(c);
  }

  Worst rotation("normal frame rotation", 1e-9);
  Worst reparam("affine reparametrization", 1e-9);
  Worst roots("characteristic roots", 1e-9);
  Worst disc("discriminant", 1e-12);
  Worst identities("frame identities", 1e-8);
  Worst hnorm("mean curvature norm", 1e-6);
  std::size_t minimal_mismatch = 0, general = 0, flat = 0;

  for (const Sample& p : samples) {
    const double s2 = p.inv.scale * p.inv.scale;
    const auto rel = [](double a, double b) { return std::abs(a - b) / (1 + std::abs(b)); };
    for (int i = 0; i < 4; ++i) {
      const int eps = i % 2 == 0 ? 1 : -1;
      const Sample q = detail::sample_with_frame(p.jet, rotate_normal_frame(p.frame, angle(rng), eps), o.tol);
      rotation.add(std::max(rel(q.inv.k, p.inv.k), rel(q.inv.kappa, eps * p.inv.kappa)));
    }
    for (int i = 0; i < 4;) {
      Mat2<double> J;
      J << entry(rng), entry(rng), entry(rng), entry(rng);
      if (std::abs(J.determinant()) < 0.1) continue;
      ++i;
      const double sign_J = J.determinant() > 0 ? 1.0 : -1.0;
      const Sample q = detail::sample_with_frame(reparametrize_affine(p.jet, J), p.frame, o.tol);
      reparam.add(std::max(rel(q.inv.k, p.inv.k), rel(q.inv.kappa, sign_J * p.inv.kappa)));
    }

    const Eigen::EigenSolver<Mat2<double>> eig(p.w.gamma);
    for (Eigen::Index i = 0; i < 2; ++i) {
      const std::complex<double> nu = eig.eigenvalues()(i);
      roots.add(std::abs(nu * nu + 2.0 * p.inv.kappa * nu + p.inv.k) / s2);
    }
    disc.add(std::max(0.0, -(p.inv.kappa * p.inv.kappa - p.inv.k) / s2));

    const double H = mean_curvature_vector(p.m, p.s).norm();
    if (p.inv.point_class == PointClass::Flat) {
      ++flat;
      continue;
    }
    if (is_minimal(p.inv, o.tol) != (H <= 1e-6 * p.inv.scale)) ++minimal_mismatch;
    try {
      const FrenetFrame<double> f = geometric_frame(p.jet, p.m, p.w, p.s, o.tol);
      const FrenetData<double> d = pointwise_coefficients(p.s, f);
      ++general;
      identities.add(std::max({std::abs(p.inv.k + 4 * d.nu1 * d.nu2 * d.mu * d.mu),
                               std::abs(p.inv.kappa - (d.nu1 - d.nu2) * d.mu),
                               std::abs(p.inv.K - (d.nu1 * d.nu2 - d.lambda * d.lambda - d.mu * d.mu))}) /
                     s2);
      const double predicted = std::sqrt(p.inv.kappa * p.inv.kappa - p.inv.k) / (2 * std::abs(d.mu));
      hnorm.add(std::abs(H - predicted) / predicted);
    } catch (const NotGeneralType&) {
    }
  }
  const std::string general_note = std::to_string(general) + " general-type samples";
  checks.push_back(rotation.finish());
  checks.push_back(reparam.finish());
  checks.push_back(roots.finish());
  checks.push_back(disc.finish());
  checks.push_back(identities.finish(general_note));
  checks.push_back(hnorm.finish(general_note));
  checks.push_back(Check{"minimality agreement", static_cast<double>(minimal_mismatch), 0.0, minimal_mismatch == 0,
                         false, std::to_string(samples.size() - flat) + " non-flat samples"});

  {
    const ResidualReport r = integrability_residuals(chart, grid, o.h_frame, o.tol);
    const std::string note = std::to_string(r.evaluated) + " evaluated, " + std::to_string(r.skipped) + " skipped";
    Check integ{"integrability residuals", r.max_integrability(), o.residual_bound, true, false, note};
    Check normal{"normal curvature residual", r.normal_curvature, o.residual_bound, true, false, note};
    Check mean{"mean curvature residual", r.mean_curvature, 1e-6, true, false, note};
    for (Check* c : {&integ, &normal, &mean}) c->pass = r.evaluated == 0 || c->worst <= c->bound;
    if (r.evaluated == 0) integ.worst = normal.worst = mean.worst = 0.0;
    checks.insert(checks.end(), {integ, normal, mean});
  }

  {
    Check fnc{"flat normal connection", 0.0, 0.0, true, true, {}};
    try {
      const bool flat_connection = flat_normal_connection_test(chart, GridSpec{o.nu, o.nv, false}, o.tol);
      fnc.note = flat_connection ? "true" : "false";
      if (src.rotational) {
        fnc.informative = false;
        fnc.pass = flat_connection;
      }
    } catch (const InternalInconsistency& e) {
      fnc.informative = false;
      fnc.pass = false;
      fnc.note = e.what();
    } catch (const DegenerateMetric&) {
      fnc.note = "singular samples on the boundary grid";
    }
    checks.push_back(fnc);
  }

  if (flat > 0) {
    std::array<std::size_t, 4> verdicts{};
    std::size_t failed = 0;
    for (const Sample& p : samples) {
      if (p.inv.point_class != PointClass::Flat) continue;
      try {
        ++verdicts[static_cast<std::size_t>(flat_point_analysis(chart, p.u, p.v).verdict)];
      } catch (const Error&) {
        ++failed;
      }
    }
    std::string note;
    for (FlatVerdict fv : {FlatVerdict::TotallyGeodesicPlane, FlatVerdict::Planar, FlatVerdict::DevelopableRuled,
                           FlatVerdict::GenericFlat}) {
      const std::size_t n = verdicts[static_cast<std::size_t>(fv)];
      if (n) note += (note.empty() ? "" : ", ") + std::string(to_string(fv)) + "=" + std::to_string(n);
    }
    if (failed) note += (note.empty() ? "" : ", ") + std::string("undetermined=") + std::to_string(failed);
    checks.push_back(Check{"flat point verdicts", 0.0, 0.0, true, true, note});
  }

  if (src.rotational) {
    const double bound = exact ? 1e-8 : 1e-4;
    Worst oracle("rotational oracle", bound);
    Worst kappa("rotational kappa", exact ? 1e-9 : 1e-4);
    for (const Sample& p : samples) {
      const RotationalInvariants c = rotational_closed_forms(*src.rotational, p.u);
      oracle.add(std::abs(p.inv.k - c.k) / (1 + std::abs(c.k)));
      oracle.add(std::abs(p.inv.K - c.K) / (1 + std::abs(c.K)));
      kappa.add(std::abs(p.inv.kappa));
    }
    checks.push_back(oracle.finish());
    checks.push_back(kappa.finish());
  }
  return checks;
}

inline bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.informative || c.pass; });
}

inline void write_checks(const std::string& name, const std::vector<Check>& checks, bool json, std::ostream& out) {
  if (json) {
    Json j;
    j["surface"] = name;
    j["pass"] = all_pass(checks);
    j["checks"] = Json::array();
    for (const Check& c : checks) {
      j["checks"].push_back({{"name", c.name},
                             {"status", c.informative ? "info" : (c.pass ? "pass" : "fail")},
                             {"worst", c.worst},
                             {"bound", c.bound},
                             {"note", c.note}});
    }
    out << j.dump(2) << '\n';
    return;
  }
  out << "validation of " << name << '\n';
  out << std::left << std::setw(28) << "check" << std::setw(7) << "status" << std::setw(13) << "worst"
      << std::setw(11) << "bound"
      << "note\n";
  for (const Check& c : checks) {
    const std::string status = c.informative ? "info" : (c.pass ? "PASS" : "FAIL");
    out << std::left << std::setw(28) << c.name << std::setw(7) << status << std::setw(13)
        << (c.informative ? "-" : format_real(c.worst, 4)) << std::setw(11)
        << (c.informative ? "-" : format_real(c.bound, 3)) << c.note << '\n';
  }
  out << (all_pass(checks) ? "all checks passed" : "some checks FAILED") << '\n';
}

/// Exit 0 iff every check passes; a failing check is a numerical finding, so 2.
inline int cmd_validate(const Source& src, const ValidateOptions& o, bool json, std::ostream& out) {
  const std::vector<Check> checks = validation_suite(src, o);
  write_checks(src.name, checks, json, out);
  return all_pass(checks) ? kOk : kDegenerate;
}

// ---------------------------------------------------------------------------
// catalog

inline int cmd_catalog(bool json, std::ostream& out) {
  if (json) {
    Json list = Json::array();
    for (const Fixture& f : fixtures()) {
      const Domain& d = f.chart.domain();
      list.push_back({{"name", f.name},
                      {"description", f.description},
                      {"rotational", f.rotational.has_value()},
                      {"jets", f.chart.source() == DerivativeSource::Exact ? "analytic" : "fd"},
                      {"u", Json::array({d.u.lo, d.u.hi})},
                      {"v", Json::array({d.v.lo, d.v.hi})}});
    }
    out << list.dump(2) << '\n';
    return kOk;
  }
  for (const Fixture& f : fixtures()) out << std::left << std::setw(20) << f.name << f.description << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// command line

/// Parses argv and dispatches. Usage and input errors exit 1, numerical
/// degeneracy exits 2.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariants, point classes and Frenet frames of surfaces in E^4", "surf4"};
  app.require_subcommand(1);

  SourceOptions source;
  std::string jets;
  const auto add_source = [&](CLI::App* sub) {
    auto* in = sub->add_option("--input", source.input, "surface file (key=value format)");
    auto* fx = sub->add_option("--fixture", source.fixture, "built-in fixture name (see catalog)");
    in->excludes(fx);
    sub->add_option("--jets", jets, "derivative source")->check(CLI::IsMember({"analytic", "fd"}));
    sub->add_option("--fd-step", source.fd_step, "finite-difference step")->check(CLI::PositiveNumber);
  };

  ScanOptions scan_opt;
  std::optional<std::string> out_path;
  CLI::App* scan_cmd = app.add_subcommand("scan", "tabulate invariants over a grid as CSV");
  add_source(scan_cmd);
  scan_cmd->add_option("--nu", scan_opt.nu, "samples along u")->capture_default_str();
  scan_cmd->add_option("--nv", scan_opt.nv, "samples along v")->capture_default_str();
  scan_cmd->add_option("--tol", scan_opt.tol, "classification tolerance")->capture_default_str();
  scan_cmd->add_option("--out", out_path, "write the table here instead of stdout");

  InfoOptions info_opt;
  CLI::App* info_cmd = app.add_subcommand("info", "full report at one parameter point");
  add_source(info_cmd);
  info_cmd->add_option("--u", info_opt.u, "u coordinate (default: domain centre)");
  info_cmd->add_option("--v", info_opt.v, "v coordinate (default: domain centre)");
  info_cmd->add_option("--tol", info_opt.tol, "classification tolerance")->capture_default_str();
  info_cmd->add_flag("--json", info_opt.json, "machine-readable output");

  ValidateOptions val_opt;
  bool val_json = false;
  CLI::App* val_cmd = app.add_subcommand("validate", "run the property suite on an interior grid");
  add_source(val_cmd);
  val_cmd->add_option("--nu", val_opt.nu, "samples along u")->capture_default_str();
  val_cmd->add_option("--nv", val_opt.nv, "samples along v")->capture_default_str();
  val_cmd->add_option("--tol", val_opt.tol, "classification tolerance")->capture_default_str();
  val_cmd->add_flag("--json", val_json, "machine-readable output");

  bool cat_json = false;
  CLI::App* cat_cmd = app.add_subcommand("catalog", "list built-in fixtures");
  cat_cmd->add_flag("--json", cat_json, "machine-readable output");

  if (argc > 1 && argv[1][0] != '-') {
    const std::string name = argv[1];
    const auto subs = app.get_subcommands([](const CLI::App*) { return true; });
    if (std::none_of(subs.begin(), subs.end(), [&](const CLI::App* a) { return a->get_name() == name; })) {
      err << "unknown subcommand '" << name << "'\n" << app.help();
      return kUsage;
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (app.exit(e, out, err) == 0) return kOk;
    err << app.help();
    return kUsage;
  }

  try {
    if (!jets.empty()) source.jets = jets == "fd" ? JetMode::FiniteDifference : JetMode::Analytic;
    if (*cat_cmd) return cmd_catalog(cat_json, out);
    const Source src = resolve_source(source);
    if (*scan_cmd) return cmd_scan(src, scan_opt, out_path, out, err);
    if (*info_cmd) return cmd_info(src, info_opt, out);
    if (*val_cmd) return cmd_validate(src, val_opt, val_json, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnknownFixture& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "degenerate: " << e.what() << '\n';
    return kDegenerate;
  }
  err << app.help();
  return kUsage;
}

}  // namespace surf4::cli
