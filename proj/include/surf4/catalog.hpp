#pragma once

#include "surf4/chart.hpp"
#include "surf4/errors.hpp"
#include "surf4/exprlang.hpp"
#include "surf4/linalg.hpp"

#include <Eigen/Geometry>
#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace surf4 {

// ---------------------------------------------------------------------------
// space curves c(u) = (x1, x2, r) for rotational surfaces

/// Position and first three derivatives of a space curve.
struct CurveJet {
  Vec3<wide> c = Vec3<wide>::Zero();
  Vec3<wide> d1 = Vec3<wide>::Zero();
  Vec3<wide> d2 = Vec3<wide>::Zero();
  Vec3<wide> d3 = Vec3<wide>::Zero();
};

using CurveJetFn = std::function<CurveJet(wide)>;

inline constexpr double kArcLengthTol = 1e-8;

namespace detail {

// 8-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<long double, 4> kGaussNodes{0.1834346424956498049394761L, 0.5255324099163289858177390L,
                                                        0.7966664774136267395915539L, 0.9602898564975362316835609L};
inline constexpr std::array<long double, 4> kGaussWeights{0.3626837833783619829651504L, 0.3137066458778872873379622L,
                                                          0.2223810344533744705443560L, 0.1012285362903762591525314L};

/// Cumulative arc length of a curve given in an arbitrary regular parameter t, with
/// Newton inversion s -> t.
class ArcLengthTable {
 public:
  ArcLengthTable(CurveJetFn raw, Interval t, int panels) : raw_(std::move(raw)), t_(t), panels_(panels) {
    dt_ = static_cast<wide>(t_.width()) / panels_;
    cum_.assign(static_cast<std::size_t>(panels_) + 1, 0);
    for (int i = 0; i < panels_; ++i) {
      const wide a = t_.lo + i * dt_;
      cum_[static_cast<std::size_t>(i) + 1] = cum_[static_cast<std::size_t>(i)] + integral(a, a + dt_);
    }
  }

  wide length() const { return cum_.back(); }

  wide parameter_at(wide s) const {
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    const std::ptrdiff_t idx = std::clamp<std::ptrdiff_t>(it - cum_.begin() - 1, 0, panels_ - 1);
    const std::size_t i = static_cast<std::size_t>(idx);
    const wide a = t_.lo + static_cast<wide>(idx) * dt_;
    const wide span = cum_[i + 1] - cum_[i];
    wide t = a + (s - cum_[i]) / span * dt_;
    for (int iter = 0; iter < 20; ++iter) {
      const wide f = cum_[i] + integral(a, t) - s;
      const wide step = f / raw_(t).d1.norm();
      t -= step;
      if (std::abs(step) <= 8 * std::numeric_limits<wide>::epsilon() * (1 + std::abs(t))) break;
    }
    return t;
  }

  /// Jet in arc length at s.
  CurveJet jet(wide s) const {
    const CurveJet j = raw_(parameter_at(s));
    const wide sp = j.d1.norm();
    const wide dot12 = j.d1.dot(j.d2);
    const wide st = dot12 / sp;
    const wide stt = (j.d2.squaredNorm() + j.d1.dot(j.d3)) / sp - dot12 * dot12 / (sp * sp * sp);
    const wide sp2 = sp * sp, sp3 = sp2 * sp, sp4 = sp3 * sp, sp5 = sp4 * sp;
    CurveJet r;
    r.c = j.c;
    r.d1 = j.d1 / sp;
    r.d2 = j.d2 / sp2 - j.d1 * (st / sp3);
    r.d3 = j.d3 / sp3 - j.d2 * (3 * st / sp4) - j.d1 * (stt / sp4) + j.d1 * (3 * st * st / sp5);
    return r;
  }

 private:
  wide integral(wide a, wide b) const {
    const wide mid = (a + b) / 2, half = (b - a) / 2;
    wide sum = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      sum += kGaussWeights[k] * (raw_(mid + half * kGaussNodes[k]).d1.norm() + raw_(mid - half * kGaussNodes[k]).d1.norm());
    }
    return sum * half;
  }

  CurveJetFn raw_;
  Interval t_;
  int panels_;
  wide dt_;
  std::vector<wide> cum_;
};

inline wide max_speed_defect(const CurveJetFn& f, const Interval& t, int samples = 65) {
  wide worst = 0;
  for (int i = 0; i < samples; ++i) {
    const wide tt = t.lo + static_cast<wide>(t.width()) * i / (samples - 1);
    worst = std::max(worst, std::abs(f(tt).d1.norm() - 1));
  }
  return worst;
}

}  // namespace detail

/// Generating curve c(u) = (x1(u), x2(u), r(u)) of a rotational surface, held in arc
/// length. Curves supplied in another parameter are reparametrized numerically
/// (cumulative Gauss-Legendre quadrature and Newton inversion).
class RotationalCurve {
 public:
  /// Curve from its jet in parameter t over `t`; reparametrized unless already unit speed.
  static RotationalCurve from_jet(CurveJetFn raw, Interval t, bool exact = true, int panels = 256) {
    if (!t.valid()) throw std::invalid_argument("curve interval must be finite and nonempty");
    RotationalCurve c;
    c.exact_ = exact;
    if (detail::max_speed_defect(raw, t) <= kArcLengthTol) {
      c.jet_ = std::move(raw);
      c.interval_ = t;
      return c;
    }
    for (int i = 0; i <= 64; ++i) {
      if (!(raw(t.lo + static_cast<wide>(t.width()) * i / 64).d1.norm() > 1e-12L))
        throw ArcLengthViolation("curve has a stationary point; cannot reparametrize by arc length");
    }
    auto table = std::make_shared<const detail::ArcLengthTable>(std::move(raw), t, panels);
    c.interval_ = Interval{0.0, static_cast<double>(table->length())};
    c.jet_ = [table](wide s) { return table->jet(s); };
    c.reparametrized_ = true;
    return c;
  }

  /// Curve from expressions in the variable u.
  static RotationalCurve from_expressions(const std::string& x1, const std::string& x2, const std::string& r,
                                          Interval t) {
    using namespace expr;
    struct Derivs {
      std::array<std::array<Expr, 3>, 4> d;  // d[order][component]
    };
    auto e = std::make_shared<Derivs>();
    const std::array<Expr, 3> base{parse(x1), parse(x2), parse(r)};
    for (std::size_t i = 0; i < 3; ++i) {
      e->d[0][i] = base[i];
      for (std::size_t k = 1; k < 4; ++k) e->d[k][i] = differentiate(e->d[k - 1][i], Var::U);
    }
    auto raw = [e](wide t) {
      const auto v3 = [&](std::size_t k) {
        return Vec3<wide>(evaluate<wide>(e->d[k][0], t, 0), evaluate<wide>(e->d[k][1], t, 0),
                          evaluate<wide>(e->d[k][2], t, 0));
      };
      return CurveJet{v3(0), v3(1), v3(2), v3(3)};
    };
    return from_jet(raw, t, true);
  }

  /// Curve from a position sampler; derivatives by central differences.
  static RotationalCurve from_position(std::function<Vec3<wide>(wide)> position, Interval t,
                                       std::optional<double> step = std::nullopt) {
    const wide h = step.value_or(1e-4 * std::max(1.0, t.width()));
    const wide h3 = 10 * h;
    auto raw = [position, h, h3](wide s) {
      CurveJet j;
      j.c = position(s);
      const Vec3<wide> p = position(s + h), m = position(s - h);
      j.d1 = (p - m) / (2 * h);
      j.d2 = (p - 2 * j.c + m) / (h * h);
      j.d3 = (position(s + 2 * h3) - 2 * position(s + h3) + 2 * position(s - h3) - position(s - 2 * h3)) /
             (2 * h3 * h3 * h3);
      return j;
    };
    return from_jet(raw, t, false);
  }

  /// Curve taken as given in arc length; nothing is checked until a chart is built.
  static RotationalCurve arc_length(CurveJetFn jet, Interval s, bool exact = true) {
    if (!s.valid()) throw std::invalid_argument("curve interval must be finite and nonempty");
    RotationalCurve c;
    c.jet_ = std::move(jet);
    c.interval_ = s;
    c.exact_ = exact;
    return c;
  }

  const Interval& interval() const { return interval_; }
  bool exact() const { return exact_; }
  bool reparametrized() const { return reparametrized_; }
  CurveJet jet(wide s) const { return jet_(s); }

 private:
  RotationalCurve() = default;

  CurveJetFn jet_;
  Interval interval_;
  bool exact_ = true;
  bool reparametrized_ = false;
};

/// Curvature of the space curve.
inline double curvature(const RotationalCurve& c, double s) {
  const CurveJet j = c.jet(s);
  const wide sp = j.d1.norm();
  const wide k = j.d1.cross(j.d2).norm() / (sp * sp * sp);
  if (!(k > 1e-12L)) throw CurvatureVanishes("curve curvature vanishes");
  return static_cast<double>(k);
}

inline double torsion(const RotationalCurve& c, double s) {
  const CurveJet j = c.jet(s);
  const Vec3<wide> b = j.d1.cross(j.d2);
  if (!(b.norm() > 1e-12L)) throw CurvatureVanishes("curve curvature vanishes; torsion undefined");
  return static_cast<double>(b.dot(j.d3) / b.squaredNorm());
}

/// Signed curvature x1' x2'' - x1'' x2' of the projection to the (x1, x2) plane.
inline double plane_curvature(const RotationalCurve& c, double s) {
  const CurveJet j = c.jet(s);
  return static_cast<double>(j.d1(0) * j.d2(1) - j.d2(0) * j.d1(1));
}

/// Checks r > 0 and unit speed at evenly spaced samples.
inline void check_rotational_curve(const RotationalCurve& c, int samples = 65) {
  const Interval& iv = c.interval();
  for (int i = 0; i < samples; ++i) {
    const wide s = iv.lo + static_cast<wide>(iv.width()) * i / (samples - 1);
    const CurveJet j = c.jet(s);
    if (!(j.c(2) > 0)) throw NonPositiveRadius("rotational profile r(u) must stay positive");
    if (std::abs(j.d1.squaredNorm() - 1) > kArcLengthTol)
      throw ArcLengthViolation("generating curve is not parameterized by arc length");
  }
}

/// z(u,v) = (x1(u), x2(u), r(u) cos v, r(u) sin v), v in [0, 2 pi].
inline Chart rotational_chart(const RotationalCurve& c) {
  check_rotational_curve(c);
  const Domain d{c.interval(), {0.0, 2 * std::numbers::pi}};
  auto position = [c](wide u, wide v) {
    const Vec3<wide> p = c.jet(u).c;
    return Vec4<wide>(p(0), p(1), p(2) * std::cos(v), p(2) * std::sin(v));
  };
  if (!c.exact()) return Chart::sampled(position, d);
  auto jet = [c](wide u, wide v) {
    const CurveJet j = c.jet(u);
    const wide cv = std::cos(v), sv = std::sin(v);
    const wide r = j.c(2), r1 = j.d1(2), r2 = j.d2(2);
    Jet2<wide> z;
    z.p = Vec4<wide>(j.c(0), j.c(1), r * cv, r * sv);
    z.zu = Vec4<wide>(j.d1(0), j.d1(1), r1 * cv, r1 * sv);
    z.zv = Vec4<wide>(0, 0, -r * sv, r * cv);
    z.zuu = Vec4<wide>(j.d2(0), j.d2(1), r2 * cv, r2 * sv);
    z.zuv = Vec4<wide>(0, 0, -r1 * sv, r1 * cv);
    z.zvv = Vec4<wide>(0, 0, -r * cv, -r * sv);
    return z;
  };
  return Chart::exact(position, jet, d);
}

// ---------------------------------------------------------------------------
// closed forms

/// How the square root in the closed form for lambda is read.
enum class LambdaReading { RootDivides, RootMultiplies };

struct RotationalCoefficients {
  double nu = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  LambdaReading reading = LambdaReading::RootDivides;
};

struct RotationalInvariants {
  double k = 0.0;
  double kappa = 0.0;
  double K = 0.0;
  double r = 0.0;
  double kappa1 = 0.0;
  /// Frame coefficients; absent where the curve's curvature vanishes.
  std::optional<RotationalCoefficients> frame;
};

/// Closed-form invariants of the rotational surface at arc length u:
/// k = -kappa1^2 / r^2, kappa = 0, K = -r''/r, and with Q = sqrt((kappa^2 r - r'')^2 + kappa1^2)
/// nu = Q/(2 kappa r), mu = kappa kappa1 / Q, gamma1 = gamma2 = -(sqrt2/2) r'/r and
/// lambda = (kappa^4 r^2 - r''^2 - kappa1^2) / (2 kappa r) combined with Q. Which way Q
/// enters lambda is decided by K = nu^2 - lambda^2 - mu^2.
inline RotationalInvariants rotational_closed_forms(const RotationalCurve& c, double u) {
  const CurveJet j = c.jet(u);
  if (std::abs(j.d1.squaredNorm() - 1) > kArcLengthTol)
    throw ArcLengthViolation("closed forms need an arc-length generating curve");
  if (!(j.c(2) > 0)) throw NonPositiveRadius("rotational profile r(u) must stay positive");
  const wide r = j.c(2), r1 = j.d1(2), r2 = j.d2(2);
  const wide k1 = j.d1(0) * j.d2(1) - j.d2(0) * j.d1(1);
  RotationalInvariants out;
  out.r = static_cast<double>(r);
  out.kappa1 = static_cast<double>(k1);
  out.k = static_cast<double>(-k1 * k1 / (r * r));
  out.kappa = 0.0;
  out.K = static_cast<double>(-r2 / r);

  const wide kap = j.d1.cross(j.d2).norm();
  if (!(kap > 1e-12L)) return out;
  const wide Q = std::sqrt((kap * kap * r - r2) * (kap * kap * r - r2) + k1 * k1);
  const wide numer = kap * kap * kap * kap * r * r - r2 * r2 - k1 * k1;
  RotationalCoefficients f;
  const wide nu = Q / (2 * kap * r);
  const wide mu = kap * k1 / Q;
  const wide lam_div = numer / (2 * kap * r * Q);
  const wide lam_mul = numer * Q / (2 * kap * r);
  const wide K = -r2 / r;
  const auto gauss_gap = [&](wide lam) { return std::abs(nu * nu - lam * lam - mu * mu - K); };
  const wide tol = 1e-9L * (1 + nu * nu + mu * mu + std::abs(K));
  if (gauss_gap(lam_div) <= tol) {
    f.lambda = static_cast<double>(lam_div);
    f.reading = LambdaReading::RootDivides;
  } else if (gauss_gap(lam_mul) <= tol * (1 + lam_mul * lam_mul)) {
    f.lambda = static_cast<double>(lam_mul);
    f.reading = LambdaReading::RootMultiplies;
  } else {
    throw InternalInconsistency("neither reading of the lambda closed form satisfies the Gauss equation");
  }
  f.nu = static_cast<double>(nu);
  f.mu = static_cast<double>(mu);
  f.gamma1 = f.gamma2 = static_cast<double>(-std::sqrt(wide(2)) / 2 * r1 / r);
  out.frame = f;
  return out;
}

// ---------------------------------------------------------------------------
// constant k

/// Generating curve with r = a kappa1, so that k = -1/a^2. The plane part is integrated
/// from its heading phi: (x1', x2') = w (cos phi, sin phi), w = sqrt(1 - r'^2),
/// phi' = kappa1 / w^2, by fixed-step RK4; the curve starts at (1, 0) heading along x2.
inline RotationalCurve constant_k_family(double a, const expr::Expr& kappa1, Interval s, int steps = 2048) {
  using namespace expr;
  if (a == 0.0 || !std::isfinite(a)) throw InfeasibleProfile("constant-k family needs a nonzero scale a");
  if (!s.valid() || steps < 1) throw std::invalid_argument("constant-k family needs a valid interval");

  struct Profile {
    std::array<Expr, 4> k;  // kappa1 and three derivatives
    wide a;
    wide lo, h;
    std::vector<std::array<wide, 3>> nodes;  // phi, x1, x2

    // r and its derivatives, w and its derivatives, phi' and phi''
    struct Local {
      wide r, r1, r2, w, w1, w2, p1, p2;
    };
    Local local(wide t) const {
      const wide k0 = evaluate<wide>(k[0], t, 0), k1 = evaluate<wide>(k[1], t, 0);
      const wide k2 = evaluate<wide>(k[2], t, 0), k3 = evaluate<wide>(k[3], t, 0);
      Local l;
      l.r = a * k0;
      l.r1 = a * k1;
      l.r2 = a * k2;
      const wide r3 = a * k3;
      const wide w2sq = 1 - l.r1 * l.r1;
      if (!(w2sq > 1e-12L)) throw InfeasibleProfile("profile violates |r'| < 1");
      l.w = std::sqrt(w2sq);
      l.w1 = -l.r1 * l.r2 / l.w;
      l.w2 = -(l.r2 * l.r2 + l.r1 * r3) / l.w - l.r1 * l.r1 * l.r2 * l.r2 / (l.w * l.w * l.w);
      l.p1 = k0 / w2sq;
      l.p2 = k1 / w2sq - 2 * k0 * l.w1 / (w2sq * l.w);
      return l;
    }
    std::array<wide, 3> rhs(wide t, wide phi) const {
      const Local l = local(t);
      return {l.p1, l.w * std::cos(phi), l.w * std::sin(phi)};
    }
    std::array<wide, 3> step(wide t, const std::array<wide, 3>& y, wide dt) const {
      const auto add = [](const std::array<wide, 3>& p, const std::array<wide, 3>& q, wide f) {
        return std::array<wide, 3>{p[0] + f * q[0], p[1] + f * q[1], p[2] + f * q[2]};
      };
      const auto s1 = rhs(t, y[0]);
      const auto s2 = rhs(t + dt / 2, add(y, s1, dt / 2)[0]);
      const auto s3 = rhs(t + dt / 2, add(y, s2, dt / 2)[0]);
      const auto s4 = rhs(t + dt, add(y, s3, dt)[0]);
      std::array<wide, 3> out;
      for (std::size_t i = 0; i < 3; ++i) out[i] = y[i] + dt / 6 * (s1[i] + 2 * s2[i] + 2 * s3[i] + s4[i]);
      return out;
    }
  };

  auto p = std::make_shared<Profile>();
  p->k[0] = kappa1;
  for (std::size_t i = 1; i < 4; ++i) p->k[i] = differentiate(p->k[i - 1], Var::U);
  p->a = a;
  p->lo = s.lo;
  p->h = static_cast<wide>(s.width()) / steps;
  p->nodes.resize(static_cast<std::size_t>(steps) + 1);
  p->nodes[0] = {std::numbers::pi_v<wide> / 2, 1, 0};
  for (int i = 0; i < steps; ++i) {
    const wide t = p->lo + i * p->h;
    const Profile::Local l = p->local(t);
    if (!(l.r > 0)) throw NonPositiveRadius("r = a kappa1 must stay positive");
    p->nodes[static_cast<std::size_t>(i) + 1] = p->step(t, p->nodes[static_cast<std::size_t>(i)], p->h);
  }
  if (!(p->local(s.hi).r > 0)) throw NonPositiveRadius("r = a kappa1 must stay positive");

  auto jet = [p, steps](wide t) {
    const wide x = (t - p->lo) / p->h;
    const int i = std::clamp(static_cast<int>(std::floor(x + 0.5L)), 0, steps);
    const wide ti = p->lo + i * p->h;
    const std::array<wide, 3> y = p->step(ti, p->nodes[static_cast<std::size_t>(i)], t - ti);
    const Profile::Local l = p->local(t);
    const wide c = std::cos(y[0]), s = std::sin(y[0]);
    CurveJet j;
    j.c = Vec3<wide>(y[1], y[2], l.r);
    j.d1 = Vec3<wide>(l.w * c, l.w * s, l.r1);
    j.d2 = Vec3<wide>(l.w1 * c - l.w * l.p1 * s, l.w1 * s + l.w * l.p1 * c, l.r2);
    const wide r3 = p->a * evaluate<wide>(p->k[3], t, 0);
    j.d3 = Vec3<wide>(l.w2 * c - 2 * l.w1 * l.p1 * s - l.w * l.p2 * s - l.w * l.p1 * l.p1 * c,
                      l.w2 * s + 2 * l.w1 * l.p1 * c + l.w * l.p2 * c - l.w * l.p1 * l.p1 * s, r3);
    return j;
  };
  RotationalCurve curve = RotationalCurve::arc_length(jet, s, true);
  check_rotational_curve(curve);
  for (int i = 0; i <= 64; ++i) {
    const wide t = s.lo + static_cast<wide>(s.width()) * i / 64;
    const CurveJet j = curve.jet(t);
    const wide k1 = j.d1(0) * j.d2(1) - j.d2(0) * j.d1(1);
    if (std::abs(j.c(2) - p->a * k1) > 1e-9L * (1 + std::abs(j.c(2))))
      throw InternalInconsistency("generated curve does not satisfy r = a kappa1");
  }
  return curve;
}

inline RotationalCurve constant_k_family(double a, const std::string& kappa1, Interval s, int steps = 2048) {
  return constant_k_family(a, expr::parse(kappa1), s, steps);
}

// ---------------------------------------------------------------------------
// ruled surfaces z(u,v) = x(v) + u e(v)

struct SpaceCurveJet {
  Vec4<wide> p = Vec4<wide>::Zero();
  Vec4<wide> d1 = Vec4<wide>::Zero();
  Vec4<wide> d2 = Vec4<wide>::Zero();
};

using SpaceCurveFn = std::function<SpaceCurveJet(wide)>;

struct RuledData {
  SpaceCurveFn directrix;  // x(v)
  SpaceCurveFn director;   // e(v), unit
  Interval u;
  Interval v;
  bool developable = false;
};

inline SpaceCurveFn space_curve(const std::array<std::string, 4>& coords) {
  using namespace expr;
  auto e = std::make_shared<std::array<std::array<Expr, 4>, 3>>();
  for (std::size_t i = 0; i < 4; ++i) {
    (*e)[0][i] = parse(coords[i]);
    (*e)[1][i] = differentiate((*e)[0][i], Var::V);
    (*e)[2][i] = differentiate((*e)[1][i], Var::V);
  }
  return [e](wide t) {
    const auto v4 = [&](std::size_t k) {
      Vec4<wide> r;
      for (std::size_t i = 0; i < 4; ++i) r(static_cast<int>(i)) = evaluate<wide>((*e)[k][i], wide(0), t);
      return r;
    };
    return SpaceCurveJet{v4(0), v4(1), v4(2)};
  };
}

/// True iff e, e', x' are linearly dependent at every sample: the smallest singular
/// value of the column-normalized 4x3 matrix is at most 1e-8.
inline bool is_developable(const SpaceCurveFn& x, const SpaceCurveFn& e, const Interval& v, int samples = 64) {
  for (int i = 0; i < samples; ++i) {
    const wide t = v.lo + static_cast<wide>(v.width()) * i / (samples - 1);
    const SpaceCurveJet xe = x(t), ee = e(t);
    Eigen::Matrix<double, 4, 3> m = Eigen::Matrix<double, 4, 3>::Zero();
    int cols = 0;
    for (const Vec4<wide>* col : {&ee.p, &ee.d1, &xe.d1}) {
      const wide n = col->norm();
      if (n <= 1e-12L) break;  // a vanishing column makes the triple dependent
      m.col(cols++) = (*col / n).cast<double>();
    }
    if (cols < 3) continue;
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd{Eigen::MatrixXd(m)};
    if (svd.singularValues()(2) > 1e-8) return false;
  }
  return true;
}

inline RuledData ruled_data(SpaceCurveFn directrix, SpaceCurveFn director, Interval u, Interval v) {
  if (!u.valid() || !v.valid()) throw std::invalid_argument("ruled surface needs valid intervals");
  for (int i = 0; i <= 64; ++i) {
    const wide t = v.lo + static_cast<wide>(v.width()) * i / 64;
    if (std::abs(director(t).p.norm() - 1) > 1e-10L) throw DegenerateRuling("director e(v) must be a unit vector");
  }
  RuledData rd{std::move(directrix), std::move(director), u, v, false};
  rd.developable = is_developable(rd.directrix, rd.director, v);
  return rd;
}

inline RuledData ruled_data(const std::array<std::string, 4>& directrix, const std::array<std::string, 4>& director,
                            Interval u, Interval v) {
  return ruled_data(space_curve(directrix), space_curve(director), u, v);
}

/// Throws DegenerateRuling where e and x' + u e' are dependent.
inline void check_ruling(const RuledData& rd, double u, double v) {
  const SpaceCurveJet x = rd.directrix(v), e = rd.director(v);
  const Vec4<wide> zv = x.d1 + static_cast<wide>(u) * e.d1;
  Jet2<wide> j;
  j.zu = e.p;
  j.zv = zv;
  if (!regularity(j)) throw DegenerateRuling("ruling is tangent to the directrix direction here");
}

inline Chart ruled_chart(const RuledData& rd) {
  const Domain d{rd.u, rd.v};
  auto position = [rd](wide u, wide v) { return Vec4<wide>(rd.directrix(v).p + u * rd.director(v).p); };
  auto jet = [rd](wide u, wide v) {
    const SpaceCurveJet x = rd.directrix(v), e = rd.director(v);
    Jet2<wide> z;
    z.p = x.p + u * e.p;
    z.zu = e.p;
    z.zv = x.d1 + u * e.d1;
    z.zuu = Vec4<wide>::Zero();
    z.zuv = e.d1;
    z.zvv = x.d2 + u * e.d2;
    return z;
  };
  return Chart::exact(position, jet, d);
}

// ---------------------------------------------------------------------------
// named fixtures

struct Fixture {
  std::string name;
  std::string description;
  Chart chart;
  std::optional<RotationalCurve> rotational;
};

namespace detail {

inline Fixture expression_fixture(std::string name, std::string description, std::array<std::string, 4> coords,
                                  Domain d) {
  return Fixture{std::move(name), std::move(description), expr::compile_chart(coords, d), std::nullopt};
}

inline Fixture rotational_fixture(std::string name, std::string description, RotationalCurve c) {
  Chart chart = rotational_chart(c);
  return Fixture{std::move(name), std::move(description), std::move(chart), std::move(c)};
}

inline std::vector<Fixture> build_fixtures() {
  constexpr double pi = std::numbers::pi;
  std::vector<Fixture> f;
  f.push_back(expression_fixture("plane", "plane (u, v, 0, 0); totally geodesic", {"u", "v", "0", "0"},
                                 {{-1, 1}, {-1, 1}}));
  f.push_back(rotational_fixture("clifford", "Clifford torus (cos u, sin u, cos v, sin v); k = -1, kappa = 0",
                                 RotationalCurve::from_expressions("cos(u)", "sin(u)", "1", {0, 2 * pi})));
  f.push_back(expression_fixture("minimal-graph", "holomorphic graph (u, v, u^2 - v^2, 2uv); minimal",
                                 {"u", "v", "u^2 - v^2", "2*u*v"}, {{-1, 1}, {-1, 1}}));
  f.push_back(expression_fixture("parabolic-graph", "graph (u, v, uv, u^2/2); parabolic at the origin",
                                 {"u", "v", "u*v", "u^2/2"}, {{-1, 1}, {-1, 1}}));
  f.push_back(expression_fixture("sphere", "unit sphere in the hyperplane x4 = 0; flat points, planar",
                                 {"cos(u)*cos(v)", "cos(u)*sin(v)", "sin(u)", "0"}, {{-1.2, 1.2}, {0, 2 * pi}}));
  {
    RuledData rd = ruled_data({"cos(v)", "sin(v)", "cos(2*v)/2", "sin(2*v)/2"},
                              {"-sin(v)/sqrt(2)", "cos(v)/sqrt(2)", "-sin(2*v)/sqrt(2)", "cos(2*v)/sqrt(2)"},
                              {0.5, 2.0}, {0, 2 * pi});
    f.push_back(Fixture{"developable", "tangent developable of (cos v, sin v, cos 2v/2, sin 2v/2); developable ruled",
                        ruled_chart(rd), std::nullopt});
  }
  {
    RuledData rd = ruled_data({"cos(v)", "sin(v)", "v", "0"}, {"-sin(v)/sqrt(2)", "cos(v)/sqrt(2)", "1/sqrt(2)", "0"},
                              {0.5, 2.0}, {0, 2 * pi});
    f.push_back(Fixture{"helix-developable", "tangent developable of a helix in E^3; flat, planar", ruled_chart(rd),
                        std::nullopt});
  }
  f.push_back(rotational_fixture("rot-generic",
                                 "rotational surface of (cos t, sin t, 2 + sin t), reparametrized by arc length",
                                 RotationalCurve::from_expressions("cos(u)", "sin(u)", "2 + sin(u)", {0, 2 * pi})));
  f.push_back(rotational_fixture("cylinder", "rotational surface of the line (u, 0, 1); k = 0",
                                 RotationalCurve::from_expressions("u", "0", "1", {-1, 1})));
  f.push_back(rotational_fixture("const-k", "rotational surface with r = kappa1, kappa1 = 1.5 + 0.3 sin u; k = -1",
                                 constant_k_family(1.0, "1.5 + 0.3*sin(u)", {0, 2 * pi})));
  return f;
}

}  // namespace detail

/// All named fixtures, built once.
inline const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = detail::build_fixtures();
  return all;
}

inline const Fixture& fixture(std::string_view name) {
  for (const Fixture& f : fixtures())
    if (f.name == name) return f;
  throw UnknownFixture("unknown fixture '" + std::string(name) + "'");
}

}  // namespace surf4
