#pragma once

#include "surf4/chart.hpp"
#include "surf4/errors.hpp"
#include "surf4/invariants.hpp"
#include "surf4/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace surf4 {

inline constexpr double kDefaultFrameStep = 1e-4;
inline constexpr double kDefaultGeneralTol = 1e-9;

/// Principal tangents x, y and normals b = H/|H|, l with det[x y b l] = +1.
template <class T>
struct FrenetFrame {
  Vec4<T> x = Vec4<T>::Zero();
  Vec4<T> y = Vec4<T>::Zero();
  Vec4<T> b = Vec4<T>::Zero();
  Vec4<T> l = Vec4<T>::Zero();
  Vec2<T> x_coeffs = Vec2<T>::Zero();  // x = x_coeffs(0) z_u + x_coeffs(1) z_v
  Vec2<T> y_coeffs = Vec2<T>::Zero();
};

/// Coefficients of the derivative formulas
///   x(x) = g1 y + n1 b,        y(x) = -g2 y + l b + m l,
///   x(y) = -g1 x + l b + m l,  y(y) = g2 x + n2 b,
///   x(b) = -n1 x - l y + b1 l, y(b) = -l x - n2 y + b2 l,
///   x(l) = -m y - b1 b,        y(l) = -m x - b2 b.
template <class T>
struct FrenetData {
  T nu1{}, nu2{}, lambda{}, mu{};
  T beta1{}, beta2{}, gamma1{}, gamma2{};

  template <class S>
  FrenetData<S> cast() const {
    return {S(nu1), S(nu2), S(lambda), S(mu), S(beta1), S(beta2), S(gamma1), S(gamma2)};
  }
};

struct ResidualReport {
  /// Max-abs residual of each integrability condition.
  std::array<double, 6> integrability{};
  /// Max-abs of kappa + x(beta2) - y(beta1) + gamma1 beta1 - gamma2 beta2.
  double normal_curvature = 0.0;
  /// Max relative error of |H| = sqrt(kappa^2 - k) / (2|mu|).
  double mean_curvature = 0.0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;

  double max_integrability() const {
    return std::max(*std::max_element(integrability.begin(), integrability.end()), normal_curvature);
  }
};

template <class T>
FrenetFrame<T> geometric_frame(const Jet2<T>& jet, const Metric<T>& m, const WeingartenForm<T>& wf,
                               const SecondFundamental<T>& sff, double tol = kDefaultGeneralTol) {
  const InvariantSet<T> inv = invariant_set(m, wf, sff, tol);
  if (inv.point_class == PointClass::Flat) throw NotGeneralType("flat point has no geometric frame");
  if (is_minimal(inv, tol)) throw NotGeneralType("minimal point has no geometric frame");
  PrincipalDirections<T> pd;
  try {
    pd = principal_directions(m, wf, tol);
  } catch (const PrincipalUndefined& e) {
    throw NotGeneralType(e.what());
  }
  const Vec4<T> H = mean_curvature_vector(m, sff);
  FrenetFrame<T> f;
  f.x_coeffs = pd.x;
  f.y_coeffs = pd.y;
  f.x = tangent(jet, pd.x);
  f.y = tangent(jet, pd.y);
  f.b = H / H.norm();
  f.l = cross4(f.x, f.y, f.b).normalized();
  return f;
}

/// nu1, nu2, lambda, mu at a point; the frame-derivative fields are left zero.
template <class T>
FrenetData<T> pointwise_coefficients(const SecondFundamental<T>& sff, const FrenetFrame<T>& f) {
  const Vec4<T> sxx = sigma(sff, f.x_coeffs, f.x_coeffs);
  const Vec4<T> sxy = sigma(sff, f.x_coeffs, f.y_coeffs);
  const Vec4<T> syy = sigma(sff, f.y_coeffs, f.y_coeffs);
  FrenetData<T> d;
  d.nu1 = sxx.dot(f.b);
  d.nu2 = syy.dot(f.b);
  d.lambda = sxy.dot(f.b);
  d.mu = sxy.dot(f.l);
  return d;
}

namespace detail {

struct FrenetLocal {
  Jet2<wide> jet;
  Metric<wide> m;
  SecondFundamental<wide> s;
  WeingartenForm<wide> w;
  InvariantSet<wide> inv;
};

inline FrenetLocal frenet_local(const Chart& chart, wide u, wide v, double tol) {
  FrenetLocal p;
  p.jet = chart.jet(u, v);
  p.m = metric(p.jet);
  p.s = second_fundamental(p.jet, normal_frame(p.jet));
  p.w = weingarten(p.m, p.s);
  p.inv = invariant_set(p.m, p.w, p.s, tol);
  return p;
}

/// The geometric frame at a neighbouring point, with the principal pair chosen and
/// signed by continuity with `ref` rather than by the nu1 >= nu2 convention.
inline FrenetFrame<wide> aligned_frame(const FrenetLocal& p, const FrenetFrame<wide>& ref, double tol) {
  const PrincipalAxes<wide> ax = principal_axes(p.m, p.w);
  if (ax.discriminant <= wide(tol) * ax.scale * ax.scale) throw NotGeneralType("umbilic-type point in stencil");
  const Vec4<wide> H = mean_curvature_vector(p.m, p.s);
  if (H.norm() <= wide(tol) * p.inv.scale) throw NotGeneralType("minimal point in stencil");

  const Vec4<wide> a = tangent(p.jet, ax.major);
  const Vec4<wide> c = tangent(p.jet, ax.minor);
  FrenetFrame<wide> f;
  const bool major_is_x = std::abs(a.dot(ref.x)) >= std::abs(c.dot(ref.x));
  f.x_coeffs = major_is_x ? ax.major : ax.minor;
  f.y_coeffs = major_is_x ? ax.minor : ax.major;
  f.x = major_is_x ? a : c;
  if (f.x.dot(ref.x) < 0) {
    f.x_coeffs = -f.x_coeffs;
    f.x = -f.x;
  }
  if (f.x_coeffs(0) * f.y_coeffs(1) - f.x_coeffs(1) * f.y_coeffs(0) < 0) f.y_coeffs = -f.y_coeffs;
  f.y = tangent(p.jet, f.y_coeffs);
  f.b = H / H.norm();
  f.l = cross4(f.x, f.y, f.b).normalized();
  if (f.x.dot(ref.x) < 0.5L || f.b.dot(ref.b) < 0.5L) throw GaugeBreak("frame field is discontinuous across the stencil");
  return f;
}

/// All eight coefficients at (u,v) for the given frame there. Frame derivatives are
/// central differences along x and y with step h measured in arc length.
inline FrenetData<wide> coefficients_with_frame(const Chart& chart, wide u, wide v, const FrenetLocal& p,
                                                const FrenetFrame<wide>& f, wide h, double tol) {
  FrenetData<wide> d = pointwise_coefficients(p.s, f);
  const wide lxx = sigma(p.s, f.x_coeffs, f.x_coeffs).dot(f.l);
  const wide lyy = sigma(p.s, f.y_coeffs, f.y_coeffs).dot(f.l);
  if (std::abs(lxx) + std::abs(lyy) > 1e-6L * p.inv.scale)
    throw InternalInconsistency("sigma(x,x) or sigma(y,y) has an l-component");

  const auto frame_at = [&](const Vec2<wide>& dir, wide s) {
    return aligned_frame(frenet_local(chart, u + s * h * dir(0), v + s * h * dir(1), tol), f, tol);
  };
  const FrenetFrame<wide> xp = frame_at(f.x_coeffs, 1), xm = frame_at(f.x_coeffs, -1);
  const FrenetFrame<wide> yp = frame_at(f.y_coeffs, 1), ym = frame_at(f.y_coeffs, -1);
  d.beta1 = ((xp.b - xm.b) / (2 * h)).dot(f.l);
  d.beta2 = ((yp.b - ym.b) / (2 * h)).dot(f.l);
  d.gamma1 = ((xp.x - xm.x) / (2 * h)).dot(f.y);
  d.gamma2 = ((yp.y - ym.y) / (2 * h)).dot(f.x);
  return d;
}

}  // namespace detail

inline FrenetData<double> frenet_coefficients(const Chart& chart, double u, double v,
                                              double h_frame = kDefaultFrameStep, double tol = kDefaultGeneralTol) {
  if (!chart.domain().contains(u, v)) throw DomainError("frenet_coefficients: point outside chart domain");
  if (!(h_frame > 0.0)) throw std::invalid_argument("frame step must be positive");
  const detail::FrenetLocal p = detail::frenet_local(chart, u, v, tol);
  const FrenetFrame<wide> f = geometric_frame(p.jet, p.m, p.w, p.s, tol);
  return detail::coefficients_with_frame(chart, u, v, p, f, h_frame, tol).cast<double>();
}

/// Evaluates the integrability conditions, the normal-curvature identity and the |H|
/// identity on a grid. Directional derivatives x(f), y(f) of the coefficient fields are
/// central differences with the same step as the frame derivatives. Points that are not
/// of general type (or whose stencil crosses such a point) are skipped and counted.
inline ResidualReport integrability_residuals(const Chart& chart, const GridSpec& grid,
                                              double h_frame = kDefaultFrameStep,
                                              double tol = kDefaultGeneralTol) {
  using detail::FrenetLocal;
  if (!(h_frame > 0.0)) throw std::invalid_argument("frame step must be positive");
  const wide h = h_frame;
  ResidualReport rep;
  for (const auto& [u0, v0] : grid_points(chart.domain(), grid)) {
    try {
      const FrenetLocal p = detail::frenet_local(chart, u0, v0, tol);
      const FrenetFrame<wide> f = geometric_frame(p.jet, p.m, p.w, p.s, tol);
      const FrenetData<wide> c = detail::coefficients_with_frame(chart, u0, v0, p, f, h, tol);

      const auto field_at = [&](const Vec2<wide>& dir, wide s) {
        const wide u = u0 + s * h * dir(0), v = v0 + s * h * dir(1);
        const FrenetLocal q = detail::frenet_local(chart, u, v, tol);
        return detail::coefficients_with_frame(chart, u, v, q, detail::aligned_frame(q, f, tol), h, tol);
      };
      const FrenetData<wide> xp = field_at(f.x_coeffs, 1), xm = field_at(f.x_coeffs, -1);
      const FrenetData<wide> yp = field_at(f.y_coeffs, 1), ym = field_at(f.y_coeffs, -1);
      const auto dx = [&](wide FrenetData<wide>::*field) { return (xp.*field - xm.*field) / (2 * h); };
      const auto dy = [&](wide FrenetData<wide>::*field) { return (yp.*field - ym.*field) / (2 * h); };
      using D = FrenetData<wide>;

      const wide n1 = c.nu1, n2 = c.nu2, lam = c.lambda, mu = c.mu;
      const wide b1 = c.beta1, b2 = c.beta2, g1 = c.gamma1, g2 = c.gamma2;
      std::array<wide, 6> r{
          n1 * n2 - (lam * lam + mu * mu) - (dx(&D::gamma2) + dy(&D::gamma1) - g1 * g1 - g2 * g2),
          2 * mu * g2 + n1 * b2 - lam * b1 - dx(&D::mu),
          2 * mu * g1 - lam * b2 + n2 * b1 - dy(&D::mu),
          2 * lam * g2 + mu * b1 - (n1 - n2) * g1 - (dx(&D::lambda) - dy(&D::nu1)),
          2 * lam * g1 + mu * b2 + (n1 - n2) * g2 - (-dx(&D::nu2) + dy(&D::lambda)),
          g1 * b1 - g2 * b2 + (n1 - n2) * mu - (-dx(&D::beta2) + dy(&D::beta1)),
      };
      const wide rk = p.inv.kappa + dx(&D::beta2) - dy(&D::beta1) + g1 * b1 - g2 * b2;
      const wide Hn = mean_curvature_vector(p.m, p.s).norm();
      const wide Hid = std::sqrt(std::max(wide(0), p.inv.kappa * p.inv.kappa - p.inv.k)) / (2 * std::abs(mu));

      for (std::size_t i = 0; i < 6; ++i)
        rep.integrability[i] = std::max(rep.integrability[i], static_cast<double>(std::abs(r[i])));
      rep.normal_curvature = std::max(rep.normal_curvature, static_cast<double>(std::abs(rk)));
      rep.mean_curvature = std::max(rep.mean_curvature, static_cast<double>(std::abs(Hn - Hid) / Hid));
      ++rep.evaluated;
    } catch (const NotGeneralType&) {
      ++rep.skipped;
    } catch (const GaugeBreak&) {
      ++rep.skipped;
    } catch (const DegenerateMetric&) {
      ++rep.skipped;
    }
  }
  return rep;
}

/// True iff |kappa| <= tol at every regular grid point (boundary included). When it holds,
/// general-type points must also have nu1 = nu2.
inline bool flat_normal_connection_test(const Chart& chart, const GridSpec& grid, double tol = 1e-9) {
  for (const auto& [u, v] : grid_points(chart.domain(), grid)) {
    const Jet2<wide> jet = chart.jet(u, v);
    if (!regularity(jet)) continue;
    const Metric<wide> m = metric(jet);
    const SecondFundamental<wide> s = second_fundamental(jet, normal_frame(jet));
    const WeingartenForm<wide> w = weingarten(m, s);
    const InvariantSet<wide> inv = invariant_set(m, w, s, tol);
    if (std::abs(inv.kappa) > wide(tol)) return false;
  }
  for (const auto& [u, v] : grid_points(chart.domain(), grid)) {
    const Jet2<wide> jet = chart.jet(u, v);
    if (!regularity(jet)) continue;
    const Metric<wide> m = metric(jet);
    const SecondFundamental<wide> s = second_fundamental(jet, normal_frame(jet));
    const WeingartenForm<wide> w = weingarten(m, s);
    try {
      const FrenetData<wide> d = pointwise_coefficients(s, geometric_frame(jet, m, w, s, tol));
      const wide scale = invariant_set(m, w, s, tol).scale;
      if (std::abs(d.nu1 - d.nu2) > 1e-6L * scale)
        throw InternalInconsistency("flat normal connection but nu1 != nu2 at a general-type point");
    } catch (const NotGeneralType&) {
    }
  }
  return true;
}

}  // namespace surf4
