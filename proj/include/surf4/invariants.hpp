#pragma once

#include "surf4/chart.hpp"
#include "surf4/errors.hpp"
#include "surf4/linalg.hpp"

#include <array>
#include <cmath>
#include <string_view>
#include <utility>

namespace surf4 {

enum class PointClass { Flat, Elliptic, Parabolic, Hyperbolic };

inline std::string_view to_string(PointClass c) {
  switch (c) {
    case PointClass::Flat: return "flat";
    case PointClass::Elliptic: return "elliptic";
    case PointClass::Parabolic: return "parabolic";
    case PointClass::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

/// Orthonormal normal frame {e1, e2}. `orientation` is +1 for the canonical
/// construction and flips with every orientation-reversing change of frame.
template <class T>
struct NormalFrame {
  Vec4<T> e1 = Vec4<T>::Zero();
  Vec4<T> e2 = Vec4<T>::Zero();
  int orientation = 1;
};

/// c_ij = (c_ij^1, c_ij^2) in the normal frame, and sigma_ij = c_ij^1 e1 + c_ij^2 e2.
template <class T>
struct SecondFundamental {
  Vec2<T> c11 = Vec2<T>::Zero();
  Vec2<T> c12 = Vec2<T>::Zero();
  Vec2<T> c22 = Vec2<T>::Zero();
  Vec4<T> s11 = Vec4<T>::Zero();
  Vec4<T> s12 = Vec4<T>::Zero();
  Vec4<T> s22 = Vec4<T>::Zero();
};

/// Weingarten map gamma = -h g^{-1} with h = [[L, M], [M, N]].
template <class T>
struct WeingartenForm {
  T delta1{}, delta2{}, delta3{};
  T L{}, M{}, N{};
  Mat2<T> gamma = Mat2<T>::Zero();

  Mat2<T> h() const {
    Mat2<T> m;
    m << L, M, M, N;
    return m;
  }
};

template <class T>
struct InvariantSet {
  T k{};
  T kappa{};
  T K{};
  /// 1 + |sigma|^2; tolerances on kappa scale with it, tolerances on k with its square.
  T scale{1};
  PointClass point_class = PointClass::Flat;
};

/// Orthonormal tangent pair obtained by Gram-Schmidt on (z_u, z_v), as coefficient
/// vectors in the (z_u, z_v) basis. Depends only on the metric.
template <class T>
std::pair<Vec2<T>, Vec2<T>> orthonormal_coefficients(const Metric<T>& m) {
  using std::sqrt;
  const T sE = sqrt(m.E);
  return {Vec2<T>(T(1) / sE, T(0)), Vec2<T>(-m.F / (sE * m.W), sE / m.W)};
}

template <class T>
Vec4<T> tangent(const Jet2<T>& jet, const Vec2<T>& coeffs) {
  return coeffs(0) * jet.zu + coeffs(1) * jet.zv;
}

/// sigma(a, b) for tangent vectors given by coefficient vectors.
template <class T>
Vec4<T> sigma(const SecondFundamental<T>& s, const Vec2<T>& a, const Vec2<T>& b) {
  return a(0) * b(0) * s.s11 + (a(0) * b(1) + a(1) * b(0)) * s.s12 + a(1) * b(1) * s.s22;
}

/// Second fundamental form II = L a0 b0 + M (a0 b1 + a1 b0) + N a1 b1 as a bilinear form.
template <class T>
T second_form(const WeingartenForm<T>& wf, const Vec2<T>& a, const Vec2<T>& b) {
  return wf.L * a(0) * b(0) + wf.M * (a(0) * b(1) + a(1) * b(0)) + wf.N * a(1) * b(1);
}

template <class T>
T second_form_value(const WeingartenForm<T>& wf, T lam, T mu) {
  return wf.L * lam * lam + 2 * wf.M * lam * mu + wf.N * mu * mu;
}

/// Canonical normal frame: project the ambient basis onto the normal plane, take the
/// longest projection as e1, then the projection with the longest component orthogonal
/// to e1 as e2 (ties go to the lower ambient index), and orient so det[x y e1 e2] = +1.
template <class T>
NormalFrame<T> normal_frame(const Jet2<T>& jet) {
  using std::abs;
  const Metric<T> m = metric(jet);
  const auto [xc, yc] = orthonormal_coefficients(m);
  const Vec4<T> x = tangent(jet, xc);
  const Vec4<T> y = tangent(jet, yc);

  std::array<Vec4<T>, 4> proj;
  for (int i = 0; i < 4; ++i) {
    Vec4<T> e = Vec4<T>::Unit(i);
    proj[static_cast<std::size_t>(i)] = e - x(i) * x - y(i) * y;
  }
  const auto argmax = [](const std::array<T, 4>& norms, int skip) {
    int best = -1;
    for (int i = 0; i < 4; ++i) {
      if (i == skip) continue;
      if (best < 0 || norms[static_cast<std::size_t>(i)] > norms[static_cast<std::size_t>(best)] * (1 + T(1e-12)))
        best = i;
    }
    return best;
  };

  std::array<T, 4> norms;
  for (std::size_t i = 0; i < 4; ++i) norms[i] = proj[i].norm();
  const int first = argmax(norms, -1);
  NormalFrame<T> f;
  f.e1 = proj[static_cast<std::size_t>(first)] / norms[static_cast<std::size_t>(first)];

  std::array<Vec4<T>, 4> rest;
  for (std::size_t i = 0; i < 4; ++i) {
    rest[i] = proj[i] - proj[i].dot(f.e1) * f.e1;
    norms[i] = rest[i].norm();
  }
  const int second = argmax(norms, first);
  f.e2 = rest[static_cast<std::size_t>(second)] / norms[static_cast<std::size_t>(second)];
  if (det4(x, y, f.e1, f.e2) < 0) f.e2 = -f.e2;
  f.orientation = 1;
  return f;
}

/// The frame {e1~, e2~} related to `f` by e1 = cos(t) e1~ + eps sin(t) e2~,
/// e2 = -sin(t) e1~ + eps cos(t) e2~.
template <class T>
NormalFrame<T> rotate_normal_frame(const NormalFrame<T>& f, T theta, int eps) {
  using std::cos, std::sin;
  NormalFrame<T> r;
  r.e1 = cos(theta) * f.e1 - sin(theta) * f.e2;
  r.e2 = T(eps) * (sin(theta) * f.e1 + cos(theta) * f.e2);
  r.orientation = f.orientation * (eps < 0 ? -1 : 1);
  return r;
}

template <class T>
SecondFundamental<T> second_fundamental(const Jet2<T>& jet, const NormalFrame<T>& f) {
  SecondFundamental<T> s;
  s.c11 = Vec2<T>(jet.zuu.dot(f.e1), jet.zuu.dot(f.e2));
  s.c12 = Vec2<T>(jet.zuv.dot(f.e1), jet.zuv.dot(f.e2));
  s.c22 = Vec2<T>(jet.zvv.dot(f.e1), jet.zvv.dot(f.e2));
  s.s11 = s.c11(0) * f.e1 + s.c11(1) * f.e2;
  s.s12 = s.c12(0) * f.e1 + s.c12(1) * f.e2;
  s.s22 = s.c22(0) * f.e1 + s.c22(1) * f.e2;
  return s;
}

template <class T>
WeingartenForm<T> weingarten(const Metric<T>& m, const SecondFundamental<T>& s) {
  if (!(m.W > T(0))) throw DegenerateMetric("Weingarten map needs a regular metric");
  const auto det2 = [](const Vec2<T>& a, const Vec2<T>& b) { return a(0) * b(1) - b(0) * a(1); };
  WeingartenForm<T> w;
  w.delta1 = det2(s.c11, s.c12);
  w.delta2 = det2(s.c11, s.c22);
  w.delta3 = det2(s.c12, s.c22);
  w.L = 2 * w.delta1 / m.W;
  w.M = w.delta2 / m.W;
  w.N = 2 * w.delta3 / m.W;
  const T d = m.det();
  const T E = m.E, F = m.F, G = m.G, L = w.L, M = w.M, N = w.N;
  w.gamma << (F * M - G * L) / d, (F * L - E * M) / d,  //
      (F * N - G * M) / d, (F * M - E * N) / d;
  return w;
}

/// |sigma|^2 summed over an orthonormal tangent basis.
template <class T>
T sigma_norm_sq(const Metric<T>& m, const SecondFundamental<T>& s) {
  const auto [xc, yc] = orthonormal_coefficients(m);
  return sigma(s, xc, xc).squaredNorm() + 2 * sigma(s, xc, yc).squaredNorm() + sigma(s, yc, yc).squaredNorm();
}

template <class T>
PointClass classify(T k, T kappa, T scale, double tol) {
  using std::abs;
  const T tk = T(tol) * scale * scale;
  if (abs(k) <= tk && abs(kappa) <= T(tol) * scale) return PointClass::Flat;
  if (k > tk) return PointClass::Elliptic;
  if (k < -tk) return PointClass::Hyperbolic;
  return PointClass::Parabolic;
}

/// k = det gamma, kappa = -tr(gamma)/2, and the Gauss curvature from the Gauss equation.
template <class T>
InvariantSet<T> invariant_set(const Metric<T>& m, const WeingartenForm<T>& w, const SecondFundamental<T>& s,
                              double tol) {
  const T d = m.det();
  if (!(d > T(0))) throw DegenerateMetric("invariants need a regular metric");
  InvariantSet<T> inv;
  inv.k = (w.L * w.N - w.M * w.M) / d;
  inv.kappa = (m.E * w.N + m.G * w.L - 2 * m.F * w.M) / (2 * d);
  inv.K = (s.s11.dot(s.s22) - s.s12.squaredNorm()) / d;
  inv.scale = T(1) + sigma_norm_sq(m, s);
  inv.point_class = classify(inv.k, inv.kappa, inv.scale, tol);
  return inv;
}

/// Roots of nu^2 + 2 kappa nu + k = 0, largest first.
template <class T>
std::pair<T, T> characteristic_roots(const InvariantSet<T>& inv) {
  using std::sqrt;
  T disc = inv.kappa * inv.kappa - inv.k;
  if (disc < -T(1e-12) * inv.scale * inv.scale)
    throw InternalInconsistency("kappa^2 - k is negative beyond rounding");
  if (disc < 0) disc = 0;
  const T r = sqrt(disc);
  return {-inv.kappa + r, -inv.kappa - r};
}

template <class T>
Vec4<T> mean_curvature_vector(const Metric<T>& m, const SecondFundamental<T>& s) {
  const T d = m.det();
  if (!(d > T(0))) throw DegenerateMetric("mean curvature needs a regular metric");
  return (m.G * s.s11 - 2 * m.F * s.s12 + m.E * s.s22) / (2 * d);
}

template <class T>
bool is_minimal(const InvariantSet<T>& inv, double tol) {
  return inv.kappa * inv.kappa - inv.k <= T(tol) * inv.scale * inv.scale;
}

/// Eigen-directions of the second fundamental form in an orthonormal tangent basis.
/// `major` carries the larger value of II.
template <class T>
struct PrincipalAxes {
  Vec2<T> major = Vec2<T>::Zero();
  Vec2<T> minor = Vec2<T>::Zero();
  T kappa{};
  T discriminant{};  // kappa^2 - k
  T scale{1};
};

template <class T>
PrincipalAxes<T> principal_axes(const Metric<T>& m, const WeingartenForm<T>& w) {
  using std::atan2, std::cos, std::sin, std::sqrt;
  const auto [xc, yc] = orthonormal_coefficients(m);
  const T a = second_form(w, xc, xc);
  const T b = second_form(w, xc, yc);
  const T c = second_form(w, yc, yc);
  const T theta = atan2(2 * b, a - c) / 2;
  PrincipalAxes<T> p;
  p.major = cos(theta) * xc + sin(theta) * yc;
  p.minor = -sin(theta) * xc + cos(theta) * yc;
  p.kappa = (a + c) / 2;
  p.discriminant = (a - c) * (a - c) / 4 + b * b;
  p.scale = T(1) + sqrt(a * a + 2 * b * b + c * c);
  return p;
}

template <class T>
struct PrincipalDirections {
  Vec2<T> x = Vec2<T>::Zero();  // coefficients in (z_u, z_v); unit for g
  Vec2<T> y = Vec2<T>::Zero();
};

/// Principal tangents: the solutions of
///   |E F; L M| l^2 + |E G; L N| l m + |F G; M N| m^2 = 0.
/// x is the direction along which <sigma(x,x), b> is the larger (nu1 >= nu2); when the
/// two coincide (kappa ~ 0) x is the one with the larger II, which makes mu > 0.
/// (x, y) has the orientation of (z_u, z_v).
template <class T>
PrincipalDirections<T> principal_directions(const Metric<T>& m, const WeingartenForm<T>& w, double tol) {
  using std::abs;
  const PrincipalAxes<T> ax = principal_axes(m, w);
  if (ax.discriminant <= T(tol) * ax.scale * ax.scale)
    throw PrincipalUndefined("every tangent is principal (L, M, N proportional to E, F, G)");

  // nu1 - nu2 = kappa / mu and II(x) - II(y) = 4 |H| mu, so nu1 >= nu2 selects by sign of kappa.
  Vec2<T> x = (ax.kappa < -T(tol) * ax.scale) ? ax.minor : ax.major;

  const auto [xc, yc] = orthonormal_coefficients(m);
  // orthonormal coordinates of x: x = alpha xc + beta yc
  Mat2<T> basis;
  basis << xc, yc;
  Vec2<T> ab = basis.inverse() * x;
  if (ab(0) < -T(1e-12) || (abs(ab(0)) <= T(1e-12) && ab(1) < 0)) ab = -ab;
  PrincipalDirections<T> d;
  d.x = basis * ab;
  d.y = basis * Vec2<T>(-ab(1), ab(0));
  if (abs(d.x.dot(m.matrix() * d.y)) > T(1e-10))
    throw InternalInconsistency("principal directions are not orthogonal");
  return d;
}

// ---------------------------------------------------------------------------
// flat points

enum class FlatVerdict { TotallyGeodesicPlane, Planar, DevelopableRuled, GenericFlat };

inline std::string_view to_string(FlatVerdict v) {
  switch (v) {
    case FlatVerdict::TotallyGeodesicPlane: return "totally-geodesic-plane";
    case FlatVerdict::Planar: return "planar";
    case FlatVerdict::DevelopableRuled: return "developable-ruled";
    case FlatVerdict::GenericFlat: return "generic-flat";
  }
  return "?";
}

struct FlatPointReport {
  double beta = 0.0;  // beta1^2 + beta2^2
  double beta1 = 0.0;
  double beta2 = 0.0;
  double gauss_K = 0.0;
  FlatVerdict verdict = FlatVerdict::GenericFlat;
};

namespace detail {

struct FlatLocal {
  Jet2<wide> jet;
  Vec2<wide> xc, yc;
  Vec4<wide> x, y, b;
  bool totally_geodesic = false;
  InvariantSet<wide> inv;
};

inline FlatLocal flat_local(const Chart& chart, wide u, wide v, double tol) {
  FlatLocal f;
  f.jet = chart.jet(u, v);
  const Metric<wide> m = metric(f.jet);
  const SecondFundamental<wide> s = second_fundamental(f.jet, normal_frame(f.jet));
  f.inv = invariant_set(m, weingarten(m, s), s, tol);
  std::tie(f.xc, f.yc) = orthonormal_coefficients(m);
  f.x = tangent(f.jet, f.xc);
  f.y = tangent(f.jet, f.yc);
  // at a flat point sigma has rank one; b spans its image
  f.totally_geodesic = true;
  for (const Vec4<wide>& sv : {sigma(s, f.xc, f.xc), sigma(s, f.xc, f.yc), sigma(s, f.yc, f.yc)}) {
    if (sv.norm() > wide(tol)) {
      f.b = sv.normalized();
      f.totally_geodesic = false;
      break;
    }
  }
  return f;
}

}  // namespace detail

/// Classifies a flat point: totally geodesic, planar (beta = 0), developable ruled (K = 0)
/// or neither. beta1, beta2 come from central differences of the b-field along the
/// orthonormal tangents, with b's sign aligned to the centre.
inline FlatPointReport flat_point_analysis(const Chart& chart, double u, double v, double tol = 1e-6,
                                           double h_frame = 1e-4) {
  if (!chart.domain().contains(u, v)) throw DomainError("flat_point_analysis: point outside chart domain");
  const detail::FlatLocal c = detail::flat_local(chart, u, v, tol);
  if (c.inv.point_class != PointClass::Flat) throw NotFlatPoint("point is not flat (k or kappa nonzero)");

  FlatPointReport r;
  r.gauss_K = static_cast<double>(c.inv.K);
  if (c.totally_geodesic) {
    r.verdict = FlatVerdict::TotallyGeodesicPlane;
    return r;
  }
  const Vec4<wide> l = cross4(c.x, c.y, c.b).normalized();
  const wide h = h_frame;
  const auto b_at = [&](const Vec2<wide>& dir, wide s) {
    const detail::FlatLocal n = detail::flat_local(chart, u + s * h * dir(0), v + s * h * dir(1), tol);
    if (n.totally_geodesic) throw GaugeBreak("b-field vanishes next to a flat point");
    return n.b.dot(c.b) < 0 ? Vec4<wide>(-n.b) : n.b;
  };
  const wide beta1 = ((b_at(c.xc, 1) - b_at(c.xc, -1)) / (2 * h)).dot(l);
  const wide beta2 = ((b_at(c.yc, 1) - b_at(c.yc, -1)) / (2 * h)).dot(l);
  r.beta1 = static_cast<double>(beta1);
  r.beta2 = static_cast<double>(beta2);
  r.beta = static_cast<double>(beta1 * beta1 + beta2 * beta2);

  if (r.beta <= tol) {
    r.verdict = FlatVerdict::Planar;
  } else if (std::abs(r.gauss_K) <= tol) {
    r.verdict = FlatVerdict::DevelopableRuled;
  } else {
    r.verdict = FlatVerdict::GenericFlat;
  }
  return r;
}

}  // namespace surf4
