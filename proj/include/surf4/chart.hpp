#pragma once

#include "surf4/errors.hpp"
#include "surf4/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace surf4 {

inline constexpr double kDefaultRegularityTol = 1e-12;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool valid() const { return std::isfinite(lo) && std::isfinite(hi) && lo < hi; }
};

/// Rectangular parameter domain [u.lo, u.hi] x [v.lo, v.hi].
struct Domain {
  Interval u;
  Interval v;

  double extent() const { return std::max(u.width(), v.width()); }

  /// Closed-rectangle membership with a few ulps of slack for grid endpoints.
  bool contains(double uu, double vv) const {
    const double su = 1e-12 * std::max(1.0, u.width());
    const double sv = 1e-12 * std::max(1.0, v.width());
    return uu >= u.lo - su && uu <= u.hi + su && vv >= v.lo - sv && vv <= v.hi + sv;
  }
};

/// Position and the five first/second partials of an immersion at one parameter point.
template <class T>
struct Jet2 {
  Vec4<T> p = Vec4<T>::Zero();
  Vec4<T> zu = Vec4<T>::Zero();
  Vec4<T> zv = Vec4<T>::Zero();
  Vec4<T> zuu = Vec4<T>::Zero();
  Vec4<T> zuv = Vec4<T>::Zero();
  Vec4<T> zvv = Vec4<T>::Zero();

  template <class S>
  Jet2<S> cast() const {
    return {p.template cast<S>(),   zu.template cast<S>(),  zv.template cast<S>(),
            zuu.template cast<S>(), zuv.template cast<S>(), zvv.template cast<S>()};
  }

  bool finite() const {
    return all_finite(p) && all_finite(zu) && all_finite(zv) && all_finite(zuu) && all_finite(zuv) &&
           all_finite(zvv);
  }
};

/// First fundamental form E, F, G and area element W.
template <class T>
struct Metric {
  T E{};
  T F{};
  T G{};
  T W{};

  T det() const { return E * G - F * F; }
  Mat2<T> matrix() const {
    Mat2<T> g;
    g << E, F, F, G;
    return g;
  }
};

enum class DerivativeSource { Exact, FiniteDifference };

/// A parametric surface z(u,v) in E^4 over a rectangle.
///
/// Positions (and exact jets, when available) are evaluated in extended precision;
/// callers pick their own scalar through eval_jet2<T>. A Chart is immutable and can
/// be shared freely between threads.
class Chart {
 public:
  using PositionFn = std::function<Vec4<wide>(wide, wide)>;
  using JetFn = std::function<Jet2<wide>(wide, wide)>;

  static Chart exact(PositionFn position, JetFn jet, Domain domain) {
    if (!jet) throw std::invalid_argument("exact chart requires a jet evaluator");
    Chart c(std::move(position), std::move(jet), domain);
    c.source_ = DerivativeSource::Exact;
    return c;
  }

  static Chart sampled(PositionFn position, Domain domain, std::optional<double> step = std::nullopt) {
    Chart c(std::move(position), nullptr, domain);
    c.source_ = DerivativeSource::FiniteDifference;
    c.set_step(step);
    return c;
  }

  /// Same surface, jets from central differences of the position.
  Chart with_finite_differences(std::optional<double> step = std::nullopt) const {
    Chart c = *this;
    c.source_ = DerivativeSource::FiniteDifference;
    c.set_step(step);
    return c;
  }

  Chart with_exact_jets() const {
    if (!jet_) throw std::invalid_argument("chart has no exact derivative evaluators");
    Chart c = *this;
    c.source_ = DerivativeSource::Exact;
    return c;
  }

  static double default_step(const Domain& d) { return 1e-4 * std::max(1.0, d.extent()); }

  const Domain& domain() const { return domain_; }
  DerivativeSource source() const { return source_; }
  double fd_step() const { return step_; }
  bool has_exact_jets() const { return static_cast<bool>(jet_); }

  Vec4<wide> position(wide u, wide v) const { return position_(u, v); }

  /// Jet at (u,v) without the domain check; difference stencils may step just outside.
  Jet2<wide> jet(wide u, wide v) const {
    Jet2<wide> j = (source_ == DerivativeSource::Exact) ? jet_(u, v) : difference_jet(u, v);
    if (!j.finite()) throw EvalError("non-finite jet at (" + std::to_string(static_cast<double>(u)) + ", " +
                                     std::to_string(static_cast<double>(v)) + ")");
    return j;
  }

 private:
  Chart(PositionFn position, JetFn jet, Domain domain)
      : position_(std::move(position)), jet_(std::move(jet)), domain_(domain) {
    if (!position_) throw std::invalid_argument("chart requires a position evaluator");
    if (!domain_.u.valid() || !domain_.v.valid())
      throw std::invalid_argument("chart domain intervals must be finite and nonempty");
    step_ = default_step(domain_);
  }

  void set_step(std::optional<double> step) {
    step_ = step.value_or(default_step(domain_));
    if (!(step_ > 0.0) || !std::isfinite(step_))
      throw std::invalid_argument("finite-difference step must be positive");
  }

  Jet2<wide> difference_jet(wide u, wide v) const {
    const wide h = step_;
    const auto z = [this](wide a, wide b) { return position_(a, b); };
    const Vec4<wide> c = z(u, v);
    const Vec4<wide> up = z(u + h, v), um = z(u - h, v);
    const Vec4<wide> vp = z(u, v + h), vm = z(u, v - h);
    Jet2<wide> j;
    j.p = c;
    j.zu = (up - um) / (2 * h);
    j.zv = (vp - vm) / (2 * h);
    j.zuu = (up - 2 * c + um) / (h * h);
    j.zvv = (vp - 2 * c + vm) / (h * h);
    j.zuv = (z(u + h, v + h) - z(u + h, v - h) - z(u - h, v + h) + z(u - h, v - h)) / (4 * h * h);
    return j;
  }

  PositionFn position_;
  JetFn jet_;
  Domain domain_;
  DerivativeSource source_ = DerivativeSource::Exact;
  double step_ = 0.0;
};

/// A uniform nu x nv grid over a domain. Interior grids place samples at
/// lo + (i+1)/(n+1)·width; full grids include both endpoints.
struct GridSpec {
  int nu = 16;
  int nv = 16;
  bool interior = true;
};

/// Grid points in v-major, u-minor order.
inline std::vector<std::pair<double, double>> grid_points(const Domain& d, const GridSpec& g) {
  if (g.nu < 1 || g.nv < 1 || (!g.interior && (g.nu < 2 || g.nv < 2)))
    throw std::invalid_argument("grid needs at least one interior or two boundary samples per axis");
  const auto coord = [&](const Interval& iv, int i, int n) {
    if (g.interior) return iv.lo + iv.width() * (i + 1) / (n + 1);
    if (i == n - 1) return iv.hi;
    return iv.lo + iv.width() * i / (n - 1);
  };
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<std::size_t>(g.nu) * static_cast<std::size_t>(g.nv));
  for (int j = 0; j < g.nv; ++j)
    for (int i = 0; i < g.nu; ++i) pts.emplace_back(coord(d.u, i, g.nu), coord(d.v, j, g.nv));
  return pts;
}

/// Jet of the chart at (u,v); exact or central-difference according to the chart's source.
template <class T = double>
Jet2<T> eval_jet2(const Chart& chart, T u, T v) {
  if (!std::isfinite(static_cast<double>(u)) || !std::isfinite(static_cast<double>(v)) ||
      !chart.domain().contains(static_cast<double>(u), static_cast<double>(v))) {
    throw DomainError("parameter (" + std::to_string(static_cast<double>(u)) + ", " +
                      std::to_string(static_cast<double>(v)) + ") outside chart domain");
  }
  return chart.jet(static_cast<wide>(u), static_cast<wide>(v)).template cast<T>();
}

template <class T>
bool regularity(const Jet2<T>& jet, double tol = kDefaultRegularityTol) {
  const T E = jet.zu.dot(jet.zu);
  const T F = jet.zu.dot(jet.zv);
  const T G = jet.zv.dot(jet.zv);
  return E * G - F * F > T(tol) * (E + G) * (E + G);
}

template <class T>
Metric<T> metric(const Jet2<T>& jet, double tol = kDefaultRegularityTol) {
  Metric<T> m;
  m.E = jet.zu.dot(jet.zu);
  m.F = jet.zu.dot(jet.zv);
  m.G = jet.zv.dot(jet.zv);
  const T d = m.det();
  if (!(d > T(tol) * (m.E + m.G) * (m.E + m.G))) throw DegenerateMetric("EG - F^2 vanishes: chart is not regular");
  m.W = std::sqrt(d);
  return m;
}

/// Jet of z(u(s,t), v(s,t)) for an affine change of parameters with
/// jacobian = [[u_s, u_t], [v_s, v_t]].
template <class T>
Jet2<T> reparametrize_affine(const Jet2<T>& j, const Mat2<T>& jacobian) {
  const T us = jacobian(0, 0), ut = jacobian(0, 1);
  const T vs = jacobian(1, 0), vt = jacobian(1, 1);
  Jet2<T> r;
  r.p = j.p;
  r.zu = us * j.zu + vs * j.zv;
  r.zv = ut * j.zu + vt * j.zv;
  r.zuu = us * us * j.zuu + 2 * us * vs * j.zuv + vs * vs * j.zvv;
  r.zuv = us * ut * j.zuu + (us * vt + ut * vs) * j.zuv + vs * vt * j.zvv;
  r.zvv = ut * ut * j.zuu + 2 * ut * vt * j.zuv + vt * vt * j.zvv;
  return r;
}

}  // namespace surf4
