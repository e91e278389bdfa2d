#include "surf4/invariants.hpp"
#include "support.hpp"

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace surf4;
using namespace testing_support;

namespace {

struct Point {
  Jet2<double> jet;
  Metric<double> m;
  NormalFrame<double> frame;
  SecondFundamental<double> s;
  WeingartenForm<double> w;
  InvariantSet<double> inv;
};

Point at(const Chart& c, double u, double v, double tol = 1e-9) {
  Point p;
  p.jet = eval_jet2(c, u, v);
  p.m = metric(p.jet);
  p.frame = normal_frame(p.jet);
  p.s = second_fundamental(p.jet, p.frame);
  p.w = weingarten(p.m, p.s);
  p.inv = invariant_set(p.m, p.w, p.s, tol);
  return p;
}

Point with_frame(const Jet2<double>& jet, const NormalFrame<double>& f) {
  Point p;
  p.jet = jet;
  p.m = metric(jet);
  p.frame = f;
  p.s = second_fundamental(jet, f);
  p.w = weingarten(p.m, p.s);
  p.inv = invariant_set(p.m, p.w, p.s, 1e-9);
  return p;
}

void expect_frame_valid(const Jet2<double>& jet, const NormalFrame<double>& f) {
  EXPECT_NEAR(f.e1.norm(), 1.0, 1e-10);
  EXPECT_NEAR(f.e2.norm(), 1.0, 1e-10);
  EXPECT_NEAR(f.e1.dot(f.e2), 0.0, 1e-10);
  const Vec4<double> xu = jet.zu.normalized();
  for (const auto* e : {&f.e1, &f.e2}) {
    EXPECT_NEAR(e->dot(jet.zu), 0.0, 1e-10);
    EXPECT_NEAR(e->dot(jet.zv), 0.0, 1e-10);
  }
  const Vec4<double> yv = (jet.zv - jet.zv.dot(xu) * xu).normalized();
  EXPECT_NEAR(det4(xu, yv, f.e1, f.e2), 1.0, 1e-10);
}

std::vector<Chart> sample_charts() {
  return {plane(), torus(), minimal_graph(), parabolic_graph(),
          chart_of({"cos(u)*cos(v)", "cos(u)*sin(v)", "sin(u)", "0"}, {{-1.2, 1.2}, {0, 2 * M_PI}}),
          chart_of({"u", "v", "u^3 - v*u", "sin(u*v) + v^2"}, {{-1, 1}, {-1, 1}}),
          chart_of({"(2 + sin(u))*cos(v)", "u*v", "exp(u/3)", "sin(v) + u^2"}, {{0, 2}, {0, 2}})};
}

}  // namespace

TEST(NormalFrame, Plane) {
  const Point p = at(plane(), 0.4, -0.2);
  EXPECT_EQ(p.frame.e1, Vec4<double>(0, 0, 1, 0));
  EXPECT_EQ(p.frame.e2, Vec4<double>(0, 0, 0, 1));
}

TEST(NormalFrame, ParabolicGraphAtOrigin) {
  const Point p = at(parabolic_graph(), 0, 0);
  EXPECT_EQ(p.frame.e1, Vec4<double>(0, 0, 1, 0));
  EXPECT_EQ(p.frame.e2, Vec4<double>(0, 0, 0, 1));
}

TEST(NormalFrame, ValidEverywhereOnSamples) {
  std::mt19937_64 rng(5);
  for (const Chart& c : sample_charts()) {
    std::uniform_real_distribution<double> pu(c.domain().u.lo, c.domain().u.hi), pv(c.domain().v.lo, c.domain().v.hi);
    for (int i = 0; i < 20; ++i) {
      const Jet2<double> j = eval_jet2(c, pu(rng), pv(rng));
      expect_frame_valid(j, normal_frame(j));
    }
  }
  expect_frame_valid(eval_jet2(torus(), 0.0, 0.0), normal_frame(eval_jet2(torus(), 0.0, 0.0)));
}

TEST(SecondFundamental, Plane) {
  const Point p = at(plane(), 0.1, 0.1);
  EXPECT_EQ(p.s.c11, Vec2<double>::Zero());
  EXPECT_EQ(p.s.c12, Vec2<double>::Zero());
  EXPECT_EQ(p.s.c22, Vec2<double>::Zero());
}

TEST(SecondFundamental, TorusNormsAreFrameIndependent) {
  const Point p = at(torus(), 0, 0);
  EXPECT_NEAR(p.s.s11.norm(), 1.0, 1e-15);
  EXPECT_NEAR(p.s.s22.norm(), 1.0, 1e-15);
  EXPECT_NEAR(p.s.s12.norm(), 0.0, 1e-15);
  EXPECT_NEAR(p.s.c11.norm(), 1.0, 1e-15);
  EXPECT_NEAR(p.s.c22.norm(), 1.0, 1e-15);
}

TEST(SecondFundamental, ParabolicGraphAtOrigin) {
  const Point p = at(parabolic_graph(), 0, 0);
  EXPECT_EQ(p.s.c11, Vec2<double>(0, 1));
  EXPECT_EQ(p.s.c12, Vec2<double>(1, 0));
  EXPECT_EQ(p.s.c22, Vec2<double>(0, 0));
}

TEST(SecondFundamental, SigmaIsNormal) {
  std::mt19937_64 rng(6);
  for (const Chart& c : sample_charts()) {
    std::uniform_real_distribution<double> pu(c.domain().u.lo, c.domain().u.hi), pv(c.domain().v.lo, c.domain().v.hi);
    for (int i = 0; i < 10; ++i) {
      const Point p = at(c, pu(rng), pv(rng));
      for (const auto* s : {&p.s.s11, &p.s.s12, &p.s.s22}) {
        const double scale = 1 + s->norm();
        EXPECT_NEAR(s->dot(p.jet.zu) / p.jet.zu.norm(), 0.0, 1e-10 * scale);
        EXPECT_NEAR(s->dot(p.jet.zv) / p.jet.zv.norm(), 0.0, 1e-10 * scale);
      }
    }
  }
}

TEST(Weingarten, Torus) {
  for (auto [u, v] : {std::pair{0.0, 0.0}, {1.0, 2.0}, {4.0, 0.5}}) {
    const Point p = at(torus(), u, v);
    EXPECT_NEAR(p.w.L, 0.0, 1e-15);
    EXPECT_NEAR(p.w.N, 0.0, 1e-15);
    EXPECT_NEAR(std::abs(p.w.M), 1.0, 1e-15);
  }
}

TEST(Weingarten, MinimalGraphAtOrigin) {
  const Point p = at(minimal_graph(), 0, 0);
  EXPECT_DOUBLE_EQ(p.w.delta1 * p.frame.orientation, 4.0);
  EXPECT_DOUBLE_EQ(p.w.delta3 * p.frame.orientation, 4.0);
  EXPECT_DOUBLE_EQ(std::abs(p.w.L), 8.0);
  EXPECT_DOUBLE_EQ(p.w.M, 0.0);
  EXPECT_DOUBLE_EQ(std::abs(p.w.N), 8.0);
  EXPECT_EQ(p.w.L, p.w.N);
}

TEST(Weingarten, Plane) {
  const Point p = at(plane(), 0, 0);
  EXPECT_EQ(p.w.L, 0.0);
  EXPECT_EQ(p.w.M, 0.0);
  EXPECT_EQ(p.w.N, 0.0);
  EXPECT_EQ(p.w.gamma, Mat2<double>::Zero());
}

TEST(Weingarten, GammaIsMinusHGinvAndSelfAdjoint) {
  std::mt19937_64 rng(8);
  for (const Chart& c : sample_charts()) {
    std::uniform_real_distribution<double> pu(c.domain().u.lo, c.domain().u.hi), pv(c.domain().v.lo, c.domain().v.hi);
    for (int i = 0; i < 10; ++i) {
      const Point p = at(c, pu(rng), pv(rng));
      const Mat2<double> g = p.m.matrix();
      const Mat2<double> oracle = -p.w.h() * g.inverse();
      const double scale = 1 + p.w.gamma.norm();
      EXPECT_LT((p.w.gamma - oracle).norm(), 1e-10 * scale);
      EXPECT_LT((g * p.w.gamma.transpose() - p.w.gamma * g).norm(), 1e-10 * scale * (1 + g.norm()));
    }
  }
}

TEST(Invariants, Torus) {
  for (auto [u, v] : {std::pair{0.0, 0.0}, {1.0, 2.0}, {4.0, 0.5}}) {
    const Point p = at(torus(), u, v);
    EXPECT_NEAR(p.inv.k, -1.0, 1e-12);
    EXPECT_NEAR(p.inv.kappa, 0.0, 1e-12);
    EXPECT_NEAR(p.inv.K, 0.0, 1e-12);
    EXPECT_EQ(p.inv.point_class, PointClass::Hyperbolic);
  }
}

TEST(Invariants, ParabolicGraphAtOrigin) {
  const Point p = at(parabolic_graph(), 0, 0);
  EXPECT_EQ(p.inv.k, 0.0);
  EXPECT_DOUBLE_EQ(std::abs(p.inv.kappa), 1.0);
  // Gauss equation by hand: <(0,0,0,1),(0,0,0,0)> - |(0,0,1,0)|^2 = -1
  EXPECT_DOUBLE_EQ(p.inv.K, -1.0);
  EXPECT_EQ(p.inv.point_class, PointClass::Parabolic);
  EXPECT_DOUBLE_EQ(std::abs(p.w.L), 2.0);
}

TEST(Invariants, Plane) {
  const Point p = at(plane(), 0.3, 0.3);
  EXPECT_EQ(p.inv.k, 0.0);
  EXPECT_EQ(p.inv.kappa, 0.0);
  EXPECT_EQ(p.inv.K, 0.0);
  EXPECT_EQ(p.inv.point_class, PointClass::Flat);
}

TEST(Invariants, ClassificationScalesWithSigma) {
  EXPECT_EQ(classify(0.0, 0.0, 1.0, 1e-9), PointClass::Flat);
  EXPECT_EQ(classify(1e-8, 0.0, 1.0, 1e-9), PointClass::Elliptic);
  EXPECT_EQ(classify(1e-8, 0.0, 10.0, 1e-9), PointClass::Flat);
  EXPECT_EQ(classify(-1e-8, 0.0, 1.0, 1e-9), PointClass::Hyperbolic);
  EXPECT_EQ(classify(0.0, 1e-3, 1.0, 1e-9), PointClass::Parabolic);
}

TEST(Invariants, DilationKeepsClass) {
  const Chart big = chart_of({"100*u", "100*v", "100*u*v", "50*u^2"}, {{-1, 1}, {-1, 1}});
  const Chart small = chart_of({"u/100", "v/100", "u*v/100", "u^2/200"}, {{-1, 1}, {-1, 1}});
  for (const Chart& c : {big, small, parabolic_graph()}) {
    EXPECT_EQ(at(c, 0.3, 0.2).inv.point_class, at(parabolic_graph(), 0.3, 0.2).inv.point_class);
  }
}

TEST(Roots, Examples) {
  const auto t = characteristic_roots(at(torus(), 0, 0).inv);
  EXPECT_NEAR(t.first, 1.0, 1e-12);
  EXPECT_NEAR(t.second, -1.0, 1e-12);
  const auto p = characteristic_roots(at(plane(), 0, 0).inv);
  EXPECT_EQ(p.first, 0.0);
  EXPECT_EQ(p.second, 0.0);
  const Point e = at(minimal_graph(), 0, 0);
  EXPECT_DOUBLE_EQ(e.inv.k, 64.0);
  EXPECT_DOUBLE_EQ(std::abs(e.inv.kappa), 8.0);
  const auto r = characteristic_roots(e.inv);
  EXPECT_DOUBLE_EQ(r.first, -e.inv.kappa);
  EXPECT_DOUBLE_EQ(r.second, -e.inv.kappa);
}

TEST(Roots, NegativeDiscriminantIsAnError) {
  InvariantSet<double> inv;
  inv.k = 1.0;
  inv.kappa = 0.0;
  inv.scale = 1.0;
  EXPECT_THROW(characteristic_roots(inv), InternalInconsistency);
}

// gamma's eigenvalues from an independent eigensolver against the roots.
TEST(Roots, EqualGammaEigenvalues) {
  std::mt19937_64 rng(9);
  for (const Chart& c : sample_charts()) {
    std::uniform_real_distribution<double> pu(c.domain().u.lo, c.domain().u.hi), pv(c.domain().v.lo, c.domain().v.hi);
    for (int i = 0; i < 10; ++i) {
      const Point p = at(c, pu(rng), pv(rng));
      const auto ev = Eigen::EigenSolver<Mat2<double>>(p.w.gamma).eigenvalues();
      const double s2 = p.inv.scale * p.inv.scale;
      for (int j = 0; j < 2; ++j) {
        const double nu = ev(j).real();
        EXPECT_LE(std::abs(ev(j).imag()), 1e-6 * p.inv.scale);
        EXPECT_LE(std::abs(nu * nu + 2 * p.inv.kappa * nu + p.inv.k), 1e-9 * s2);
      }
      EXPECT_GE(p.inv.kappa * p.inv.kappa - p.inv.k, -1e-12 * s2);
      const auto r = characteristic_roots(p.inv);
      EXPECT_GE(r.first, r.second);
      const double lo = std::min(ev(0).real(), ev(1).real()), hi = std::max(ev(0).real(), ev(1).real());
      EXPECT_NEAR(r.first, hi, 1e-6 * p.inv.scale);
      EXPECT_NEAR(r.second, lo, 1e-6 * p.inv.scale);
    }
  }
}

TEST(SecondForm, Values) {
  const Point t = at(torus(), 0, 0);
  EXPECT_NEAR(second_form_value(t.w, 1.0, 0.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(second_form_value(t.w, 1.0, 1.0)), 2.0, 1e-15);
  EXPECT_EQ(second_form_value(t.w, 0.0, 0.0), 0.0);
  std::mt19937_64 rng(10);
  std::normal_distribution<double> n;
  for (const Chart& c : sample_charts()) {
    const Point p = at(c, 0.5, 0.5);
    for (int i = 0; i < 5; ++i) {
      const double l = n(rng), m = n(rng);
      const Vec2<double> X(l, m);
      const double oracle = -(X.transpose() * p.m.matrix() * p.w.gamma.transpose() * X)(0);
      EXPECT_NEAR(second_form_value(p.w, l, m), oracle, 1e-10 * (1 + std::abs(oracle)));
    }
  }
}

TEST(Principal, TorusDiagonals) {
  for (auto [u, v] : {std::pair{0.0, 0.0}, {1.0, 2.0}, {4.0, 0.5}}) {
    const Point p = at(torus(), u, v);
    const auto d = principal_directions(p.m, p.w, 1e-9);
    const double r = std::sqrt(0.5);
    EXPECT_LT((d.x - Vec2<double>(r, -r)).norm(), 1e-9);
    EXPECT_LT((d.y - Vec2<double>(r, r)).norm(), 1e-9);
  }
}

TEST(Principal, MinimalGraphUndefined) {
  const Point p = at(minimal_graph(), 0, 0);
  EXPECT_THROW(principal_directions(p.m, p.w, 1e-9), PrincipalUndefined);
}

TEST(Principal, ParabolicGraphAxes) {
  const Point p = at(parabolic_graph(), 0, 0);
  const auto d = principal_directions(p.m, p.w, 1e-9);
  EXPECT_LT((d.x.cwiseAbs() - Vec2<double>(1, 0)).norm(), 1e-12);
  EXPECT_LT((d.y.cwiseAbs() - Vec2<double>(0, 1)).norm(), 1e-12);
}

TEST(Principal, SolveTheConjugacyQuadratic) {
  std::mt19937_64 rng(12);
  for (const Chart& c : sample_charts()) {
    std::uniform_real_distribution<double> pu(c.domain().u.lo, c.domain().u.hi), pv(c.domain().v.lo, c.domain().v.hi);
    for (int i = 0; i < 10; ++i) {
      const Point p = at(c, pu(rng), pv(rng));
      PrincipalDirections<double> d;
      try {
        d = principal_directions(p.m, p.w, 1e-9);
      } catch (const PrincipalUndefined&) {
        continue;
      }
      const double E = p.m.E, F = p.m.F, G = p.m.G, L = p.w.L, M = p.w.M, N = p.w.N;
      const double a = E * M - F * L, b = E * N - G * L, q = F * N - G * M;
      for (const Vec2<double>& t : {d.x, d.y}) {
        const double val = a * t(0) * t(0) + b * t(0) * t(1) + q * t(1) * t(1);
        EXPECT_LE(std::abs(val), 1e-9 * (1 + std::abs(a) + std::abs(b) + std::abs(q)));
      }
      const Mat2<double> g = p.m.matrix();
      EXPECT_NEAR(d.x.dot(g * d.x), 1.0, 1e-10);
      EXPECT_NEAR(d.y.dot(g * d.y), 1.0, 1e-10);
      EXPECT_NEAR(d.x.dot(g * d.y), 0.0, 1e-10);
      EXPECT_GT(d.x(0) * d.y(1) - d.x(1) * d.y(0), 0.0);
    }
  }
}

TEST(MeanCurvature, Examples) {
  EXPECT_LT(mean_curvature_vector(at(minimal_graph(), 0, 0).m, at(minimal_graph(), 0, 0).s).norm(), 1e-15);
  EXPECT_EQ(mean_curvature_vector(at(plane(), 0, 0).m, at(plane(), 0, 0).s).norm(), 0.0);
  const Point t = at(torus(), 0, 0);
  const Vec4<double> H = mean_curvature_vector(t.m, t.s);
  EXPECT_NEAR(H.norm(), std::sqrt(0.5), 1e-15);
  EXPECT_LT((H - Vec4<double>(-0.5, 0, -0.5, 0)).norm(), 1e-15);
  EXPECT_NEAR(H.dot(t.jet.zu), 0.0, 1e-15);
}

TEST(Minimality, Examples) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> pick(-0.5, 0.5);
  const Chart e = minimal_graph();
  for (int i = 0; i < 20; ++i) {
    const Point p = at(e, pick(rng), pick(rng));
    EXPECT_TRUE(is_minimal(p.inv, 1e-9));
    EXPECT_LE(mean_curvature_vector(p.m, p.s).norm(), 1e-9);
  }
  EXPECT_FALSE(is_minimal(at(torus(), 0.2, 0.1).inv, 1e-9));
  EXPECT_NEAR(at(torus(), 0.2, 0.1).inv.kappa * at(torus(), 0.2, 0.1).inv.kappa - at(torus(), 0.2, 0.1).inv.k, 1.0,
              1e-9);
  EXPECT_TRUE(is_minimal(at(plane(), 0.2, 0.1).inv, 1e-9));
}

TEST(Minimality, AgreesWithMeanCurvature) {
  std::mt19937_64 rng(14);
  for (const Chart& c : sample_charts()) {
    std::uniform_real_distribution<double> pu(c.domain().u.lo, c.domain().u.hi), pv(c.domain().v.lo, c.domain().v.hi);
    for (int i = 0; i < 20; ++i) {
      const Point p = at(c, pu(rng), pv(rng));
      // the characterization excludes flat points, where kappa^2 - k vanishes regardless of H
      if (p.inv.point_class == PointClass::Flat) continue;
      const bool zero_H = mean_curvature_vector(p.m, p.s).norm() <= 1e-6 * p.inv.scale;
      EXPECT_EQ(is_minimal(p.inv, 1e-9), zero_H);
    }
  }
}

TEST(Invariants, FlatIffSecondFormVanishes) {
  std::mt19937_64 rng(15);
  for (const Chart& c : sample_charts()) {
    std::uniform_real_distribution<double> pu(c.domain().u.lo, c.domain().u.hi), pv(c.domain().v.lo, c.domain().v.hi);
    for (int i = 0; i < 20; ++i) {
      const Point p = at(c, pu(rng), pv(rng));
      const bool small_inv = std::abs(p.inv.k) + std::abs(p.inv.kappa) <= 1e-9;
      const bool small_h = std::abs(p.w.L) + std::abs(p.w.M) + std::abs(p.w.N) <= 1e-6;
      EXPECT_EQ(small_inv, small_h);
    }
  }
}

TEST(Invariance, NormalFrameRotation) {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> angle(0, 2 * M_PI);
  for (const Chart& c : sample_charts()) {
    const Point p = at(c, 0.4, 0.6);
    for (int i = 0; i < 20; ++i) {
      const int eps = (i % 2 == 0) ? 1 : -1;
      const Point q = with_frame(p.jet, rotate_normal_frame(p.frame, angle(rng), eps));
      const double s = p.inv.scale;
      EXPECT_NEAR(q.w.L, eps * p.w.L, 1e-10 * s);
      EXPECT_NEAR(q.w.M, eps * p.w.M, 1e-10 * s);
      EXPECT_NEAR(q.w.N, eps * p.w.N, 1e-10 * s);
      EXPECT_NEAR(q.inv.k, p.inv.k, 1e-10 * (1 + std::abs(p.inv.k)));
      EXPECT_NEAR(q.inv.kappa, eps * p.inv.kappa, 1e-10 * (1 + std::abs(p.inv.kappa)));
      EXPECT_NEAR(q.inv.K, p.inv.K, 1e-10 * (1 + std::abs(p.inv.K)));
    }
  }
}

TEST(Invariance, AffineReparametrization) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> entry(-2, 2);
  for (const Chart& c : sample_charts()) {
    const Point p = at(c, 0.4, 0.6);
    int done = 0;
    while (done < 20) {
      Mat2<double> J;
      J << entry(rng), entry(rng), entry(rng), entry(rng);
      if (std::abs(J.determinant()) < 0.1) continue;
      ++done;
      const double sJ = J.determinant() > 0 ? 1 : -1;
      const Jet2<double> r = reparametrize_affine(p.jet, J);
      // fixed normal frame: kappa picks up sign J
      const Point fixed = with_frame(r, p.frame);
      EXPECT_NEAR(fixed.inv.k, p.inv.k, 1e-9 * (1 + std::abs(p.inv.k)));
      EXPECT_NEAR(fixed.inv.kappa, sJ * p.inv.kappa, 1e-9 * (1 + std::abs(p.inv.kappa)));
      // canonical frame follows the tangent orientation, so kappa is unchanged
      const Point canon = with_frame(r, normal_frame(r));
      EXPECT_NEAR(canon.inv.k, p.inv.k, 1e-9 * (1 + std::abs(p.inv.k)));
      EXPECT_NEAR(canon.inv.kappa, p.inv.kappa, 1e-9 * (1 + std::abs(p.inv.kappa)));
      EXPECT_NEAR(canon.inv.K, p.inv.K, 1e-9 * (1 + std::abs(p.inv.K)));
    }
  }
}

TEST(Invariance, RigidMotion) {
  std::mt19937_64 rng(18);
  const Chart c = sample_charts().back();
  for (int i = 0; i < 5; ++i) {
    const Mat4<double> R = random_rotation(rng);
    const Point a = at(c, 1.1, 0.7);
    const Point b = at(moved(c, R, Vec4<double>(1, 2, 3, 4)), 1.1, 0.7);
    EXPECT_NEAR(a.inv.k, b.inv.k, 1e-10 * (1 + std::abs(a.inv.k)));
    EXPECT_NEAR(a.inv.kappa, b.inv.kappa, 1e-10 * (1 + std::abs(a.inv.kappa)));
    EXPECT_NEAR(a.inv.K, b.inv.K, 1e-10 * (1 + std::abs(a.inv.K)));
  }
}

TEST(FlatPoint, PlaneIsTotallyGeodesic) {
  const FlatPointReport r = flat_point_analysis(plane(), 0.2, 0.3);
  EXPECT_EQ(r.verdict, FlatVerdict::TotallyGeodesicPlane);
  EXPECT_EQ(r.beta, 0.0);
}

TEST(FlatPoint, RejectsNonFlat) {
  EXPECT_THROW(flat_point_analysis(torus(), 0.2, 0.3), NotFlatPoint);
  EXPECT_THROW(flat_point_analysis(plane(), 2.0, 0.3), DomainError);
}

TEST(FlatPoint, SphereInHyperplaneIsPlanar) {
  const Chart s = chart_of({"cos(u)*cos(v)", "cos(u)*sin(v)", "sin(u)", "0"}, {{-1.2, 1.2}, {0, 2 * M_PI}});
  for (auto [u, v] : {std::pair{0.0, 0.0}, {0.5, 1.0}, {-1.0, 5.0}}) {
    const FlatPointReport r = flat_point_analysis(s, u, v);
    EXPECT_EQ(r.verdict, FlatVerdict::Planar);
    EXPECT_LE(r.beta, 1e-6);
    EXPECT_NEAR(r.gauss_K, 1.0, 1e-9);
  }
}
