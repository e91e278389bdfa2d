#pragma once

#include "surf4/chart.hpp"
#include "surf4/exprlang.hpp"

#include <Eigen/QR>

#include <array>
#include <random>
#include <string>

namespace testing_support {

using namespace surf4;

inline Chart chart_of(std::array<std::string, 4> coords, Domain d) { return expr::compile_chart(coords, d); }

inline Chart plane() { return chart_of({"u", "v", "0", "0"}, {{-1, 1}, {-1, 1}}); }
inline Chart torus() {
  return chart_of({"cos(u)", "sin(u)", "cos(v)", "sin(v)"}, {{0, 2 * M_PI}, {0, 2 * M_PI}});
}
inline Chart minimal_graph() { return chart_of({"u", "v", "u^2 - v^2", "2*u*v"}, {{-1, 1}, {-1, 1}}); }
inline Chart parabolic_graph() { return chart_of({"u", "v", "u*v", "u^2/2"}, {{-1, 1}, {-1, 1}}); }

/// Haar-ish random rotation of E^4 via QR of a Gaussian matrix.
inline Mat4<double> random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Mat4<double> a;
  for (int i = 0; i < 16; ++i) a(i) = n(rng);
  Eigen::HouseholderQR<Mat4<double>> qr(a);
  Mat4<double> q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1;
  return q;
}

/// The same surface moved by x -> R x + t.
inline Chart moved(const Chart& c, const Mat4<double>& R, const Vec4<double>& t) {
  const Mat4<wide> Rw = R.cast<wide>();
  const Vec4<wide> tw = t.cast<wide>();
  auto pos = [c, Rw, tw](wide u, wide v) -> Vec4<wide> { return Rw * c.position(u, v) + tw; };
  auto jet = [c, Rw, tw](wide u, wide v) {
    Jet2<wide> j = c.jet(u, v);
    j.p = Rw * j.p + tw;
    j.zu = Rw * j.zu;
    j.zv = Rw * j.zv;
    j.zuu = Rw * j.zuu;
    j.zuv = Rw * j.zuv;
    j.zvv = Rw * j.zvv;
    return j;
  };
  return Chart::exact(pos, jet, c.domain());
}

}  // namespace testing_support
