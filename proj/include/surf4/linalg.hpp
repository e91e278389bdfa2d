#pragma once

#include <Eigen/Core>
#include <Eigen/LU>

#include <cmath>

namespace surf4 {

template <class T> using Vec2 = Eigen::Matrix<T, 2, 1>;
template <class T> using Vec3 = Eigen::Matrix<T, 3, 1>;
template <class T> using Vec4 = Eigen::Matrix<T, 4, 1>;
template <class T> using Mat2 = Eigen::Matrix<T, 2, 2>;
template <class T> using Mat4 = Eigen::Matrix<T, 4, 4>;

/// Working precision for chart evaluation and frame-field differentiation.
using wide = long double;

template <class T>
T det4(const Vec4<T>& a, const Vec4<T>& b, const Vec4<T>& c, const Vec4<T>& d) {
  Mat4<T> m;
  m << a, b, c, d;
  return m.determinant();
}

/// The vector n orthogonal to a, b, c with det[a b c n] = |n|^2.
template <class T>
Vec4<T> cross4(const Vec4<T>& a, const Vec4<T>& b, const Vec4<T>& c) {
  Vec4<T> n;
  for (int i = 0; i < 4; ++i) {
    Eigen::Matrix<T, 3, 3> minor;
    int row = 0;
    for (int r = 0; r < 4; ++r) {
      if (r == i) continue;
      minor(row, 0) = a(r);
      minor(row, 1) = b(r);
      minor(row, 2) = c(r);
      ++row;
    }
    // cofactor of entry (i, 3)
    const T sign = ((i + 3) % 2 == 0) ? T(1) : T(-1);
    n(i) = sign * minor.determinant();
  }
  return n;
}

template <class T>
bool all_finite(const Vec4<T>& v) {
  return std::isfinite(v(0)) && std::isfinite(v(1)) && std::isfinite(v(2)) && std::isfinite(v(3));
}

}  // namespace surf4
