#include "bellbound/eig3.hpp"

#include <algorithm>
#include <cmath>

namespace bellbound {

namespace {

// p(x) = det(A - x I) = -x^3 + c2 x^2 + c1 x + c0 and its derivative.
struct CharPoly {
  double c2, c1, c0;

  double value(double x) const { return ((-x + c2) * x + c1) * x + c0; }
  double deriv(double x) const { return (-3.0 * x + 2.0 * c2) * x + c1; }
};

using Col = std::array<double, 3>;

Col cross(const Col& a, const Col& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

double dot3(const Col& a, const Col& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Col mat_vec(const std::array<std::array<double, 3>, 3>& a, const Col& v) {
  return {dot3(a[0], v), dot3(a[1], v), dot3(a[2], v)};
}

}  // namespace

std::array<double, 3> eig3_sym(const std::array<std::array<double, 3>, 3>& a) {
  const double a00 = a[0][0], a01 = a[0][1], a02 = a[0][2];
  const double a11 = a[1][1], a12 = a[1][2], a22 = a[2][2];

  const double q = (a00 + a11 + a22) / 3.0;
  const double off_sq = a01 * a01 + a02 * a02 + a12 * a12;
  const double p2 = (a00 - q) * (a00 - q) + (a11 - q) * (a11 - q) +
                    (a22 - q) * (a22 - q) + 2.0 * off_sq;
  const double scale = std::max({std::abs(a00), std::abs(a11), std::abs(a22),
                                 std::abs(a01), std::abs(a02), std::abs(a12),
                                 1e-300});

  if (p2 <= 1e-28 * scale * scale) {
    // Numerically a multiple of the identity.
    return {q, q, q};
  }

  // Closed-form (trigonometric) roots of the characteristic cubic.
  const double p = std::sqrt(p2 / 6.0);
  const double b00 = (a00 - q) / p, b11 = (a11 - q) / p, b22 = (a22 - q) / p;
  const double b01 = a01 / p, b02 = a02 / p, b12 = a12 / p;
  double r = 0.5 * (b00 * (b11 * b22 - b12 * b12) -
                    b01 * (b01 * b22 - b12 * b02) +
                    b02 * (b01 * b12 - b11 * b02));
  r = std::clamp(r, -1.0, 1.0);

  const double phi = std::acos(r) / 3.0;
  const double two_pi_3 = 2.0943951023931953;
  std::array<double, 3> eig;
  eig[0] = q + 2.0 * p * std::cos(phi);
  eig[2] = q + 2.0 * p * std::cos(phi + two_pi_3);
  eig[1] = 3.0 * q - eig[0] - eig[2];

  const double tr = a00 + a11 + a22;
  const double minors = a00 * a11 - a01 * a01 + a00 * a22 - a02 * a02 +
                        a11 * a22 - a12 * a12;
  const double det = a00 * (a11 * a22 - a12 * a12) -
                     a01 * (a01 * a22 - a12 * a02) +
                     a02 * (a01 * a12 - a11 * a02);
  CharPoly poly{tr, -minors, det};

  // Refinement. Double roots of the characteristic polynomial only carry
  // half precision, so the polynomial is used solely for the root farthest
  // from the mean: in any 2+1 eigenvalue split that is the isolated, simple
  // root and Newton converges quadratically. The remaining pair then comes
  // from projecting the matrix onto the orthogonal complement of that
  // root's eigenvector, where the 2x2 closed form is exact.
  int far = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(eig[i] - q) > std::abs(eig[far] - q)) far = i;
  }
  double x = eig[far];
  for (int iter = 0; iter < 4; ++iter) {
    const double f = poly.value(x);
    const double df = poly.deriv(x);
    if (std::abs(df) < 1e-300) break;
    const double next = x - f / df;
    if (std::abs(next - x) > 0.5 * p) break;
    if (std::abs(poly.value(next)) <= std::abs(f)) {
      x = next;
    } else {
      break;
    }
  }

  // Eigenvector of the isolated root from the largest cross product of rows
  // of A - x I.
  const Col r0 = {a00 - x, a01, a02};
  const Col r1 = {a01, a11 - x, a12};
  const Col r2 = {a02, a12, a22 - x};
  Col v = cross(r0, r1);
  double best = dot3(v, v);
  for (const Col& c : {cross(r0, r2), cross(r1, r2)}) {
    const double norm_sq = dot3(c, c);
    if (norm_sq > best) {
      best = norm_sq;
      v = c;
    }
  }
  if (best < 1e-280) {
    // Rows of A - x I vanish: x is (numerically) a triple root.
    std::sort(eig.begin(), eig.end(), std::greater<double>());
    return eig;
  }
  const double inv = 1.0 / std::sqrt(best);
  for (double& c : v) c *= inv;

  // Rayleigh quotient squares the eigenvector error.
  x = dot3(v, mat_vec(a, v));

  // Orthonormal basis of the complement.
  int axis = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(v[i]) < std::abs(v[axis])) axis = i;
  }
  Col w1 = {0.0, 0.0, 0.0};
  w1[axis] = 1.0;
  const double proj = dot3(w1, v);
  for (int i = 0; i < 3; ++i) w1[i] -= proj * v[i];
  const double w1_inv = 1.0 / std::sqrt(dot3(w1, w1));
  for (double& c : w1) c *= w1_inv;
  const Col w2 = cross(v, w1);

  const Col aw1 = mat_vec(a, w1);
  const Col aw2 = mat_vec(a, w2);
  const double t11 = dot3(w1, aw1);
  const double t12 = dot3(w1, aw2);
  const double t22 = dot3(w2, aw2);

  const double half_sum = 0.5 * (t11 + t22);
  const double rad = std::hypot(0.5 * (t11 - t22), t12);
  eig = {x, half_sum + rad, half_sum - rad};

  std::sort(eig.begin(), eig.end(), std::greater<double>());
  return eig;
}

}  // namespace bellbound
