#pragma once

#include <array>

namespace bellbound {

// Eigenvalues of a symmetric 3x3 matrix, descending. Closed-form solution of
// the characteristic cubic (trigonometric form) followed by a couple of
// Newton polishing steps on det(A - lambda I); target accuracy 1e-12 relative
// to the matrix scale.
std::array<double, 3> eig3_sym(const std::array<std::array<double, 3>, 3>& a);

}  // namespace bellbound
