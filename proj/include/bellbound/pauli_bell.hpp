#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "bellbound/state.hpp"

namespace bellbound {

// Pauli letters ordered (x, y, z) everywhere.
enum PauliAxis : int { kPauliX = 0, kPauliY = 1, kPauliZ = 2 };

// <psi| sigma_{i1} x ... x sigma_{in} |psi> for letters[k] acting on site
// k+1. Single pass over the amplitudes using flip/phase masks.
cdouble pauli_string_expectation(const PureState& state,
                                 const std::vector<int>& letters);

// All 3^n Pauli correlations reshaped as 3^{n-1} x 3: row = multi-index
// i1..i_{n-1} (base 3, i1 most significant), column = i_n.
struct RMatrix {
  int n = 0;
  Eigen::MatrixXd entries;

  Eigen::Matrix3d gram() const { return entries.transpose() * entries; }
};

RMatrix r_matrix(const PureState& state, Exec exec = Exec::parallel);

// Bell-violation upper bound from the two largest eigenvalues of R^T R.
// Exact (not just an upper bound) when n = 2.
struct BoundReport {
  std::array<double, 3> eigenvalues{};  // of R^T R, descending
  double bound = 0.0;                   // 2 sqrt(u1^2 + u2^2)
  bool isExact = false;                 // n == 2
  bool classicalViolation = false;      // bound > 2
};

BoundReport bell_bound(const RMatrix& r);

// Measurement settings: one pair of unit Bloch vectors per site.
struct BellSettings {
  std::vector<Vec3> a;
  std::vector<Vec3> aPrime;

  int sites() const { return static_cast<int>(a.size()); }
};

// Expectation of the two-setting Bell operator. The operator follows the
// Mermin-Klyshko recursion
//   B_1 = A_1,  B_k = (B_{k-1}(A_k + A'_k) + B'_{k-1}(A_k - A'_k)) / 2
// normalized so the local-realism bound is 2 for every n; for n = 2 it is
// exactly A_1(A_2 + A'_2) + A'_1(A_2 - A'_2). Evaluated matrix-free in
// O(n 2^n).
double bell_operator_value(const PureState& state, const BellSettings& settings);

// One see-saw run from a given initialization. The objective is linear in
// each Bloch vector, so every update is a closed-form normalization and the
// value is non-decreasing sweep to sweep.
struct SeesawResult {
  double value = 0.0;
  BellSettings settings;
  int sweeps = 0;
  bool converged = false;
  std::vector<double> trace;  // objective after each sweep
};

SeesawResult seesaw_run(const PureState& state, BellSettings init,
                        int max_sweeps = 500, double tol = 1e-10);

// Best see-saw value over seeded random restarts (lower) together with the
// Lemma-type R-matrix bound (upper).
struct GammaSandwich {
  double lower = 0.0;
  double upper = 0.0;
  BellSettings settings;  // arg max over restarts
  int restarts = 0;
  bool converged = false;
};

inline constexpr int kDefaultRestarts = 64;
inline constexpr std::uint64_t kDefaultSeed = 1729;

GammaSandwich maximize_bell(const PureState& state,
                            int restarts = kDefaultRestarts,
                            std::uint64_t seed = kDefaultSeed,
                            Exec exec = Exec::parallel,
                            double tol = 1e-10);

// Closed-form maximum violation for the product x (2 alpha)-qubit states of
// theorem_state: 2 sqrt(1 + 2^{2a-2} c^2) below the branch point
// c^2 = 2^{2-2a}, and 2^{(2a+1)/2} c above it.
double theorem_gamma(double c_a, int alpha_half_qubits);

// |0>^{pad} x (lambda+ |1..1>|1> + lambda- |0..0>|0>) on pad + 2 alpha
// qubits, with lambda+- = sqrt((1 +- sqrt(1 - c^2)) / 2) (principal branch).
// Its concurrence across the last-site cut equals c_a.
PureState theorem_state(int alpha_half_qubits, double c_a, int pad_qubits);

}  // namespace bellbound
