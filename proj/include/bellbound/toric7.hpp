#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bellbound/state.hpp"

namespace bellbound {

// Signed Pauli string; Hermitian and unitary by construction.
struct PauliString {
  int n = 0;
  std::string letters;  // 'I', 'X', 'Y', 'Z', site 1 first
  int sign = 1;

  PauliString() = default;
  PauliString(int n_sites, std::string word, int s = 1);

  // out = sign * P |in>, one pass over the amplitudes.
  void apply(const std::vector<cdouble>& in, std::vector<cdouble>& out) const;

  cdouble expectation(const PureState& state) const;
};

inline constexpr int kToricSites = 7;
inline constexpr int kToricDim = 128;

// Seven-qubit disk toric code H = -sum A_i - sum B_j with
//   A1 = Z1 Z2, A2 = Z1 Z3, A3 = Z2 Z4 Z5, A4 = Z3 Z4 Z6,
//   A5 = Z5 Z7, A6 = Z6 Z7, B1 = X1 X2 X3 X4, B2 = X4 X5 X6 X7.
// Matrix-free handle; read-only after construction.
class ToricHamiltonian {
 public:
  ToricHamiltonian();

  const std::array<PauliString, 8>& stabilizers() const { return stabilizers_; }

  void apply(const std::vector<cdouble>& in, std::vector<cdouble>& out) const;

  double expectation(const PureState& state) const;

  Eigen::MatrixXd dense() const;  // 128 x 128 real symmetric

 private:
  std::array<PauliString, 8> stabilizers_;  // A1..A6, B1, B2
};

ToricHamiltonian build_hamiltonian();

// <psi|S|psi> for the eight stabilizers in listed order. WrongSize unless
// n = 7.
std::array<double, 8> stabilizer_expectations(const PureState& state);

struct ToricReport {
  std::array<double, 8> stabilizerExpectations{};
  double energy = 0.0;
  double groundEnergy = 0.0;
  int groundDegeneracy = 0;
  double overlapWithGround = 0.0;  // squared projection onto the ground space
  bool isGroundState = false;
};

// Exact diagonalization of the dense 128x128 Hamiltonian. isGroundState
// requires the energy to sit within 1e-9 of the ground energy and all eight
// stabilizer expectations to equal 1 within 1e-9.
ToricReport verify_toric_ground(const PureState& state);

std::vector<double> toric_spectrum();  // all 128 eigenvalues, ascending

}  // namespace bellbound
