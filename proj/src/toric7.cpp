#include "bellbound/toric7.hpp"

#include <bit>
#include <cmath>

namespace bellbound {

namespace {

inline int site_bit(int n, int site) { return n - site; }

void check_seven(const PureState& state) {
  if (state.qubits() != kToricSites) {
    throw Error(ErrorCode::WrongSize,
                "toric-code operations need a 7-qubit state, got n = " +
                    std::to_string(state.qubits()));
  }
}

}  // namespace

PauliString::PauliString(int n_sites, std::string word, int s)
    : n(n_sites), letters(std::move(word)), sign(s) {
  if (static_cast<int>(letters.size()) != n) {
    throw Error(ErrorCode::BadLength, "Pauli word length must equal n");
  }
  if (sign != 1 && sign != -1) {
    throw Error(ErrorCode::BadArgument, "sign must be +1 or -1");
  }
  for (char c : letters) {
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
      throw Error(ErrorCode::BadArgument, "Pauli letters are I, X, Y, Z");
    }
  }
}

void PauliString::apply(const std::vector<cdouble>& in,
                        std::vector<cdouble>& out) const {
  const std::size_t dim = std::size_t{1} << n;
  if (in.size() != dim) {
    throw Error(ErrorCode::WrongSize, "vector length does not match n");
  }
  std::size_t flip = 0, yz = 0;
  int y_count = 0;
  for (int k = 1; k <= n; ++k) {
    const std::size_t bit = std::size_t{1} << site_bit(n, k);
    switch (letters[k - 1]) {
      case 'X': flip |= bit; break;
      case 'Y': flip |= bit; yz |= bit; ++y_count; break;
      case 'Z': yz |= bit; break;
      default: break;
    }
  }
  static const cdouble kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const cdouble scale = kIPow[y_count & 3] * static_cast<double>(sign);
  out.assign(dim, cdouble{0.0, 0.0});
  for (std::size_t b = 0; b < dim; ++b) {
    const double parity = (std::popcount(b & yz) & 1) ? -1.0 : 1.0;
    out[b ^ flip] += scale * parity * in[b];
  }
}

cdouble PauliString::expectation(const PureState& state) const {
  if (state.qubits() != n) {
    throw Error(ErrorCode::WrongSize, "state does not match Pauli word");
  }
  std::vector<cdouble> applied;
  apply(state.amplitudes(), applied);
  cdouble acc = 0.0;
  const auto& amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    acc += std::conj(amps[i]) * applied[i];
  }
  return acc;
}

ToricHamiltonian::ToricHamiltonian()
    : stabilizers_{PauliString(7, "ZZIIIII"), PauliString(7, "ZIZIIII"),
                   PauliString(7, "IZIZZII"), PauliString(7, "IIZZIZI"),
                   PauliString(7, "IIIIZIZ"), PauliString(7, "IIIIIZZ"),
                   PauliString(7, "XXXXIII"), PauliString(7, "IIIXXXX")} {}

void ToricHamiltonian::apply(const std::vector<cdouble>& in,
                             std::vector<cdouble>& out) const {
  out.assign(kToricDim, cdouble{0.0, 0.0});
  std::vector<cdouble> term;
  for (const auto& stab : stabilizers_) {
    stab.apply(in, term);
    for (int i = 0; i < kToricDim; ++i) out[i] -= term[i];
  }
}

double ToricHamiltonian::expectation(const PureState& state) const {
  check_seven(state);
  std::vector<cdouble> applied;
  apply(state.amplitudes(), applied);
  cdouble acc = 0.0;
  const auto& amps = state.amplitudes();
  for (int i = 0; i < kToricDim; ++i) acc += std::conj(amps[i]) * applied[i];
  return acc.real();
}

Eigen::MatrixXd ToricHamiltonian::dense() const {
  Eigen::MatrixXd h(kToricDim, kToricDim);
  std::vector<cdouble> basis(kToricDim), column;
  for (int j = 0; j < kToricDim; ++j) {
    std::fill(basis.begin(), basis.end(), cdouble{0.0, 0.0});
    basis[j] = 1.0;
    apply(basis, column);
    for (int i = 0; i < kToricDim; ++i) h(i, j) = column[i].real();
  }
  return h;
}

ToricHamiltonian build_hamiltonian() { return ToricHamiltonian{}; }

std::array<double, 8> stabilizer_expectations(const PureState& state) {
  check_seven(state);
  const ToricHamiltonian h;
  std::array<double, 8> out{};
  for (int i = 0; i < 8; ++i) {
    out[i] = h.stabilizers()[i].expectation(state).real();
  }
  return out;
}

ToricReport verify_toric_ground(const PureState& state) {
  check_seven(state);
  const ToricHamiltonian h;

  ToricReport report;
  report.stabilizerExpectations = stabilizer_expectations(state);
  report.energy = h.expectation(state);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.dense());
  const auto& eigs = solver.eigenvalues();
  report.groundEnergy = eigs(0);
  report.groundDegeneracy = 0;
  double overlap = 0.0;
  const auto& amps = state.amplitudes();
  for (int i = 0; i < kToricDim; ++i) {
    if (eigs(i) - report.groundEnergy > 1e-9) break;
    ++report.groundDegeneracy;
    cdouble proj = 0.0;
    for (int b = 0; b < kToricDim; ++b) {
      proj += solver.eigenvectors()(b, i) * amps[b];
    }
    overlap += std::norm(proj);
  }
  report.overlapWithGround = overlap;

  bool all_plus_one = true;
  for (double e : report.stabilizerExpectations) {
    all_plus_one = all_plus_one && std::abs(e - 1.0) <= 1e-9;
  }
  report.isGroundState =
      std::abs(report.energy - report.groundEnergy) <= 1e-9 && all_plus_one;
  return report;
}

std::vector<double> toric_spectrum() {
  const ToricHamiltonian h;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.dense(),
                                                        Eigen::EigenvaluesOnly);
  return std::vector<double>(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + kToricDim);
}

}  // namespace bellbound
