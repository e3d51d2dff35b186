#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bellbound/error.hpp"
#include "bellbound/exec.hpp"
#include "bellbound/util.hpp"

namespace bellbound {

inline constexpr int kMinQubits = 2;
inline constexpr int kMaxQubits = 12;

// Normalized pure state of n qubits. Amplitudes are indexed by the basis
// bitstring read as an integer with site 1 as the most significant bit.
// Immutable after construction; all free functions below are pure.
class PureState {
 public:
  PureState(int n, std::vector<cdouble> amplitudes);

  int qubits() const { return n_; }
  std::size_t dim() const { return amplitudes_.size(); }
  const std::vector<cdouble>& amplitudes() const { return amplitudes_; }
  const cdouble& amplitude(std::size_t basis) const { return amplitudes_[basis]; }

  cdouble inner(const PureState& other) const;

 private:
  int n_;
  std::vector<cdouble> amplitudes_;
};

// Builds a state from sparse (bitstring, amplitude) entries. Unspecified
// basis states are zero. The caller's values are taken as-is: nothing is
// renormalized, and a norm off by more than 1e-9 is an error.
PureState make_state(int n,
                     const std::vector<std::pair<std::string, cdouble>>& entries);

// Region A of a bipartition; region B is the complement. Sites are 1-based.
class Bipartition {
 public:
  Bipartition(int n, std::vector<int> region_a);

  int qubits() const { return n_; }
  const std::vector<int>& region_a() const { return region_a_; }  // sorted
  std::vector<int> region_b() const;
  int size_a() const { return static_cast<int>(region_a_.size()); }

 private:
  int n_;
  std::vector<int> region_a_;
};

// Reduced density matrix of a region: Hermitian, trace one, PSD up to
// rounding. Validation of the PSD invariant needs an eigensolve and is left
// to validate().
struct DensityMatrix {
  Eigen::MatrixXcd mat;

  std::size_t dim() const { return static_cast<std::size_t>(mat.rows()); }
  // Eigenvalues sorted descending.
  std::vector<double> eigenvalues() const;
  // Checks Hermiticity (1e-12), unit trace (1e-12) and PSD (-1e-10).
  void validate() const;
};

DensityMatrix reduced_density(const PureState& state, const Bipartition& part);

double purity(const DensityMatrix& dm);

// -sum lambda ln lambda over eigenvalues above the 1e-12 cutoff, in nats.
double von_neumann_entropy(const DensityMatrix& dm);

// ln Tr rho^alpha / (1 - alpha); alpha within 1e-12 of 1 returns the von
// Neumann limit. alpha <= 0 is BadAlpha.
double renyi_entropy(const DensityMatrix& dm, double alpha);

// sqrt(2 (1 - Tr rho_A^2)), radicand clamped at zero against rounding.
double concurrence(const PureState& state, const Bipartition& part);

// sqrt(2 (1 - 2^{m-1} Tr rho_A^2)) with m = |A|. A radicand below -1e-9
// signals an m inconsistent with the state and raises NegativeRadicand.
double generalized_concurrence(const PureState& state, const Bipartition& part);

// Spectrum of one bipartition class plus the flatness verdicts. isFlat means
// all nonzero eigenvalues agree to 1e-9 relative; isMaxFlat additionally
// requires full rank 2^min(|A|, n-|A|), i.e. a maximally mixed reduction.
struct SpectrumReport {
  Bipartition part;
  std::vector<double> eigenvalues;  // descending
  double vonNeumann = 0.0;
  double renyi2 = 0.0;
  int rank = 0;
  bool isFlat = false;
  bool isMaxFlat = false;
};

struct FlatSpectrumSummary {
  std::vector<SpectrumReport> reports;   // one per bipartition class
  bool isMaximallyEntangled = false;     // every bipartition flat
  bool rankTrivial = false;              // every cut has rank 1 (product state)
};

// One report per nonempty proper subset with |A| <= n/2 (ties at n/2 keep the
// representative containing site 1). relative_tol is the flatness tolerance.
FlatSpectrumSummary flat_spectrum_report(const PureState& state,
                                         Exec exec = Exec::parallel,
                                         double relative_tol = 1e-9);

}  // namespace bellbound
