#include "bellbound/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>

namespace bellbound {

namespace {

constexpr double kNormTol = 1e-9;
constexpr double kEigCutoff = 1e-12;

// Bit position of a 1-based site in the basis index (site 1 = MSB).
inline int site_bit(int n, int site) { return n - site; }

std::vector<double> eigenvalues_descending(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m,
                                                         Eigen::EigenvaluesOnly);
  std::vector<double> eigs(solver.eigenvalues().data(),
                           solver.eigenvalues().data() +
                               solver.eigenvalues().size());
  std::sort(eigs.begin(), eigs.end(), std::greater<double>());
  return eigs;
}

}  // namespace

PureState::PureState(int n, std::vector<cdouble> amplitudes)
    : n_(n), amplitudes_(std::move(amplitudes)) {
  if (n < kMinQubits) {
    throw Error(ErrorCode::BadQubitCount, "qubit count must be at least 2");
  }
  if (n > kMaxQubits) {
    throw Error(ErrorCode::TooLarge,
                "qubit count " + std::to_string(n) + " exceeds the cap of 12");
  }
  if (amplitudes_.size() != (std::size_t{1} << n)) {
    throw Error(ErrorCode::BadLength, "amplitude vector must have length 2^n");
  }
  double norm_sq = 0.0;
  for (const auto& a : amplitudes_) norm_sq += std::norm(a);
  if (std::abs(norm_sq - 1.0) > kNormTol) {
    throw Error(ErrorCode::NotNormalized,
                "state norm^2 deviates from 1 by " +
                    std::to_string(std::abs(norm_sq - 1.0)));
  }
}

cdouble PureState::inner(const PureState& other) const {
  if (other.n_ != n_) {
    throw Error(ErrorCode::DimensionMismatch, "qubit counts differ");
  }
  cdouble acc = 0.0;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    acc += std::conj(amplitudes_[i]) * other.amplitudes_[i];
  }
  return acc;
}

PureState make_state(
    int n, const std::vector<std::pair<std::string, cdouble>>& entries) {
  if (n < kMinQubits) {
    throw Error(ErrorCode::BadQubitCount, "qubit count must be at least 2");
  }
  if (n > kMaxQubits) {
    throw Error(ErrorCode::TooLarge,
                "qubit count " + std::to_string(n) + " exceeds the cap of 12");
  }
  std::vector<cdouble> amps(std::size_t{1} << n, cdouble{0.0, 0.0});
  std::set<std::size_t> seen;
  for (const auto& [bits, value] : entries) {
    if (bits.size() != static_cast<std::size_t>(n)) {
      throw Error(ErrorCode::BadLength, "basis string '" + bits +
                                            "' does not have length " +
                                            std::to_string(n));
    }
    std::size_t idx = 0;
    for (char c : bits) {
      if (c != '0' && c != '1') {
        throw Error(ErrorCode::ParseError,
                    "basis string '" + bits + "' is not a bitstring");
      }
      idx = (idx << 1) | static_cast<std::size_t>(c - '0');
    }
    if (!seen.insert(idx).second) {
      throw Error(ErrorCode::DuplicateBasis,
                  "basis string '" + bits + "' given twice");
    }
    amps[idx] = value;
  }
  return PureState(n, std::move(amps));
}

Bipartition::Bipartition(int n, std::vector<int> region_a)
    : n_(n), region_a_(std::move(region_a)) {
  std::sort(region_a_.begin(), region_a_.end());
  region_a_.erase(std::unique(region_a_.begin(), region_a_.end()),
                  region_a_.end());
  if (region_a_.empty()) {
    throw Error(ErrorCode::BadRegion, "region A must be nonempty");
  }
  if (static_cast<int>(region_a_.size()) >= n_) {
    throw Error(ErrorCode::BadRegion, "region A must be a proper subset");
  }
  if (region_a_.front() < 1 || region_a_.back() > n_) {
    throw Error(ErrorCode::BadRegion, "site index outside 1..n");
  }
}

std::vector<int> Bipartition::region_b() const {
  std::vector<int> b;
  std::size_t j = 0;
  for (int site = 1; site <= n_; ++site) {
    if (j < region_a_.size() && region_a_[j] == site) {
      ++j;
    } else {
      b.push_back(site);
    }
  }
  return b;
}

std::vector<double> DensityMatrix::eigenvalues() const {
  return eigenvalues_descending(mat);
}

void DensityMatrix::validate() const {
  const Eigen::MatrixXcd& m = mat;
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "density matrix not square");
  }
  double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-12) {
    throw Error(ErrorCode::Numerical,
                "density matrix not Hermitian (residue " + fmt_g12(herm) + ")");
  }
  double tr = std::abs(m.trace() - cdouble{1.0, 0.0});
  if (tr > 1e-12) {
    throw Error(ErrorCode::Numerical,
                "density matrix trace deviates from 1 by " + fmt_g12(tr));
  }
  for (double lambda : eigenvalues()) {
    if (lambda < -1e-10) {
      throw Error(ErrorCode::Numerical,
                  "density matrix eigenvalue " + fmt_g12(lambda) + " < -1e-10");
    }
  }
}

DensityMatrix reduced_density(const PureState& state, const Bipartition& part) {
  if (part.qubits() != state.qubits()) {
    throw Error(ErrorCode::BadRegion, "bipartition does not match the state");
  }
  const int n = state.qubits();
  const int m = part.size_a();
  const std::size_t dim_a = std::size_t{1} << m;
  const std::size_t dim_b = std::size_t{1} << (n - m);

  // Bit positions of region A / B sites; site order maps to index order with
  // the smallest site label as the most significant bit.
  std::vector<int> bits_a, bits_b;
  for (int site : part.region_a()) bits_a.push_back(site_bit(n, site));
  for (int site : part.region_b()) bits_b.push_back(site_bit(n, site));

  Eigen::MatrixXcd grouped(dim_a, dim_b);
  const auto& amps = state.amplitudes();
  for (std::size_t z = 0; z < amps.size(); ++z) {
    std::size_t ia = 0, ib = 0;
    for (std::size_t j = 0; j < bits_a.size(); ++j) {
      ia |= ((z >> bits_a[j]) & 1u) << (bits_a.size() - 1 - j);
    }
    for (std::size_t j = 0; j < bits_b.size(); ++j) {
      ib |= ((z >> bits_b[j]) & 1u) << (bits_b.size() - 1 - j);
    }
    grouped(static_cast<Eigen::Index>(ia), static_cast<Eigen::Index>(ib)) =
        amps[z];
  }
  return DensityMatrix{grouped * grouped.adjoint()};
}

double purity(const DensityMatrix& dm) {
  // Tr rho^2 = squared Frobenius norm for Hermitian rho.
  return dm.mat.squaredNorm();
}

double von_neumann_entropy(const DensityMatrix& dm) {
  double s = 0.0;
  for (double lambda : dm.eigenvalues()) {
    if (lambda > kEigCutoff) s -= lambda * std::log(lambda);
  }
  return s;
}

double renyi_entropy(const DensityMatrix& dm, double alpha) {
  if (alpha <= 0.0) {
    throw Error(ErrorCode::BadAlpha, "Renyi order must be positive");
  }
  if (std::abs(alpha - 1.0) <= 1e-12) return von_neumann_entropy(dm);
  double trace_pow = 0.0;
  for (double lambda : dm.eigenvalues()) {
    if (lambda > kEigCutoff) trace_pow += std::pow(lambda, alpha);
  }
  return std::log(trace_pow) / (1.0 - alpha);
}

double concurrence(const PureState& state, const Bipartition& part) {
  double radicand = 2.0 * (1.0 - purity(reduced_density(state, part)));
  return std::sqrt(std::max(0.0, radicand));
}

double generalized_concurrence(const PureState& state,
                               const Bipartition& part) {
  const int m = part.size_a();
  double scale = std::ldexp(1.0, m - 1);  // 2^{m-1}
  double radicand = 2.0 * (1.0 - scale * purity(reduced_density(state, part)));
  if (radicand < -1e-9) {
    throw Error(ErrorCode::NegativeRadicand,
                "radicand " + fmt_g12(radicand) + " for m = " +
                    std::to_string(m) +
                    "; m inconsistent with the state's entanglement");
  }
  return std::sqrt(std::max(0.0, radicand));
}

namespace {

// Representatives of the A <-> B symmetric pairs: every subset with
// |A| < n/2, plus the subsets of size n/2 containing site 1 when n is even.
std::vector<std::vector<int>> bipartition_representatives(int n) {
  std::vector<std::vector<int>> out;
  const std::size_t full = (std::size_t{1} << n) - 1;
  for (std::size_t mask = 1; mask < full; ++mask) {
    int size = std::popcount(mask);
    if (2 * size > n) continue;
    if (2 * size == n && !(mask & (std::size_t{1} << (n - 1)))) continue;
    std::vector<int> sites;
    for (int site = 1; site <= n; ++site) {
      if (mask & (std::size_t{1} << site_bit(n, site))) sites.push_back(site);
    }
    out.push_back(std::move(sites));
  }
  // Size-major then lexicographic, so report order is stable.
  std::sort(out.begin(), out.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return out;
}

}  // namespace

FlatSpectrumSummary flat_spectrum_report(const PureState& state, Exec exec,
                                         double relative_tol) {
  const int n = state.qubits();
  if (n > kMaxQubits) {
    throw Error(ErrorCode::TooLarge, "flat-spectrum report capped at n = 12");
  }
  auto subsets = bipartition_representatives(n);
  std::vector<SpectrumReport> reports(
      subsets.size(), SpectrumReport{Bipartition(n, subsets.front()), {}, 0, 0,
                                     0, false, false});

  const bool par = exec == Exec::parallel;
  const int count = static_cast<int>(subsets.size());
#pragma omp parallel for schedule(dynamic) num_threads(thread_cap()) if (par)
  for (int i = 0; i < count; ++i) {
    Bipartition part(n, subsets[i]);
    DensityMatrix dm = reduced_density(state, part);
    SpectrumReport rep{part, dm.eigenvalues(), 0, 0, 0, false, false};
    rep.vonNeumann = von_neumann_entropy(dm);
    rep.renyi2 = renyi_entropy(dm, 2.0);
    double lambda_max = rep.eigenvalues.front();
    double lambda_min_nonzero = lambda_max;
    for (double lambda : rep.eigenvalues) {
      if (lambda > kEigCutoff) {
        ++rep.rank;
        lambda_min_nonzero = lambda;
      }
    }
    rep.isFlat = lambda_max > 0.0 &&
                 (lambda_max - lambda_min_nonzero) <= relative_tol * lambda_max;
    int min_side = std::min(part.size_a(), n - part.size_a());
    rep.isMaxFlat = rep.isFlat && rep.rank == (1 << min_side);
    reports[i] = std::move(rep);
  }

  FlatSpectrumSummary summary;
  summary.isMaximallyEntangled = true;
  summary.rankTrivial = true;
  for (auto& rep : reports) {
    summary.isMaximallyEntangled &= rep.isFlat;
    summary.rankTrivial &= rep.rank == 1;
  }
  summary.reports = std::move(reports);
  return summary;
}

}  // namespace bellbound
