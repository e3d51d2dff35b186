#pragma once

#include <array>
#include <string>
#include <vector>

#include "bellbound/pauli_bell.hpp"
#include "bellbound/state.hpp"

namespace bellbound {

// The seven-qubit family
//   a1 |0000000> + a2 |0001111> + a3 |1111000> + a4 |1110111>
// in three coordinate systems: angles, coefficients, concurrence triple.
// Region A is site 7 throughout.

struct FamilyAngles {
  double theta1 = 0.0;  // [0, 2 pi]
  double theta2 = 0.0;  // [0, pi]
  double theta3 = 0.0;  // [0, pi]
};

struct FamilyCoeffs {
  std::array<double, 4> alpha{};  // unit norm

  double norm_sq() const {
    return alpha[0] * alpha[0] + alpha[1] * alpha[1] + alpha[2] * alpha[2] +
           alpha[3] * alpha[3];
  }
};

struct ConcurrenceTriple {
  double c1sq = 0.0;  // C^2_{1,A}
  double c2sq = 0.0;  // C^2_{2,A}
  double csq = 0.0;   // C^2_A
};

// a1 = sin t1, a2 = cos t1 sin t2, a3 = cos t1 cos t2 cos t3,
// a4 = cos t1 cos t2 sin t3. OutOfRange if an angle leaves its interval.
FamilyCoeffs coeffs_from_angles(const FamilyAngles& angles);

PureState state_from_coeffs(const FamilyCoeffs& coeffs);

// Forward map to the concurrence triple via the beta/gamma reductions; only
// squared coefficients enter, so sign branches coincide. degenerate flags
// cos(t1) = 0 or cos(t2) = 0, where t2 or t3 is unrecoverable and the t := 0
// convention applies.
struct ConcurrenceResult {
  ConcurrenceTriple triple;
  bool degenerate = false;
};

ConcurrenceResult concurrences_from_coeffs(const FamilyCoeffs& coeffs);

// Inverse map (principal branch, all alpha_i >= 0):
//   sin^2 t1 = 1/2 - sqrt(1-C1^2)/2
//   cos^2 t2 = (sqrt(1-C1^2) + sqrt(1-C2^2)) / (1 + sqrt(1-C1^2))
//   cos^2 t3 = ((sqrt(1-C1^2) sqrt(1-C2^2) + 1 - C1^2)
//               / (sqrt(1-C1^2) + sqrt(1-C2^2)) + sqrt(1-C^2))
//              / (sqrt(1-C1^2) + sqrt(1-C2^2))
// cos^2 values within 1e-12 of [0,1] are clamped; anything further is
// OutOfGamut naming the offending formula.
FamilyCoeffs coeffs_from_concurrences(const ConcurrenceTriple& triple);

// Closed-form diagonal of R^T R on the family:
//   xx = yy = 16 (a1^2+a3^2)(a2^2+a4^2) + 48 (a1^2 a4^2 + a2^2 a3^2)
//   zz      = 1 + 32 a1^2 a3^2 + 32 a2^2 a4^2
struct RtrDiagonal {
  double xx = 0.0;
  double yy = 0.0;
  double zz = 0.0;

  double bound() const;  // 2 sqrt(sum of the two largest)
};

RtrDiagonal rtr_diagonal(const FamilyCoeffs& coeffs);

// One figure row. Out-of-gamut points carry no bound.
struct SweepRow {
  double c1sq = 0.0;
  double c2sq = 0.0;
  double csq = 0.0;
  bool inGamut = false;
  double rxx = 0.0;
  double rzz = 0.0;
  double bound = 0.0;
};

enum class SweepFix { c1sq, c2sq };

// Rows ordered series-major then grid, independent of execution order.
std::vector<SweepRow> sweep(SweepFix fix, double fixed_value,
                            const std::vector<double>& series_values,
                            const std::vector<double>& csq_grid,
                            Exec exec = Exec::parallel);

std::vector<double> default_csq_grid();  // 201 uniform points on [0, 1]

// Figure reproductions: figure 1 fixes C1^2 = 0.75 with C2^2 series
// {0.75, 0.8, 0.85, 0.9, 0.95}; figure 2 fixes C2^2 = 0.75 with C1^2 series
// {0.75, 0.8, 0.85, 0.9, 0.95, 1}.
std::vector<SweepRow> figure_sweep(int figure, Exec exec = Exec::parallel);

enum class LocusMode { c2Independent, c1Independent };

// Checks the stated independence loci: c2Independent fixes
// 1 - 2 sqrt(1-C1^2) - sqrt(1-C^2) = 0 and sweeps the free C2^2;
// c1Independent fixes 1 - 2 sqrt(1-C2^2) + sqrt(1-C^2) = 0 and sweeps C1^2.
// Points failing the R_xx >= R_zz side condition or the gamut are counted
// and excluded from the deviation.
struct LocusReport {
  int samples = 0;
  int skippedOutOfGamut = 0;
  int sideConditionFailures = 0;
  double referenceBound = 0.0;
  double maxDeviation = 0.0;
};

LocusReport independence_locus_check(LocusMode mode, int samples,
                                     double anchor_csq = 1.0,
                                     double free_lo = 0.75,
                                     double free_hi = 0.999);

// Finite-difference stationarity and curvature of the bound at a family
// point, in probability coordinates p_i = alpha_i^2 on the simplex.
struct CriticalReport {
  FamilyCoeffs point;
  double eps = 0.0;
  double bound = 0.0;
  // max |f(p + eps d) - f(p - eps d)| / (2 eps) over tangent directions
  double gradientNorm = 0.0;
  // max |f(p + eps d) - f(p)|; O(eps^2) at a stationary point, which the
  // eps-scaling ratio test checks
  double forwardDiffMax = 0.0;
  std::string classification;  // local-max | local-min | saddle | degenerate
  std::array<double, 4> witnessUp{};    // direction with positive 2nd difference
  std::array<double, 4> witnessDown{};  // direction with negative 2nd difference
  std::vector<std::pair<std::array<double, 4>, double>> secondDifferences;
  std::string activeBranch;  // "xx" when R_xx >= R_zz in the neighborhood
};

CriticalReport classify_critical_point(const FamilyCoeffs& coeffs,
                                       double eps = 1e-3);

inline FamilyCoeffs critical_coeffs() { return {{0.5, 0.5, 0.5, 0.5}}; }

}  // namespace bellbound
