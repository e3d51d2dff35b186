#include "bellbound/family7.hpp"

#include <algorithm>
#include <cmath>

namespace bellbound {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kClampTol = 1e-12;  // cos^2 values this far outside [0,1] clamp
constexpr double kNormTol = 1e-9;

double checked_unit_interval(double value, const char* name) {
  if (value < -kClampTol || value > 1.0 + kClampTol) {
    throw Error(ErrorCode::BadConcurrence,
                std::string(name) + " = " + fmt_g12(value) +
                    " outside [0, 1]");
  }
  return std::clamp(value, 0.0, 1.0);
}

// Closed-form bound in probability coordinates p_i = alpha_i^2.
struct RtrProbs {
  double xx, zz;
};

RtrProbs rtr_from_probs(const std::array<double, 4>& p) {
  double xx = 16.0 * (p[0] + p[2]) * (p[1] + p[3]) +
              48.0 * (p[0] * p[3] + p[1] * p[2]);
  double zz = 1.0 + 32.0 * p[0] * p[2] + 32.0 * p[1] * p[3];
  return {xx, zz};
}

double bound_from_probs(const std::array<double, 4>& p) {
  RtrProbs r = rtr_from_probs(p);
  // Eigenvalues are (xx, xx, zz); the two largest sum to xx + max(xx, zz).
  return 2.0 * std::sqrt(std::max(0.0, r.xx + std::max(r.xx, r.zz)));
}

}  // namespace

FamilyCoeffs coeffs_from_angles(const FamilyAngles& angles) {
  const double slack = 1e-12;
  if (angles.theta1 < -slack || angles.theta1 > 2.0 * kPi + slack ||
      angles.theta2 < -slack || angles.theta2 > kPi + slack ||
      angles.theta3 < -slack || angles.theta3 > kPi + slack) {
    throw Error(ErrorCode::OutOfRange,
                "angles must satisfy 0 <= theta1 <= 2pi, 0 <= theta2, theta3 <= pi");
  }
  const double s1 = std::sin(angles.theta1), c1 = std::cos(angles.theta1);
  const double s2 = std::sin(angles.theta2), c2 = std::cos(angles.theta2);
  const double s3 = std::sin(angles.theta3), c3 = std::cos(angles.theta3);
  return {{s1, c1 * s2, c1 * c2 * c3, c1 * c2 * s3}};
}

PureState state_from_coeffs(const FamilyCoeffs& coeffs) {
  if (std::abs(coeffs.norm_sq() - 1.0) > kNormTol) {
    throw Error(ErrorCode::NotNormalized,
                "family coefficients norm^2 deviates from 1 by " +
                    fmt_g12(std::abs(coeffs.norm_sq() - 1.0)));
  }
  return make_state(7, {{"0000000", coeffs.alpha[0]},
                        {"0001111", coeffs.alpha[1]},
                        {"1111000", coeffs.alpha[2]},
                        {"1110111", coeffs.alpha[3]}});
}

ConcurrenceResult concurrences_from_coeffs(const FamilyCoeffs& coeffs) {
  if (std::abs(coeffs.norm_sq() - 1.0) > kNormTol) {
    throw Error(ErrorCode::NotNormalized,
                "family coefficients norm^2 deviates from 1 by " +
                    fmt_g12(std::abs(coeffs.norm_sq() - 1.0)));
  }
  const double a1 = coeffs.alpha[0] * coeffs.alpha[0];
  const double a2 = coeffs.alpha[1] * coeffs.alpha[1];
  const double a3 = coeffs.alpha[2] * coeffs.alpha[2];
  const double a4 = coeffs.alpha[3] * coeffs.alpha[3];

  // Principal-branch angle recovery only ever enters through squares:
  // sin^2 t1 = a1, cos^2 t1 cos^2 t2 = a3 + a4. The beta reduction leaves
  // (sin t1, cos t1, 0, 0), the gamma reduction (sin t1, cos t1 sin t2,
  // cos t1 cos t2, 0).
  ConcurrenceResult out;
  const double cos2t1 = 1.0 - a1;
  out.degenerate = cos2t1 <= kClampTol ||
                   (a3 + a4) <= kClampTol * std::max(cos2t1, kClampTol);

  const double beta_purity = a1 * a1 + cos2t1 * cos2t1;
  const double g13 = a1 + a3 + a4;  // gamma_1^2 + gamma_3^2
  const double gamma_purity = g13 * g13 + a2 * a2;
  const double p_a = (a1 + a3) * (a1 + a3) + (a2 + a4) * (a2 + a4);

  out.triple.c1sq = std::clamp(2.0 * (1.0 - beta_purity), 0.0, 1.0);
  out.triple.c2sq = std::clamp(2.0 * (1.0 - gamma_purity), 0.0, 1.0);
  out.triple.csq = std::clamp(2.0 * (1.0 - p_a), 0.0, 1.0);
  return out;
}

FamilyCoeffs coeffs_from_concurrences(const ConcurrenceTriple& triple) {
  const double c1sq = checked_unit_interval(triple.c1sq, "C1^2");
  const double c2sq = checked_unit_interval(triple.c2sq, "C2^2");
  const double csq = checked_unit_interval(triple.csq, "C^2");

  const double s1 = std::sqrt(1.0 - c1sq);
  const double s2 = std::sqrt(1.0 - c2sq);
  const double s = std::sqrt(1.0 - csq);

  const double sin2t1 = 0.5 - 0.5 * s1;
  const double cos2t1 = 0.5 + 0.5 * s1;

  double cos2t2 = (s1 + s2) / (1.0 + s1);
  if (cos2t2 < -kClampTol || cos2t2 > 1.0 + kClampTol) {
    throw Error(ErrorCode::OutOfGamut,
                "cos^2(theta2) = " + fmt_g12(cos2t2) + " outside [0, 1]");
  }
  cos2t2 = std::clamp(cos2t2, 0.0, 1.0);

  double cos2t3;
  const double denom = s1 + s2;
  if (denom <= kClampTol) {
    // C1^2 = C2^2 = 1 forces cos^2(theta2) = 0; theta3 drops out and the
    // triple is admissible only with C^2 = 1.
    if (s > 1e-9) {
      throw Error(ErrorCode::OutOfGamut,
                  "cos^2(theta3) diverges: C1^2 = C2^2 = 1 requires C^2 = 1, "
                  "got C^2 = " + fmt_g12(csq));
    }
    cos2t3 = 0.5;
  } else {
    const double inner = (s1 * s2 + (1.0 - c1sq)) / denom;
    cos2t3 = (inner + s) / denom;
    if (cos2t3 < -kClampTol || cos2t3 > 1.0 + kClampTol) {
      throw Error(ErrorCode::OutOfGamut,
                  "cos^2(theta3) = " + fmt_g12(cos2t3) + " outside [0, 1]");
    }
    cos2t3 = std::clamp(cos2t3, 0.0, 1.0);
  }

  FamilyCoeffs coeffs;
  coeffs.alpha[0] = std::sqrt(sin2t1);
  coeffs.alpha[1] = std::sqrt(cos2t1 * (1.0 - cos2t2));
  coeffs.alpha[2] = std::sqrt(cos2t1 * cos2t2 * cos2t3);
  coeffs.alpha[3] = std::sqrt(cos2t1 * cos2t2 * (1.0 - cos2t3));
  return coeffs;
}

double RtrDiagonal::bound() const {
  std::array<double, 3> v{xx, yy, zz};
  std::sort(v.begin(), v.end(), std::greater<double>());
  return 2.0 * std::sqrt(std::max(0.0, v[0] + v[1]));
}

RtrDiagonal rtr_diagonal(const FamilyCoeffs& coeffs) {
  if (std::abs(coeffs.norm_sq() - 1.0) > kNormTol) {
    throw Error(ErrorCode::NotNormalized,
                "family coefficients norm^2 deviates from 1 by " +
                    fmt_g12(std::abs(coeffs.norm_sq() - 1.0)));
  }
  const std::array<double, 4> p{
      coeffs.alpha[0] * coeffs.alpha[0], coeffs.alpha[1] * coeffs.alpha[1],
      coeffs.alpha[2] * coeffs.alpha[2], coeffs.alpha[3] * coeffs.alpha[3]};
  RtrProbs r = rtr_from_probs(p);
  return {r.xx, r.xx, r.zz};
}

std::vector<double> default_csq_grid() {
  std::vector<double> grid(201);
  for (int i = 0; i <= 200; ++i) grid[i] = static_cast<double>(i) / 200.0;
  return grid;
}

std::vector<SweepRow> sweep(SweepFix fix, double fixed_value,
                            const std::vector<double>& series_values,
                            const std::vector<double>& csq_grid, Exec exec) {
  if (series_values.empty() || csq_grid.empty()) {
    throw Error(ErrorCode::EmptyGrid, "sweep needs nonempty grids");
  }
  checked_unit_interval(fixed_value, "fixed concurrence");
  for (double v : series_values) checked_unit_interval(v, "series value");
  for (double v : csq_grid) checked_unit_interval(v, "csq grid value");

  const auto total =
      static_cast<long long>(series_values.size() * csq_grid.size());
  std::vector<SweepRow> rows(static_cast<std::size_t>(total));

  const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(static) num_threads(thread_cap()) if (par)
  for (long long idx = 0; idx < total; ++idx) {
    const std::size_t si = static_cast<std::size_t>(idx) / csq_grid.size();
    const std::size_t gi = static_cast<std::size_t>(idx) % csq_grid.size();
    SweepRow row;
    row.c1sq = fix == SweepFix::c1sq ? fixed_value : series_values[si];
    row.c2sq = fix == SweepFix::c2sq ? fixed_value : series_values[si];
    row.csq = csq_grid[gi];
    try {
      FamilyCoeffs coeffs =
          coeffs_from_concurrences({row.c1sq, row.c2sq, row.csq});
      RtrDiagonal rtr = rtr_diagonal(coeffs);
      row.inGamut = true;
      row.rxx = rtr.xx;
      row.rzz = rtr.zz;
      row.bound = rtr.bound();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::OutOfGamut) throw;
      row.inGamut = false;
    }
    rows[static_cast<std::size_t>(idx)] = row;
  }
  return rows;
}

std::vector<SweepRow> figure_sweep(int figure, Exec exec) {
  if (figure == 1) {
    return sweep(SweepFix::c1sq, 0.75, {0.75, 0.8, 0.85, 0.9, 0.95},
                 default_csq_grid(), exec);
  }
  if (figure == 2) {
    return sweep(SweepFix::c2sq, 0.75, {0.75, 0.8, 0.85, 0.9, 0.95, 1.0},
                 default_csq_grid(), exec);
  }
  throw Error(ErrorCode::BadArgument, "figure must be 1 or 2");
}

LocusReport independence_locus_check(LocusMode mode, int samples,
                                     double anchor_csq, double free_lo,
                                     double free_hi) {
  if (samples < 2) {
    throw Error(ErrorCode::BadArgument, "locus check needs samples >= 2");
  }
  checked_unit_interval(anchor_csq, "anchor C^2");
  checked_unit_interval(free_lo, "free range low");
  checked_unit_interval(free_hi, "free range high");

  const double s = std::sqrt(1.0 - anchor_csq);
  double c1sq = 0.0, c2sq = 0.0;
  if (mode == LocusMode::c2Independent) {
    // 1 - 2 sqrt(1-C1^2) - sqrt(1-C^2) = 0
    const double s1 = 0.5 * (1.0 - s);
    c1sq = 1.0 - s1 * s1;
  } else {
    // 1 - 2 sqrt(1-C2^2) + sqrt(1-C^2) = 0
    const double s2 = 0.5 * (1.0 + s);
    c2sq = 1.0 - s2 * s2;
  }

  LocusReport report;
  report.samples = samples;
  bool have_reference = false;
  for (int i = 0; i < samples; ++i) {
    const double free_value =
        free_lo + (free_hi - free_lo) * static_cast<double>(i) /
                      static_cast<double>(samples - 1);
    ConcurrenceTriple triple =
        mode == LocusMode::c2Independent
            ? ConcurrenceTriple{c1sq, free_value, anchor_csq}
            : ConcurrenceTriple{free_value, c2sq, anchor_csq};
    RtrDiagonal rtr;
    try {
      rtr = rtr_diagonal(coeffs_from_concurrences(triple));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::OutOfGamut) throw;
      ++report.skippedOutOfGamut;
      continue;
    }
    if (rtr.xx < rtr.zz) {
      ++report.sideConditionFailures;
      continue;
    }
    const double bound = rtr.bound();
    if (!have_reference) {
      report.referenceBound = bound;
      have_reference = true;
    }
    report.maxDeviation =
        std::max(report.maxDeviation, std::abs(bound - report.referenceBound));
  }
  return report;
}

CriticalReport classify_critical_point(const FamilyCoeffs& coeffs,
                                       double eps) {
  if (eps < 1e-5 || eps > 1e-1) {
    throw Error(ErrorCode::BadArgument, "eps must lie in [1e-5, 1e-1]");
  }
  if (std::abs(coeffs.norm_sq() - 1.0) > kNormTol) {
    throw Error(ErrorCode::NotNormalized,
                "family coefficients norm^2 deviates from 1 by " +
                    fmt_g12(std::abs(coeffs.norm_sq() - 1.0)));
  }
  std::array<double, 4> p{
      coeffs.alpha[0] * coeffs.alpha[0], coeffs.alpha[1] * coeffs.alpha[1],
      coeffs.alpha[2] * coeffs.alpha[2], coeffs.alpha[3] * coeffs.alpha[3]};
  for (double pi : p) {
    if (pi < eps) {
      throw Error(ErrorCode::BoundaryPoint,
                  "probability coordinate " + fmt_g12(pi) +
                      " < eps; one-sided differences unreliable");
    }
  }

  // Fixed tangent basis (components sum to zero) plus pairwise combinations.
  const double r2 = 1.0 / std::sqrt(2.0);
  std::vector<std::array<double, 4>> dirs = {
      {0.5, -0.5, -0.5, 0.5}, {r2, 0.0, 0.0, -r2}, {0.0, r2, -r2, 0.0}};
  const std::size_t base = dirs.size();
  for (std::size_t i = 0; i < base; ++i) {
    for (std::size_t j = i + 1; j < base; ++j) {
      for (double sign : {1.0, -1.0}) {
        std::array<double, 4> d{};
        double nsq = 0.0;
        for (int c = 0; c < 4; ++c) {
          d[c] = dirs[i][c] + sign * dirs[j][c];
          nsq += d[c] * d[c];
        }
        const double inv = 1.0 / std::sqrt(nsq);
        for (double& c : d) c *= inv;
        dirs.push_back(d);
      }
    }
  }

  CriticalReport report;
  report.point = coeffs;
  report.eps = eps;
  report.bound = bound_from_probs(p);

  const RtrProbs at_point = rtr_from_probs(p);
  bool xx_branch = at_point.xx >= at_point.zz;
  const double noise_floor = 1e-10 * std::max(1.0, report.bound);
  bool has_up = false, has_down = false;

  for (const auto& d : dirs) {
    std::array<double, 4> plus = p, minus = p;
    for (int c = 0; c < 4; ++c) {
      plus[c] += eps * d[c];
      minus[c] -= eps * d[c];
    }
    xx_branch = xx_branch && rtr_from_probs(plus).xx >= rtr_from_probs(plus).zz &&
                rtr_from_probs(minus).xx >= rtr_from_probs(minus).zz;
    const double fp = bound_from_probs(plus);
    const double fm = bound_from_probs(minus);
    report.gradientNorm =
        std::max(report.gradientNorm, std::abs(fp - fm) / (2.0 * eps));
    report.forwardDiffMax =
        std::max(report.forwardDiffMax, std::abs(fp - report.bound));
    const double second = fp - 2.0 * report.bound + fm;
    report.secondDifferences.emplace_back(d, second);
    if (second > noise_floor && !has_up) {
      has_up = true;
      report.witnessUp = d;
    }
    if (second < -noise_floor && !has_down) {
      has_down = true;
      report.witnessDown = d;
    }
  }

  if (has_up && has_down) {
    report.classification = "saddle";
  } else if (has_up) {
    report.classification = "local-min";
  } else if (has_down) {
    report.classification = "local-max";
  } else {
    report.classification = "degenerate";
  }
  report.activeBranch = xx_branch ? "xx" : "mixed";
  return report;
}

}  // namespace bellbound
