#include "bellbound/pauli_bell.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "bellbound/eig3.hpp"

namespace bellbound {

namespace {

constexpr double kImagTol = 1e-10;

inline int site_bit(int n, int site) { return n - site; }

// Single-qubit operator v . sigma = [[z, conj(l)], [l, -z]] with l = vx + i vy.
struct BlochOp {
  double z;
  cdouble l;
};

inline BlochOp bloch_op(const Vec3& v) { return {v[2], {v[0], v[1]}}; }

// Transition sums <bra| sigma_i |ket> at one site, combined into the real
// gradient 3-vector (x, y, z).
struct SigmaSums {
  cdouble m00{}, m01{}, m10{}, m11{};

  void add(const cdouble& bra0, const cdouble& bra1, const cdouble& ket0,
           const cdouble& ket1) {
    const cdouble c0 = std::conj(bra0);
    const cdouble c1 = std::conj(bra1);
    m00 += c0 * ket0;
    m01 += c0 * ket1;
    m10 += c1 * ket0;
    m11 += c1 * ket1;
  }

  Vec3 grad() const {
    return {(m01 + m10).real(), m01.imag() - m10.imag(), (m00 - m11).real()};
  }
};

void check_settings(const PureState& state, const BellSettings& settings) {
  const int n = state.qubits();
  if (settings.sites() != n ||
      static_cast<int>(settings.aPrime.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "settings carry " + std::to_string(settings.sites()) +
                    " sites for an n = " + std::to_string(n) + " state");
  }
  for (int k = 0; k < n; ++k) {
    if (std::abs(norm(settings.a[k]) - 1.0) > 1e-12 ||
        std::abs(norm(settings.aPrime[k]) - 1.0) > 1e-12) {
      throw Error(ErrorCode::BadArgument,
                  "Bloch vectors must be unit length");
    }
  }
}

// The Mermin-Klyshko pair recursion on applied states, fused into one pass
// over amplitude pairs per site:
//   u_k = (A_k (u + v) + A'_k (u - v)) / 2
//   v_k = (A'_k (u + v) - A_k (u - v)) / 2
// with base u_1 = A_1 psi, v_1 = A'_1 psi. Carrying the 1/2 at every later
// step makes the true operator value 2 <psi|u_n>.
void mk_base(const BlochOp& a, const BlochOp& ap, int n,
             const std::vector<cdouble>& psi, std::vector<cdouble>& u,
             std::vector<cdouble>& v) {
  const std::size_t step = std::size_t{1} << site_bit(n, 1);
  for (std::size_t base = 0; base < psi.size(); base += 2 * step) {
    for (std::size_t off = 0; off < step; ++off) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + step;
      const cdouble x0 = psi[i0], x1 = psi[i1];
      u[i0] = a.z * x0 + std::conj(a.l) * x1;
      u[i1] = a.l * x0 - a.z * x1;
      v[i0] = ap.z * x0 + std::conj(ap.l) * x1;
      v[i1] = ap.l * x0 - ap.z * x1;
    }
  }
}

void mk_step(const BlochOp& a, const BlochOp& ap, int site, int n,
             const std::vector<cdouble>& u_in, const std::vector<cdouble>& v_in,
             std::vector<cdouble>& u_out, std::vector<cdouble>& v_out) {
  const std::size_t step = std::size_t{1} << site_bit(n, site);
  for (std::size_t base = 0; base < u_in.size(); base += 2 * step) {
    for (std::size_t off = 0; off < step; ++off) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + step;
      const cdouble p0 = u_in[i0] + v_in[i0], p1 = u_in[i1] + v_in[i1];
      const cdouble m0 = u_in[i0] - v_in[i0], m1 = u_in[i1] - v_in[i1];
      const cdouble ap0 = a.z * p0 + std::conj(a.l) * p1;
      const cdouble ap1 = a.l * p0 - a.z * p1;
      const cdouble am0 = a.z * m0 + std::conj(a.l) * m1;
      const cdouble am1 = a.l * m0 - a.z * m1;
      const cdouble bp0 = ap.z * p0 + std::conj(ap.l) * p1;
      const cdouble bp1 = ap.l * p0 - ap.z * p1;
      const cdouble bm0 = ap.z * m0 + std::conj(ap.l) * m1;
      const cdouble bm1 = ap.l * m0 - ap.z * m1;
      u_out[i0] = 0.5 * (ap0 + bm0);
      u_out[i1] = 0.5 * (ap1 + bm1);
      v_out[i0] = 0.5 * (bp0 - am0);
      v_out[i1] = 0.5 * (bp1 - am1);
    }
  }
}

// Joint linear coefficients of (a_k, a'_k) in the objective, from the dual
// pair (w, z) above the site and the forward pair (u, v) below it:
//   g = (o(w,u) + o(w,v) - o(z,u) + o(z,v)) / 2
//   h = (o(w,u) - o(w,v) + o(z,u) + o(z,v)) / 2
// where o(x, y) are the sigma transition sums at the site.
void mk_gradients(const std::vector<cdouble>& w, const std::vector<cdouble>& z,
                  const std::vector<cdouble>& u, const std::vector<cdouble>& v,
                  int site, int n, Vec3& g, Vec3& h) {
  const std::size_t step = std::size_t{1} << site_bit(n, site);
  SigmaSums wu, wv, zu, zv;
  for (std::size_t base = 0; base < w.size(); base += 2 * step) {
    for (std::size_t off = 0; off < step; ++off) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + step;
      wu.add(w[i0], w[i1], u[i0], u[i1]);
      wv.add(w[i0], w[i1], v[i0], v[i1]);
      zu.add(z[i0], z[i1], u[i0], u[i1]);
      zv.add(z[i0], z[i1], v[i0], v[i1]);
    }
  }
  const Vec3 o1 = wu.grad(), o2 = wv.grad(), o3 = zu.grad(), o4 = zv.grad();
  for (int i = 0; i < 3; ++i) {
    g[i] = 0.5 * (o1[i] + o2[i] - o3[i] + o4[i]);
    h[i] = 0.5 * (o1[i] - o2[i] + o3[i] + o4[i]);
  }
}

// Base-site coefficients: V = <w|A_1 psi> + <z|A'_1 psi>.
void mk_base_gradients(const std::vector<cdouble>& w,
                       const std::vector<cdouble>& z,
                       const std::vector<cdouble>& psi, int n, Vec3& g,
                       Vec3& h) {
  const std::size_t step = std::size_t{1} << site_bit(n, 1);
  SigmaSums wp, zp;
  for (std::size_t base = 0; base < w.size(); base += 2 * step) {
    for (std::size_t off = 0; off < step; ++off) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + step;
      wp.add(w[i0], w[i1], psi[i0], psi[i1]);
      zp.add(z[i0], z[i1], psi[i0], psi[i1]);
    }
  }
  g = wp.grad();
  h = zp.grad();
}

// In-place adjoint fold of an updated site into the dual pair:
//   w <- (A_k (w - z) + A'_k (w + z)) / 2
//   z <- (A_k (w + z) - A'_k (w - z)) / 2
void mk_fold(const BlochOp& a, const BlochOp& ap, int site, int n,
             std::vector<cdouble>& w, std::vector<cdouble>& z) {
  const std::size_t step = std::size_t{1} << site_bit(n, site);
  for (std::size_t base = 0; base < w.size(); base += 2 * step) {
    for (std::size_t off = 0; off < step; ++off) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + step;
      const cdouble p0 = w[i0] + z[i0], p1 = w[i1] + z[i1];
      const cdouble m0 = w[i0] - z[i0], m1 = w[i1] - z[i1];
      const cdouble am0 = a.z * m0 + std::conj(a.l) * m1;
      const cdouble am1 = a.l * m0 - a.z * m1;
      const cdouble apw0 = a.z * p0 + std::conj(a.l) * p1;
      const cdouble apw1 = a.l * p0 - a.z * p1;
      const cdouble bp0 = ap.z * p0 + std::conj(ap.l) * p1;
      const cdouble bp1 = ap.l * p0 - ap.z * p1;
      const cdouble bm0 = ap.z * m0 + std::conj(ap.l) * m1;
      const cdouble bm1 = ap.l * m0 - ap.z * m1;
      w[i0] = 0.5 * (am0 + bp0);
      w[i1] = 0.5 * (am1 + bp1);
      z[i0] = 0.5 * (apw0 - bm0);
      z[i1] = 0.5 * (apw1 - bm1);
    }
  }
}

void mk_forward(const PureState& state, const BellSettings& s,
                std::vector<std::vector<cdouble>>& u,
                std::vector<std::vector<cdouble>>& v) {
  const int n = state.qubits();
  const auto& psi = state.amplitudes();
  mk_base(bloch_op(s.a[0]), bloch_op(s.aPrime[0]), n, psi, u[1], v[1]);
  for (int k = 2; k <= n; ++k) {
    mk_step(bloch_op(s.a[k - 1]), bloch_op(s.aPrime[k - 1]), k, n, u[k - 1],
            v[k - 1], u[k], v[k]);
  }
}

double inner_real(const std::vector<cdouble>& bra,
                  const std::vector<cdouble>& ket) {
  cdouble acc = 0.0;
  for (std::size_t i = 0; i < bra.size(); ++i) {
    acc += std::conj(bra[i]) * ket[i];
  }
  return acc.real();
}

struct Workspace {
  std::vector<std::vector<cdouble>> u, v;
  std::vector<cdouble> w, z;

  explicit Workspace(int n) {
    const std::size_t dim = std::size_t{1} << n;
    u.assign(n + 1, std::vector<cdouble>(dim));
    v.assign(n + 1, std::vector<cdouble>(dim));
    w.assign(dim, 0.0);
    z.assign(dim, 0.0);
  }
};

}  // namespace

cdouble pauli_string_expectation(const PureState& state,
                                 const std::vector<int>& letters) {
  const int n = state.qubits();
  if (static_cast<int>(letters.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "Pauli string length does not match the state");
  }
  std::size_t flip = 0, yz = 0;
  int y_count = 0;
  for (int k = 1; k <= n; ++k) {
    const std::size_t bit = std::size_t{1} << site_bit(n, k);
    switch (letters[k - 1]) {
      case kPauliX: flip |= bit; break;
      case kPauliY: flip |= bit; yz |= bit; ++y_count; break;
      case kPauliZ: yz |= bit; break;
      default:
        throw Error(ErrorCode::BadArgument, "Pauli letter must be x, y or z");
    }
  }
  // P|b> = i^{#y} (-1)^{popcount(b & yz)} |b xor flip>
  static const cdouble kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const auto& amps = state.amplitudes();
  cdouble acc = 0.0;
  for (std::size_t b = 0; b < amps.size(); ++b) {
    const double sign = (std::popcount(b & yz) & 1) ? -1.0 : 1.0;
    acc += std::conj(amps[b ^ flip]) * amps[b] * sign;
  }
  return acc * kIPow[y_count & 3];
}

RMatrix r_matrix(const PureState& state, Exec exec) {
  const int n = state.qubits();
  if (n > kMaxQubits) {
    throw Error(ErrorCode::TooLarge, "R-matrix capped at n = 12");
  }
  std::size_t rows = 1;
  for (int k = 1; k < n; ++k) rows *= 3;

  RMatrix r;
  r.n = n;
  r.entries.resize(static_cast<Eigen::Index>(rows), 3);

  const bool par = exec == Exec::parallel;
  const auto row_count = static_cast<long long>(rows);
  double worst_residue = 0.0;
#pragma omp parallel for schedule(dynamic, 16) num_threads(thread_cap()) \
    reduction(max : worst_residue) if (par)
  for (long long row = 0; row < row_count; ++row) {
    std::vector<int> letters(n, 0);
    std::size_t rest = static_cast<std::size_t>(row);
    for (int k = n - 1; k >= 1; --k) {
      letters[k - 1] = static_cast<int>(rest % 3);
      rest /= 3;
    }
    for (int col = 0; col < 3; ++col) {
      letters[n - 1] = col;
      const cdouble value = pauli_string_expectation(state, letters);
      worst_residue = std::max(worst_residue, std::abs(value.imag()));
      r.entries(static_cast<Eigen::Index>(row), col) = value.real();
    }
  }
  if (worst_residue > kImagTol) {
    throw Error(ErrorCode::Numerical,
                "Pauli expectation has imaginary residue " +
                    fmt_g12(worst_residue));
  }
  return r;
}

BoundReport bell_bound(const RMatrix& r) {
  const Eigen::Matrix3d gram = r.gram();
  std::array<std::array<double, 3>, 3> m{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m[i][j] = gram(i, j);
  }
  BoundReport report;
  report.eigenvalues = eig3_sym(m);
  report.bound =
      2.0 * std::sqrt(std::max(0.0, report.eigenvalues[0] +
                                        report.eigenvalues[1]));
  report.isExact = r.n == 2;
  report.classicalViolation = report.bound > 2.0 + 1e-9;
  return report;
}

double bell_operator_value(const PureState& state,
                           const BellSettings& settings) {
  check_settings(state, settings);
  const int n = state.qubits();
  Workspace ws(n);
  mk_forward(state, settings, ws.u, ws.v);
  return 2.0 * inner_real(state.amplitudes(), ws.u[n]);
}

SeesawResult seesaw_run(const PureState& state, BellSettings init,
                        int max_sweeps, double tol) {
  check_settings(state, init);
  const int n = state.qubits();
  const auto& psi = state.amplitudes();
  Workspace ws(n);

  SeesawResult result;
  result.settings = std::move(init);
  BellSettings& s = result.settings;

  mk_forward(state, s, ws.u, ws.v);
  double value = 2.0 * inner_real(psi, ws.u[n]);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    mk_forward(state, s, ws.u, ws.v);
    // Backward pass; site k sees updated vectors at sites > k through the
    // dual pair (w, z) and pre-sweep vectors at sites < k through (u, v).
    ws.w = psi;
    std::fill(ws.z.begin(), ws.z.end(), cdouble{0.0, 0.0});
    double swept_value = value;
    for (int k = n; k >= 1; --k) {
      Vec3 g, h;
      if (k == 1) {
        mk_base_gradients(ws.w, ws.z, psi, n, g, h);
      } else {
        mk_gradients(ws.w, ws.z, ws.u[k - 1], ws.v[k - 1], k, n, g, h);
      }
      // Joint closed-form update; a degenerate coefficient keeps the old
      // vector.
      Vec3 updated;
      if (normalized(g, updated)) s.a[k - 1] = updated;
      if (normalized(h, updated)) s.aPrime[k - 1] = updated;
      if (k == 1) {
        swept_value = 2.0 * (dot(s.a[0], g) + dot(s.aPrime[0], h));
      } else {
        mk_fold(bloch_op(s.a[k - 1]), bloch_op(s.aPrime[k - 1]), k, n, ws.w,
                ws.z);
      }
    }
    result.sweeps = sweep + 1;
    result.trace.push_back(swept_value);
    const double improvement = swept_value - value;
    value = swept_value;
    if (improvement < tol) {
      result.converged = true;
      break;
    }
  }
  result.value = value;
  return result;
}

GammaSandwich maximize_bell(const PureState& state, int restarts,
                            std::uint64_t seed, Exec exec, double tol) {
  const int n = state.qubits();
  if (n > 10) {
    throw Error(ErrorCode::TooLarge, "see-saw maximization capped at n = 10");
  }
  if (restarts < 1) {
    throw Error(ErrorCode::BadArgument, "restarts must be at least 1");
  }

  std::vector<SeesawResult> results(restarts);
  const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(dynamic) num_threads(thread_cap()) if (par)
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 eng = seeded_engine(seed, static_cast<std::uint64_t>(r));
    BellSettings init;
    init.a.reserve(n);
    init.aPrime.reserve(n);
    for (int k = 0; k < n; ++k) {
      init.a.push_back(random_unit_vec(eng));
      init.aPrime.push_back(random_unit_vec(eng));
    }
    results[r] = seesaw_run(state, std::move(init), 500, tol);
  }

  int best = 0;
  for (int r = 1; r < restarts; ++r) {
    if (results[r].value > results[best].value) best = r;
  }

  GammaSandwich sandwich;
  sandwich.lower = results[best].value;
  sandwich.settings = results[best].settings;
  sandwich.restarts = restarts;
  sandwich.converged = results[best].converged;
  sandwich.upper = bell_bound(r_matrix(state, exec)).bound;
  return sandwich;
}

double theorem_gamma(double c_a, int alpha_half_qubits) {
  if (c_a < 0.0 || c_a > 1.0) {
    throw Error(ErrorCode::BadConcurrence, "concurrence must lie in [0, 1]");
  }
  if (alpha_half_qubits < 1) {
    throw Error(ErrorCode::BadArgument, "alpha must be a positive integer");
  }
  const double csq = c_a * c_a;
  const double branch_point = std::ldexp(1.0, 2 - 2 * alpha_half_qubits);
  if (csq <= branch_point) {
    return 2.0 * std::sqrt(1.0 + std::ldexp(csq, 2 * alpha_half_qubits - 2));
  }
  return 2.0 * std::exp2(0.5 * (2 * alpha_half_qubits - 1)) * c_a;
}

PureState theorem_state(int alpha_half_qubits, double c_a, int pad_qubits) {
  if (c_a < 0.0 || c_a > 1.0) {
    throw Error(ErrorCode::BadConcurrence, "concurrence must lie in [0, 1]");
  }
  if (alpha_half_qubits < 1 || pad_qubits < 0) {
    throw Error(ErrorCode::BadArgument,
                "alpha must be >= 1 and pad must be >= 0");
  }
  const int n = pad_qubits + 2 * alpha_half_qubits;
  if (n > kMaxQubits) {
    throw Error(ErrorCode::TooLarge,
                "pad + 2 alpha = " + std::to_string(n) + " exceeds 12 qubits");
  }
  const double s = std::sqrt(std::max(0.0, 1.0 - c_a * c_a));
  const double lambda_plus = std::sqrt((1.0 + s) / 2.0);
  const double lambda_minus = std::sqrt((1.0 - s) / 2.0);
  std::string zeros(n, '0');
  std::string ones = std::string(pad_qubits, '0') +
                     std::string(2 * alpha_half_qubits, '1');
  return make_state(n, {{zeros, lambda_minus}, {ones, lambda_plus}});
}

}  // namespace bellbound
