#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>

namespace bellbound {

using cdouble = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 scaled(const Vec3& a, double s) {
  return {a[0] * s, a[1] * s, a[2] * s};
}

inline Vec3 add(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec3 sub(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

// Normalizes a, returning false (and leaving out untouched) when ||a|| is too
// small to divide by.
inline bool normalized(const Vec3& a, Vec3& out) {
  double n = norm(a);
  if (n < 1e-14) return false;
  out = scaled(a, 1.0 / n);
  return true;
}

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Deterministic per-stream generator: stream k of a master seed. Used to give
// each see-saw restart its own generator so serial and concurrent runs agree
// bit for bit.
inline std::mt19937_64 seeded_engine(uint64_t seed, uint64_t stream) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ (stream + 1)));
}

inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Uniform point on the unit sphere (Marsaglia rejection on the cube).
inline Vec3 random_unit_vec(std::mt19937_64& eng) {
  for (;;) {
    Vec3 v = {2.0 * uniform01(eng) - 1.0, 2.0 * uniform01(eng) - 1.0,
              2.0 * uniform01(eng) - 1.0};
    double n2 = dot(v, v);
    if (n2 > 1e-12 && n2 <= 1.0) return scaled(v, 1.0 / std::sqrt(n2));
  }
}

// Fixed-width float formatting used by the report emitters: 12 significant
// digits for CSV cells, 13-digit scientific for JSON values. Both are stable
// across runs, which the CLI determinism contract depends on.
std::string fmt_g12(double x);
std::string fmt_e12(double x);

}  // namespace bellbound
