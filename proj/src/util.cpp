#include "bellbound/util.hpp"

#include <cstdio>

#include "bellbound/error.hpp"
#include "bellbound/exec.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>

namespace bellbound {

std::string fmt_g12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string fmt_e12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", x);
  return buf;
}

int thread_cap() {
  static const int cap = [] {
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("BELLBOUND_THREADS")) {
      int requested = std::atoi(env);
      if (requested > 0) n = std::min(n, requested);
    }
    return std::max(1, n);
  }();
  return cap;
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BadLength: return "BadLength";
    case ErrorCode::DuplicateBasis: return "DuplicateBasis";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::BadQubitCount: return "BadQubitCount";
    case ErrorCode::BadRegion: return "BadRegion";
    case ErrorCode::BadAlpha: return "BadAlpha";
    case ErrorCode::NegativeRadicand: return "NegativeRadicand";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadConcurrence: return "BadConcurrence";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DegenerateAngles: return "DegenerateAngles";
    case ErrorCode::OutOfGamut: return "OutOfGamut";
    case ErrorCode::BoundaryPoint: return "BoundaryPoint";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::WrongSize: return "WrongSize";
    case ErrorCode::BadArgument: return "BadArgument";
    case ErrorCode::Numerical: return "Numerical";
  }
  return "Unknown";
}

}  // namespace bellbound
