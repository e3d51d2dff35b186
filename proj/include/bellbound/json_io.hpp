#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bellbound/family7.hpp"
#include "bellbound/pauli_bell.hpp"
#include "bellbound/state.hpp"
#include "bellbound/toric7.hpp"

namespace bellbound {

// State file schema:
//   {"n": 7, "amplitudes": [{"basis": "0001111", "re": 0.5, "im": 0.0}, ...]}
// Basis strings are site-1-leftmost; omitted basis states are zero. Malformed
// JSON raises ParseError with the byte offset in the message.
PureState load_state_json(const std::string& text);
PureState load_state_file(const std::string& path);

std::string state_to_json(const PureState& state);

// Report emitters. Hand-rolled so field order and float formatting (%.12e)
// are byte-stable across runs.
std::string to_json(const BoundReport& report);
std::string to_json(const GammaSandwich& sandwich);
std::string to_json(const ToricReport& report);
std::string to_json(const SpectrumReport& report);
std::string to_json(const CriticalReport& report);

struct AnalyzeReport {
  int n = 0;
  FlatSpectrumSummary spectra;
  std::vector<double> siteConcurrences;  // |A| = 1 cuts, site order
  BoundReport bound;
  std::optional<GammaSandwich> maximize;
};

std::string to_json(const AnalyzeReport& report);
std::string analyze_to_csv(const AnalyzeReport& report);

// CSV schema: c1sq,c2sq,csq,rxx,rzz,bound,gamut (12 significant digits,
// empty value cells on out-of-gamut rows).
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

std::string toric_spectrum_to_json(const std::vector<double>& eigenvalues);

}  // namespace bellbound
