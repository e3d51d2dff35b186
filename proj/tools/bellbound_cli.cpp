// bellbound: entanglement / Bell-violation analysis for small qubit systems.
//
// Subcommands: analyze, family sweep|invert|critical, bell maximize,
// toric verify|spectrum. All output is deterministic for a fixed command
// line and seed. BELLBOUND_THREADS caps OpenMP parallelism.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bellbound/family7.hpp"
#include "bellbound/json_io.hpp"
#include "bellbound/pauli_bell.hpp"
#include "bellbound/state.hpp"
#include "bellbound/toric7.hpp"

namespace {

using namespace bellbound;

// Exit-code contract: 0 success, 2 parse/format, 3 domain (size/gamut/...),
// 4 numerical non-convergence, 5 input state not normalized.
int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
      return 2;
    case ErrorCode::NotNormalized:
      return 5;
    case ErrorCode::Numerical:
      return 4;
    default:
      return 3;
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::ParseError, "cannot open output file: " + out_path);
  }
  out << text;
}

struct Options {
  std::string state_path;
  std::string out_path;
  std::uint64_t seed = kDefaultSeed;
  int restarts = kDefaultRestarts;
  std::string format = "json";
  bool maximize = false;
  int figure = 1;
  double c1sq = 0.0, c2sq = 0.0, csq = 0.0;
  double eps = 1e-3;
  double flat_tol = 1e-9;
  double seesaw_tol = 1e-10;
};

int run_analyze(const Options& opt) {
  PureState state = load_state_file(opt.state_path);
  AnalyzeReport report;
  report.n = state.qubits();
  report.spectra = flat_spectrum_report(state, Exec::parallel, opt.flat_tol);
  for (int site = 1; site <= state.qubits(); ++site) {
    report.siteConcurrences.push_back(
        concurrence(state, Bipartition(state.qubits(), {site})));
  }
  report.bound = bell_bound(r_matrix(state));
  if (opt.maximize) {
    report.maximize = maximize_bell(state, opt.restarts, opt.seed,
                                    Exec::parallel, opt.seesaw_tol);
  }
  emit(opt.format == "csv" ? analyze_to_csv(report) : to_json(report),
       opt.out_path);
  if (report.maximize && !report.maximize->converged) return 4;
  return 0;
}

int run_family_sweep(const Options& opt) {
  const std::string name = opt.figure == 1 ? "fig1.csv" : "fig2.csv";
  std::filesystem::path dir = opt.out_path.empty() ? "." : opt.out_path;
  std::filesystem::create_directories(dir);
  const auto rows = figure_sweep(opt.figure);
  const std::filesystem::path path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::ParseError,
                "cannot open output file: " + path.string());
  }
  out << sweep_to_csv(rows);
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

int run_family_invert(const Options& opt) {
  FamilyCoeffs coeffs = coeffs_from_concurrences({opt.c1sq, opt.c2sq, opt.csq});
  ConcurrenceResult round_trip = concurrences_from_coeffs(coeffs);
  std::string out = "{";
  out += "\"c1sq\": " + fmt_e12(round_trip.triple.c1sq);
  out += ", \"c2sq\": " + fmt_e12(round_trip.triple.c2sq);
  out += ", \"csq\": " + fmt_e12(round_trip.triple.csq);
  out += ", \"alpha\": [";
  for (int i = 0; i < 4; ++i) {
    if (i) out += ", ";
    out += fmt_e12(coeffs.alpha[i]);
  }
  out += "], \"alphaSquared\": [";
  for (int i = 0; i < 4; ++i) {
    if (i) out += ", ";
    out += fmt_e12(coeffs.alpha[i] * coeffs.alpha[i]);
  }
  out += "], \"degenerateAngles\": ";
  out += round_trip.degenerate ? "true" : "false";
  out += "}\n";
  emit(out, opt.out_path);
  return 0;
}

int run_family_critical(const Options& opt) {
  CriticalReport report = classify_critical_point(critical_coeffs(), opt.eps);
  emit(to_json(report) + "\n", opt.out_path);
  return 0;
}

int run_bell_maximize(const Options& opt) {
  PureState state = load_state_file(opt.state_path);
  GammaSandwich sandwich = maximize_bell(state, opt.restarts, opt.seed,
                                         Exec::parallel, opt.seesaw_tol);
  emit(to_json(sandwich) + "\n", opt.out_path);
  return sandwich.converged ? 0 : 4;
}

int run_toric_verify(const Options& opt) {
  PureState state = load_state_file(opt.state_path);
  ToricReport report = verify_toric_ground(state);
  emit(to_json(report) + "\n", opt.out_path);
  return 0;
}

int run_toric_spectrum(const Options& opt) {
  emit(toric_spectrum_to_json(toric_spectrum()), opt.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entanglement and Bell-violation analysis for n-qubit states"};
  app.require_subcommand(1);

  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", opt.out_path, "write output to a file");
    cmd->add_option("--seed", opt.seed, "seed for randomized search");
    cmd->add_option("--restarts", opt.restarts, "see-saw restarts")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* analyze = app.add_subcommand("analyze", "full state report");
  analyze->add_option("--state", opt.state_path, "state JSON file")
      ->required();
  analyze->add_flag("--maximize", opt.maximize, "run the see-saw search");
  analyze->add_option("--format", opt.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  analyze->add_option("--flat-tol", opt.flat_tol, "flat-spectrum tolerance")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--seesaw-tol", opt.seesaw_tol, "see-saw stop tolerance")
      ->check(CLI::PositiveNumber);
  add_common(analyze);

  CLI::App* family = app.add_subcommand("family", "seven-qubit family tools");
  family->require_subcommand(1);
  CLI::App* fam_sweep = family->add_subcommand("sweep", "figure data CSV");
  fam_sweep->add_option("--figure", opt.figure, "figure number (1 or 2)")
      ->check(CLI::IsMember({1, 2}));
  fam_sweep->add_option("--out", opt.out_path, "output directory");
  CLI::App* fam_invert =
      family->add_subcommand("invert", "coefficients from concurrences");
  fam_invert->add_option("--c1sq", opt.c1sq, "C1^2")->required();
  fam_invert->add_option("--c2sq", opt.c2sq, "C2^2")->required();
  fam_invert->add_option("--csq", opt.csq, "C^2")->required();
  fam_invert->add_option("--out", opt.out_path, "write output to a file");
  CLI::App* fam_critical =
      family->add_subcommand("critical", "classify the critical point");
  fam_critical->add_option("--eps", opt.eps, "finite-difference step");
  fam_critical->add_option("--out", opt.out_path, "write output to a file");

  CLI::App* bell = app.add_subcommand("bell", "Bell operator tools");
  bell->require_subcommand(1);
  CLI::App* bell_max = bell->add_subcommand("maximize", "see-saw search");
  bell_max->add_option("--state", opt.state_path, "state JSON file")
      ->required();
  bell_max->add_option("--seesaw-tol", opt.seesaw_tol, "see-saw stop tolerance")
      ->check(CLI::PositiveNumber);
  add_common(bell_max);

  CLI::App* toric = app.add_subcommand("toric", "seven-qubit disk toric code");
  toric->require_subcommand(1);
  CLI::App* toric_verify =
      toric->add_subcommand("verify", "ground-state verification");
  toric_verify->add_option("--state", opt.state_path, "state JSON file")
      ->required();
  toric_verify->add_option("--out", opt.out_path, "write output to a file");
  CLI::App* toric_spec = toric->add_subcommand("spectrum", "full spectrum");
  toric_spec->add_option("--out", opt.out_path, "write output to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return run_analyze(opt);
    if (*fam_sweep) return run_family_sweep(opt);
    if (*fam_invert) return run_family_invert(opt);
    if (*fam_critical) return run_family_critical(opt);
    if (*bell_max) return run_bell_maximize(opt);
    if (*toric_verify) return run_toric_verify(opt);
    if (*toric_spec) return run_toric_spectrum(opt);
  } catch (const Error& e) {
    std::cerr << "error (" << error_code_name(e.code()) << "): " << e.what()
              << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
