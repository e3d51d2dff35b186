#include "bellbound/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bellbound {

namespace {

using nlohmann::json;

std::string fmt_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string json_bool(bool b) { return b ? "true" : "false"; }

std::string real_array(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += fmt_e12(values[i]);
  }
  return out + "]";
}

template <std::size_t N>
std::string real_array(const std::array<double, N>& values) {
  return real_array(std::vector<double>(values.begin(), values.end()));
}

std::string int_array(const std::vector<int>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(values[i]);
  }
  return out + "]";
}

std::string vec3_list(const std::vector<Vec3>& vectors) {
  std::string out = "[";
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (i) out += ", ";
    out += real_array(vectors[i]);
  }
  return out + "]";
}

std::string basis_string(std::size_t index, int n) {
  std::string bits(static_cast<std::size_t>(n), '0');
  for (int k = 0; k < n; ++k) {
    if (index & (std::size_t{1} << (n - 1 - k))) bits[k] = '1';
  }
  return bits;
}

}  // namespace

PureState load_state_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError,
                "JSON parse error at byte " + std::to_string(e.byte) + ": " +
                    e.what());
  }
  if (!doc.is_object() || !doc.contains("n") ||
      !doc["n"].is_number_integer()) {
    throw Error(ErrorCode::ParseError,
                "state file needs an integer field \"n\"");
  }
  const int n = doc["n"].get<int>();
  if (!doc.contains("amplitudes") || !doc["amplitudes"].is_array()) {
    throw Error(ErrorCode::ParseError,
                "state file needs an \"amplitudes\" array");
  }
  std::vector<std::pair<std::string, cdouble>> entries;
  for (const auto& item : doc["amplitudes"]) {
    if (!item.is_object() || !item.contains("basis") ||
        !item["basis"].is_string() || !item.contains("re") ||
        !item["re"].is_number()) {
      throw Error(ErrorCode::ParseError,
                  "amplitude entries need \"basis\" and numeric \"re\"");
    }
    double im = 0.0;
    if (item.contains("im")) {
      if (!item["im"].is_number()) {
        throw Error(ErrorCode::ParseError, "\"im\" must be numeric");
      }
      im = item["im"].get<double>();
    }
    entries.emplace_back(item["basis"].get<std::string>(),
                         cdouble{item["re"].get<double>(), im});
  }
  return make_state(n, entries);
}

PureState load_state_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::ParseError, "cannot open state file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_state_json(buffer.str());
}

std::string state_to_json(const PureState& state) {
  std::string out = "{\n  \"n\": " + std::to_string(state.qubits()) +
                    ",\n  \"amplitudes\": [\n";
  bool first = true;
  const auto& amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (amps[i] == cdouble{0.0, 0.0}) continue;
    if (!first) out += ",\n";
    first = false;
    out += "    {\"basis\": \"" + basis_string(i, state.qubits()) +
           "\", \"re\": " + fmt_g17(amps[i].real()) +
           ", \"im\": " + fmt_g17(amps[i].imag()) + "}";
  }
  out += "\n  ]\n}\n";
  return out;
}

std::string to_json(const BoundReport& report) {
  std::string out = "{";
  out += "\"eigenvalues\": " + real_array(report.eigenvalues);
  out += ", \"bound\": " + fmt_e12(report.bound);
  out += ", \"isExact\": " + json_bool(report.isExact);
  out += ", \"classicalViolation\": " + json_bool(report.classicalViolation);
  return out + "}";
}

std::string to_json(const GammaSandwich& sandwich) {
  std::string out = "{";
  out += "\"lower\": " + fmt_e12(sandwich.lower);
  out += ", \"upper\": " + fmt_e12(sandwich.upper);
  out += ", \"settings\": {\"a\": " + vec3_list(sandwich.settings.a) +
         ", \"aPrime\": " + vec3_list(sandwich.settings.aPrime) + "}";
  out += ", \"restarts\": " + std::to_string(sandwich.restarts);
  out += ", \"converged\": " + json_bool(sandwich.converged);
  return out + "}";
}

std::string to_json(const ToricReport& report) {
  std::string out = "{";
  out += "\"stabilizerExpectations\": " +
         real_array(report.stabilizerExpectations);
  out += ", \"energy\": " + fmt_e12(report.energy);
  out += ", \"groundEnergy\": " + fmt_e12(report.groundEnergy);
  out += ", \"groundDegeneracy\": " + std::to_string(report.groundDegeneracy);
  out += ", \"overlapWithGround\": " + fmt_e12(report.overlapWithGround);
  out += ", \"isGroundState\": " + json_bool(report.isGroundState);
  return out + "}";
}

std::string to_json(const SpectrumReport& report) {
  std::string out = "{";
  out += "\"regionA\": " + int_array(report.part.region_a());
  out += ", \"eigenvalues\": " + real_array(report.eigenvalues);
  out += ", \"vonNeumann\": " + fmt_e12(report.vonNeumann);
  out += ", \"renyi2\": " + fmt_e12(report.renyi2);
  out += ", \"rank\": " + std::to_string(report.rank);
  out += ", \"isFlat\": " + json_bool(report.isFlat);
  out += ", \"isMaxFlat\": " + json_bool(report.isMaxFlat);
  return out + "}";
}

std::string to_json(const CriticalReport& report) {
  std::string out = "{";
  out += "\"point\": " + real_array(report.point.alpha);
  out += ", \"eps\": " + fmt_e12(report.eps);
  out += ", \"bound\": " + fmt_e12(report.bound);
  out += ", \"gradientNorm\": " + fmt_e12(report.gradientNorm);
  out += ", \"forwardDiffMax\": " + fmt_e12(report.forwardDiffMax);
  out += ", \"classification\": \"" + report.classification + "\"";
  out += ", \"witnessUp\": " + real_array(report.witnessUp);
  out += ", \"witnessDown\": " + real_array(report.witnessDown);
  out += ", \"activeBranch\": \"" + report.activeBranch + "\"";
  out += ", \"secondDifferences\": [";
  for (std::size_t i = 0; i < report.secondDifferences.size(); ++i) {
    if (i) out += ", ";
    out += "{\"direction\": " + real_array(report.secondDifferences[i].first) +
           ", \"value\": " + fmt_e12(report.secondDifferences[i].second) + "}";
  }
  out += "]";
  return out + "}";
}

std::string to_json(const AnalyzeReport& report) {
  std::string out = "{\n";
  out += "  \"n\": " + std::to_string(report.n) + ",\n";
  out += "  \"spectra\": [\n";
  for (std::size_t i = 0; i < report.spectra.reports.size(); ++i) {
    out += "    " + to_json(report.spectra.reports[i]);
    out += i + 1 < report.spectra.reports.size() ? ",\n" : "\n";
  }
  out += "  ],\n";
  out += "  \"isMaximallyEntangled\": " +
         json_bool(report.spectra.isMaximallyEntangled) + ",\n";
  out += "  \"rankTrivial\": " + json_bool(report.spectra.rankTrivial) + ",\n";
  out += "  \"concurrences\": [";
  for (std::size_t i = 0; i < report.siteConcurrences.size(); ++i) {
    if (i) out += ", ";
    out += "{\"site\": " + std::to_string(i + 1) +
           ", \"value\": " + fmt_e12(report.siteConcurrences[i]) + "}";
  }
  out += "],\n";
  out += "  \"bound\": " + to_json(report.bound);
  if (report.maximize) {
    out += ",\n  \"maximize\": " + to_json(*report.maximize);
  }
  out += "\n}\n";
  return out;
}

std::string analyze_to_csv(const AnalyzeReport& report) {
  std::string out = "section,regionA,eigenvalues,vonNeumann,renyi2,rank,"
                    "isFlat,isMaxFlat\n";
  for (const auto& rep : report.spectra.reports) {
    out += "spectrum,";
    const auto& sites = rep.part.region_a();
    for (std::size_t i = 0; i < sites.size(); ++i) {
      if (i) out += "|";
      out += std::to_string(sites[i]);
    }
    out += ",";
    for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i) {
      if (i) out += "|";
      out += fmt_g12(rep.eigenvalues[i]);
    }
    out += "," + fmt_g12(rep.vonNeumann) + "," + fmt_g12(rep.renyi2) + "," +
           std::to_string(rep.rank) + "," + (rep.isFlat ? "1" : "0") + "," +
           (rep.isMaxFlat ? "1" : "0") + "\n";
  }
  for (std::size_t i = 0; i < report.siteConcurrences.size(); ++i) {
    out += "concurrence," + std::to_string(i + 1) + "," +
           fmt_g12(report.siteConcurrences[i]) + ",,,,,\n";
  }
  out += "bound,," + fmt_g12(report.bound.bound) + ",,,,,\n";
  if (report.maximize) {
    out += "gammaLower,," + fmt_g12(report.maximize->lower) + ",,,,,\n";
    out += "gammaUpper,," + fmt_g12(report.maximize->upper) + ",,,,,\n";
  }
  return out;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "c1sq,c2sq,csq,rxx,rzz,bound,gamut\n";
  for (const auto& row : rows) {
    out += fmt_g12(row.c1sq) + "," + fmt_g12(row.c2sq) + "," +
           fmt_g12(row.csq) + ",";
    if (row.inGamut) {
      out += fmt_g12(row.rxx) + "," + fmt_g12(row.rzz) + "," +
             fmt_g12(row.bound) + ",1\n";
    } else {
      out += ",,,0\n";
    }
  }
  return out;
}

std::string toric_spectrum_to_json(const std::vector<double>& eigenvalues) {
  int degeneracy = 0;
  for (double e : eigenvalues) {
    if (e - eigenvalues.front() > 1e-9) break;
    ++degeneracy;
  }
  std::string out = "{";
  out += "\"groundEnergy\": " + fmt_e12(eigenvalues.front());
  out += ", \"groundDegeneracy\": " + std::to_string(degeneracy);
  out += ", \"eigenvalues\": " + real_array(eigenvalues);
  return out + "}\n";
}

}  // namespace bellbound
