// Copyright 2026 The noonforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// `noonforge` command-line front end. Exit codes: 0 success, 1 claim failure,
// 2 input error, 3 numeric failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "noonforge/errors.hpp"
#include "noonforge/evolve.hpp"
#include "noonforge/fock.hpp"
#include "noonforge/io.hpp"
#include "noonforge/modes.hpp"
#include "noonforge/noon.hpp"
#include "noonforge/reproduce.hpp"
#include "noonforge/unitary.hpp"

#ifndef NOONFORGE_DATA_DIR
#define NOONFORGE_DATA_DIR "data"
#endif

namespace noonforge::cli {

enum ExitCode : int { kOk = 0, kClaimFailed = 1, kInputError = 2, kNumericError = 3 };

inline constexpr double kDefaultUnitarizeTolerance = 0.2;

inline std::filesystem::path bundled_matrix() {
  return std::filesystem::path(NOONFORGE_DATA_DIR) / "m2.json";
}

struct Options {
  bool json = false;
  std::string matrix;
  std::string subspace;
  std::string input;
  std::string select;
  std::string out;
  double tol = kDefaultUnitarizeTolerance;
  int photons = 0;
  int modes = 0;
};

namespace detail {

struct LoadedUnitary {
  ComplexMatrix u;
  double defect_before = 0.0;
  bool unitarized = false;
  std::optional<Subspace> subspace;
};

/// Loads the matrix (directly or through a subspace declaration) and projects
/// it onto the unitaries when its defect is within `tol`.
inline LoadedUnitary load_unitary(const Options& o) {
  std::optional<Subspace> sub;
  std::optional<ComplexMatrix> m;
  if (!o.subspace.empty()) {
    sub = read_subspace_file(o.subspace);
    if (!sub->executable()) {
      throw InputError("subspace '" + sub->label + "' declares no scattering matrix");
    }
    m = *sub->matrix;
  }
  if (!o.matrix.empty()) m = read_matrix_file(o.matrix).matrix();
  if (!m) throw InputError("no matrix given (use --matrix or --subspace)");
  const double defect = unitarity_defect(*m);
  if (m->is_unitary()) return {*m, defect, false, std::move(sub)};
  if (defect > o.tol) {
    throw NotUnitaryError("matrix unitarity defect " + std::to_string(defect) +
                          " exceeds --tol " + std::to_string(o.tol));
  }
  return {unitarize(*m), defect, true, std::move(sub)};
}

inline std::string phase_str(Complex a) {
  std::ostringstream s;
  s << "e^{i*" << std::setw(4) << static_cast<long>(round_to(rad_to_deg(std::arg(a)), 0)) << "deg}";
  return s.str();
}

inline std::string mag_str(double x) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << x;
  return s.str();
}

inline std::string mode_labels(const FockState& s, const std::optional<Subspace>& sub) {
  if (!sub) return "";
  std::string out;
  for (int m = 0; m < s.modes(); ++m) {
    if (s[m] == 0) continue;
    out += (out.empty() ? "  [" : " ") + std::to_string(s[m]) + "x" +
           to_string(sub->output_modes[static_cast<std::size_t>(m)]);
  }
  return out.empty() ? out : out + "]";
}

inline int cmd_unitarize(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.matrix.empty()) throw InputError("unitarize needs --matrix");
  MatrixDocument doc = read_matrix_file(o.matrix);
  const ComplexMatrix m = doc.matrix();
  const ComplexMatrix u = unitarize(m);
  const double before = unitarity_defect(m);
  const double after = unitarity_defect(u);
  const double deviation = (u.data() - m.data()).cwiseAbs().maxCoeff();

  MatrixDocument udoc = MatrixDocument::from_matrix(u, doc.label.empty() ? "unitarized" : doc.label + "-unitarized");
  udoc.wavelength_nm = doc.wavelength_nm;
  udoc.subspace = doc.subspace;
  std::ostream& report = o.out.empty() ? err : out;
  if (o.out.empty()) {
    out << write_matrix_document(udoc);
  } else {
    write_matrix_file(o.out, udoc);
  }
  if (o.json) {
    nlohmann::ordered_json j;
    j["defect_before"] = before;
    j["defect_after"] = after;
    j["max_entry_deviation"] = deviation;
    if (!o.out.empty()) j["out"] = o.out;
    report << j.dump(2) << "\n";
  } else {
    report << "unitarity defect before: " << std::scientific << std::setprecision(3) << before << "\n"
           << "unitarity defect after:  " << after << "\n"
           << "max entry deviation:     " << deviation << "\n" << std::defaultfloat;
    if (!o.out.empty()) report << "wrote " << o.out << "\n";
  }
  return kOk;
}

inline int cmd_evolve(const Options& o, std::ostream& out, std::ostream&) {
  const auto loaded = load_unitary(o);
  if (o.input.empty()) throw InputError("evolve needs --input");
  const auto state = state_from_spec(o.input);
  const auto table = evolve_state(loaded.u, state);
  if (o.json) {
    auto j = to_json(table);
    j["unitarized"] = loaded.unitarized;
    out << j.dump(2) << "\n";
    return kOk;
  }
  std::vector<std::size_t> order(table.basis().size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(table.amplitudes()(static_cast<Eigen::Index>(a))) >
           std::abs(table.amplitudes()(static_cast<Eigen::Index>(b)));
  });
  out << "input " << to_spec(state) << " (" << table.basis().modes() << " modes, "
      << table.basis().photons() << " photons)";
  if (loaded.unitarized) out << ", matrix unitarized (defect was " << loaded.defect_before << ")";
  out << "\n";
  for (std::size_t i : order) {
    const Complex a = table.amplitudes()(static_cast<Eigen::Index>(i));
    out << "  " << mag_str(std::abs(a)) << " " << phase_str(a) << "  " << to_string(table.basis()[i])
        << mode_labels(table.basis()[i], loaded.subspace) << "\n";
  }
  return kOk;
}

inline PostSelection parse_selection(const std::string& spec, int modes) {
  PostSelection sel;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    const auto st = state_from_spec(item);
    Eigen::Index idx = 0;
    st.amplitudes().cwiseAbs().maxCoeff(&idx);
    const FockState& s = st.basis()[static_cast<std::size_t>(idx)];
    if (s.modes() != modes) throw ShapeError("selected state " + to_string(s) + " has wrong mode count");
    sel.kept.push_back(s);
  }
  if (sel.kept.empty()) throw SpecError("--select lists no states");
  return sel;
}

inline int cmd_noon(const Options& o, std::ostream& out, std::ostream&) {
  const auto loaded = load_unitary(o);
  if (o.input.empty()) throw InputError("noon needs --input");
  const auto state = state_from_spec(o.input);
  const auto table = evolve_state(loaded.u, state);
  if (!o.select.empty()) {
    const auto r = post_select(table, parse_selection(o.select, table.basis().modes()));
    if (o.json) {
      out << to_json(r).dump(2) << "\n";
      return kOk;
    }
    out << "post-selection from input " << to_spec(state) << "\n"
        << "  probability: " << mag_str(r.probability) << "\n"
        << "  discarded:   " << mag_str(r.discarded_probability) << "\n";
    for (const auto& s : r.kept) {
      const Complex a = r.state.amplitude(s);
      out << "  " << mag_str(std::abs(a)) << " " << phase_str(a) << "  " << to_string(s)
          << mode_labels(s, loaded.subspace) << "\n";
    }
    return kOk;
  }
  const auto r = extract_noon(table, table.basis().photons());
  if (o.json) {
    out << to_json(r).dump(2) << "\n";
    return kOk;
  }
  out << r.photons << "-photon NOON from input " << to_spec(state) << "\n"
      << "  success probability: " << mag_str(r.success_probability) << "\n"
      << "  fidelity:            " << mag_str(r.fidelity) << "\n"
      << "  discarded:           " << mag_str(r.discarded_probability) << "\n"
      << "  component      raw amplitude          shifter   normalized\n";
  for (int k = 0; k < r.modes; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    const FockState s = FockState::concentrated(r.modes, k, r.photons);
    out << "  " << std::left << std::setw(12) << to_string(s) << std::right << " "
        << mag_str(std::abs(r.raw_amplitudes[idx])) << " " << phase_str(r.raw_amplitudes[idx])
        << "  " << std::setw(5) << static_cast<long>(round_to(r.optimal_phases_deg[idx], 0))
        << "deg   " << mag_str(r.normalized_amplitudes[idx]) << mode_labels(s, loaded.subspace)
        << "\n";
  }
  return kOk;
}

inline int cmd_sweep(const Options& o, std::ostream& out, std::ostream&) {
  const auto loaded = load_unitary(o);
  if (o.photons < 1) throw InputError("sweep needs --photons >= 1");
  const int modes = o.modes > 0 ? o.modes : loaded.u.dim();
  const auto rows = sweep_inputs(loaded.u, o.photons, modes);
  if (o.json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& row = rows[i];
      j.push_back({{"rank", i + 1},
                   {"input", to_string(row.input)},
                   {"success_probability", round_to(row.success_probability, 4)},
                   {"fidelity", row.report ? round_to(row.report->fidelity, 4) : 0.0}});
    }
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << "rank  input             success  fidelity\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    out << std::setw(4) << i + 1 << "  " << std::left << std::setw(16) << to_string(row.input)
        << std::right << "  " << mag_str(row.success_probability) << "   "
        << (row.report ? mag_str(row.report->fidelity) : std::string("   -  ")) << "\n";
  }
  return kOk;
}

inline int cmd_reproduce(const Options& o, std::ostream& out, std::ostream&) {
  const std::string path = o.matrix.empty() ? bundled_matrix().string() : o.matrix;
  const ComplexMatrix m = read_matrix_file(path).matrix();
  const double defect = unitarity_defect(m);
  if (defect > o.tol) {
    throw NotUnitaryError("matrix unitarity defect " + std::to_string(defect) +
                          " exceeds --tol " + std::to_string(o.tol));
  }
  const auto claims = reproduce_claims(m);
  bool all = true;
  if (o.json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& c : claims) {
      j.push_back({{"claim", c.name}, {"pass", c.pass}, {"computed", c.computed}, {"quoted", c.quoted}});
      all = all && c.pass;
    }
    out << j.dump(2) << "\n";
  } else {
    out << "reproducing published results from " << path << "\n";
    for (const auto& c : claims) {
      out << (c.pass ? "PASS " : "FAIL ") << c.name << "\n"
          << "     computed: " << c.computed << "\n"
          << "     quoted:   " << c.quoted << "\n";
      all = all && c.pass;
    }
  }
  return all ? kOk : kClaimFailed;
}

}  // namespace detail

/// Runs the CLI on argv and returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiport beam-splitter and NOON-state simulator", "noonforge"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json, "Machine-readable output");
    sub->add_option("--matrix", o.matrix, "Matrix file");
  };
  auto add_loading = [&](CLI::App* sub) {
    add_common(sub);
    sub->add_option("--subspace", o.subspace, "Subspace declaration (supplies matrix and mode labels)");
    sub->add_option("--tol", o.tol, "Largest unitarity defect that is unitarized automatically")
        ->check(CLI::NonNegativeNumber);
  };

  auto* unit = app.add_subcommand("unitarize", "Project a matrix onto the nearest unitary");
  add_common(unit);
  unit->add_option("--out", o.out, "Where to write the unitarized matrix (default stdout)");

  auto* evo = app.add_subcommand("evolve", "Evolve a Fock state or superposition");
  add_loading(evo);
  evo->add_option("--input", o.input, "Input state, e.g. 0,0,1,1");

  auto* noon = app.add_subcommand("noon", "NOON-state post-selection report");
  add_loading(noon);
  noon->add_option("--input", o.input, "Input state, e.g. 1,1,1,1");
  noon->add_option("--select", o.select, "Arbitrary post-selection, e.g. \"1,1,0,0;0,0,1,1\"");

  auto* sweep = app.add_subcommand("sweep", "Rank every input distribution by NOON success");
  add_loading(sweep);
  sweep->add_option("--photons", o.photons, "Total photon number")->required();
  sweep->add_option("--modes", o.modes, "Number of input ports used (default: all)");

  auto* repro = app.add_subcommand("reproduce", "Check the published results");
  add_common(repro);
  repro->add_option("--tol", o.tol, "Largest unitarity defect that is unitarized automatically")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (unit->parsed()) return detail::cmd_unitarize(o, out, err);
    if (evo->parsed()) return detail::cmd_evolve(o, out, err);
    if (noon->parsed()) return detail::cmd_noon(o, out, err);
    if (sweep->parsed()) return detail::cmd_sweep(o, out, err);
    if (repro->parsed()) return detail::cmd_reproduce(o, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumericError;
  }
  return kInputError;
}

}  // namespace noonforge::cli
