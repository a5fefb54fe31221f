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

// File formats: matrix documents, subspace declarations, and the JSON forms of
// transition tables and NOON reports.
//
// Matrix document:
//
//   {
//     "dim": 4,
//     "label": "M2",
//     "entries": [ {"mag": 0.44, "phase_deg": -27}, ... ],   // row-major
//     "meta": {"wavelength_nm": 1523.3, "subspace": "II"}     // optional
//   }
//
// Decimal literals are kept as written so that a read/write cycle reproduces
// them byte for byte.

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "noonforge/errors.hpp"
#include "noonforge/evolve.hpp"
#include "noonforge/fock.hpp"
#include "noonforge/modes.hpp"
#include "noonforge/noon.hpp"
#include "noonforge/unitary.hpp"

namespace noonforge {

/// A decimal number together with the literal it was read from.
struct Decimal {
  std::string text;
  double value = 0.0;

  static Decimal parse(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw ParseError("not a decimal number: '" + std::string(s) + "'");
    }
    return {std::string(s), v};
  }

  /// Shortest literal that reads back to exactly `v`.
  static Decimal from_double(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {std::string(buf, res.ptr), v};
  }
};

struct MatrixEntry {
  Decimal mag;
  Decimal phase_deg;
};

struct MatrixDocument {
  int dim = 0;
  std::string label;
  std::vector<MatrixEntry> entries;  // row-major, dim * dim
  std::optional<Decimal> wavelength_nm;
  std::optional<std::string> subspace;

  PolarGrid polar() const {
    PolarGrid grid(static_cast<std::size_t>(dim));
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) {
        const auto& e = entries[static_cast<std::size_t>(r * dim + c)];
        grid[static_cast<std::size_t>(r)].push_back({e.mag.value, e.phase_deg.value});
      }
    }
    return grid;
  }

  ComplexMatrix matrix() const { return from_polar(polar()); }

  static MatrixDocument from_matrix(const ComplexMatrix& m, std::string label) {
    MatrixDocument doc;
    doc.dim = m.dim();
    doc.label = std::move(label);
    for (const auto& row : to_polar(m)) {
      for (const auto& e : row) {
        doc.entries.push_back({Decimal::from_double(e.magnitude), Decimal::from_double(e.phase_deg)});
      }
    }
    return doc;
  }
};

namespace detail {

/// DOM builder that stores every JSON number as its source literal, held in a
/// binary value (JSON text cannot produce one), so decimal text survives
/// parsing and stays distinct from strings.
class LiteralPreservingSax {
 public:
  using json = nlohmann::json;
  using number_integer_t = json::number_integer_t;
  using number_unsigned_t = json::number_unsigned_t;
  using number_float_t = json::number_float_t;
  using string_t = json::string_t;
  using binary_t = json::binary_t;

  explicit LiteralPreservingSax(json& root) : dom_(root, true) {}

  bool null() { return dom_.null(); }
  bool boolean(bool v) { return dom_.boolean(v); }
  bool number_integer(number_integer_t v) { return literal(std::to_string(v)); }
  bool number_unsigned(number_unsigned_t v) { return literal(std::to_string(v)); }
  bool number_float(number_float_t, const string_t& text) { return literal(text); }
  bool string(string_t& v) { return dom_.string(v); }
  bool binary(binary_t& v) { return dom_.binary(v); }
  bool start_object(std::size_t n) { return dom_.start_object(n); }
  bool key(string_t& k) { return dom_.key(k); }
  bool end_object() { return dom_.end_object(); }
  bool start_array(std::size_t n) { return dom_.start_array(n); }
  bool end_array() { return dom_.end_array(); }
  bool parse_error(std::size_t pos, const std::string& token, const nlohmann::detail::exception& ex) {
    return dom_.parse_error(pos, token, ex);
  }

 private:
  bool literal(const std::string& text) {
    binary_t b(std::vector<std::uint8_t>(text.begin(), text.end()));
    return dom_.binary(b);
  }

  nlohmann::detail::json_sax_dom_parser<json> dom_;
};

inline nlohmann::json parse_literal_json(std::string_view text, const std::string& what) {
  nlohmann::json root;
  LiteralPreservingSax sax(root);
  try {
    nlohmann::json::sax_parse(text, &sax);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(what + ": " + e.what());
  }
  return root;
}

inline const nlohmann::json& require(const nlohmann::json& obj, const char* key,
                                     const std::string& what) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(what + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

inline Decimal as_decimal(const nlohmann::json& v, const std::string& what) {
  if (!v.is_binary()) throw ParseError(what + ": expected a number");
  const auto& bytes = v.get_binary();
  try {
    return Decimal::parse(std::string(bytes.begin(), bytes.end()));
  } catch (const ParseError& e) {
    throw ParseError(what + ": " + e.what());
  }
}

inline int as_int(const nlohmann::json& v, const std::string& what) {
  const Decimal d = as_decimal(v, what);
  if (d.value != std::floor(d.value) || std::abs(d.value) > 1e9) {
    throw ParseError(what + ": expected an integer");
  }
  return static_cast<int>(d.value);
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw ParseError("failed writing '" + path.string() + "'");
}

inline std::string json_quote(const std::string& s) { return nlohmann::json(s).dump(); }

}  // namespace detail

inline MatrixDocument parse_matrix_document(std::string_view text) {
  const std::string what = "matrix document";
  const auto root = detail::parse_literal_json(text, what);
  if (!root.is_object()) throw ParseError(what + ": top level must be an object");
  MatrixDocument doc;
  doc.dim = detail::as_int(detail::require(root, "dim", what), what + " field 'dim'");
  if (doc.dim < 2) throw ParseError(what + ": dim must be at least 2");
  if (root.contains("label")) {
    if (!root["label"].is_string()) throw ParseError(what + ": label must be a string");
    doc.label = root["label"].get<std::string>();
  }
  const auto& entries = detail::require(root, "entries", what);
  if (!entries.is_array()) throw ParseError(what + ": entries must be an array");
  if (entries.size() != static_cast<std::size_t>(doc.dim) * static_cast<std::size_t>(doc.dim)) {
    throw ParseError(what + ": expected " + std::to_string(doc.dim * doc.dim) + " entries, got " +
                     std::to_string(entries.size()));
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string where = what + " entry " + std::to_string(i);
    MatrixEntry e{detail::as_decimal(detail::require(entries[i], "mag", where), where),
                  detail::as_decimal(detail::require(entries[i], "phase_deg", where), where)};
    if (e.mag.value < 0.0) throw ParseError(where + ": magnitude must be non-negative");
    doc.entries.push_back(std::move(e));
  }
  if (root.contains("meta")) {
    const auto& meta = root["meta"];
    if (!meta.is_object()) throw ParseError(what + ": meta must be an object");
    if (meta.contains("wavelength_nm")) {
      doc.wavelength_nm = detail::as_decimal(meta["wavelength_nm"], what + " meta.wavelength_nm");
    }
    if (meta.contains("subspace")) {
      if (!meta["subspace"].is_string()) throw ParseError(what + ": meta.subspace must be a string");
      doc.subspace = meta["subspace"].get<std::string>();
    }
  }
  return doc;
}

/// Serializes a matrix document, one row of entries per line.
inline std::string write_matrix_document(const MatrixDocument& doc) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"dim\": " << doc.dim << ",\n";
  out << "  \"label\": " << detail::json_quote(doc.label) << ",\n";
  out << "  \"entries\": [\n";
  for (int r = 0; r < doc.dim; ++r) {
    out << "    ";
    for (int c = 0; c < doc.dim; ++c) {
      const auto& e = doc.entries[static_cast<std::size_t>(r * doc.dim + c)];
      out << "{\"mag\": " << e.mag.text << ", \"phase_deg\": " << e.phase_deg.text << "}";
      if (r * doc.dim + c + 1 < doc.dim * doc.dim) out << (c + 1 < doc.dim ? ", " : ",");
    }
    out << "\n";
  }
  out << "  ]";
  if (doc.wavelength_nm || doc.subspace) {
    out << ",\n  \"meta\": {";
    bool first = true;
    if (doc.wavelength_nm) {
      out << "\"wavelength_nm\": " << doc.wavelength_nm->text;
      first = false;
    }
    if (doc.subspace) out << (first ? "" : ", ") << "\"subspace\": " << detail::json_quote(*doc.subspace);
    out << "}";
  }
  out << "\n}\n";
  return out.str();
}

inline MatrixDocument read_matrix_file(const std::filesystem::path& path) {
  try {
    return parse_matrix_document(detail::read_text(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

inline void write_matrix_file(const std::filesystem::path& path, const MatrixDocument& doc) {
  detail::write_text(path, write_matrix_document(doc));
}

/// Subspace declaration:
///
///   {"label": "II", "wavelength_nm": 1523.3, "dimension": 8,
///    "inputs": ["L:d:-2", ...], "outputs": ["R:d:2", ...], "matrix": "m2.json"}
///
/// `matrix` is resolved relative to the declaration file and may be null or
/// absent for a declarative subspace. `dimension` defaults to 4 when inputs
/// and outputs name the same modes, 8 otherwise.
inline Subspace read_subspace_file(const std::filesystem::path& path) {
  const std::string what = path.string();
  const auto root = detail::parse_literal_json(detail::read_text(path), what);
  if (!root.is_object()) throw ParseError(what + ": top level must be an object");
  auto modes = [&](const char* key) {
    const auto& list = detail::require(root, key, what);
    if (!list.is_array()) throw ParseError(what + ": '" + key + "' must be an array");
    std::vector<Mode> out;
    for (const auto& m : list) {
      if (!m.is_string()) throw ParseError(what + ": mode entries must be strings");
      out.push_back(parse_mode(m.get<std::string>()));
    }
    return out;
  };
  std::string label;
  if (root.contains("label") && root["label"].is_string()) label = root["label"].get<std::string>();
  const double wavelength =
      detail::as_decimal(detail::require(root, "wavelength_nm", what), what + " wavelength_nm").value;
  auto inputs = modes("inputs");
  auto outputs = modes("outputs");
  int dimension = 0;
  if (root.contains("dimension")) {
    dimension = detail::as_int(root["dimension"], what + " dimension");
  } else {
    auto a = inputs;
    auto b = outputs;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    dimension = a == b ? 4 : 8;
  }
  std::optional<ComplexMatrix> matrix;
  if (root.contains("matrix") && !root["matrix"].is_null()) {
    if (!root["matrix"].is_string()) throw ParseError(what + ": matrix must be a path");
    const auto mpath = path.parent_path() / root["matrix"].get<std::string>();
    matrix = read_matrix_file(mpath).matrix();
  }
  return build_subspace(std::move(label), wavelength, dimension, std::move(inputs),
                        std::move(outputs), std::move(matrix));
}

/// Rounds to `places` decimals, folding negative zero to zero.
inline double round_to(double x, int places) {
  const double scale = std::pow(10.0, places);
  double r = std::round(x * scale) / scale;
  if (r == 0.0) r = 0.0;
  return r;
}

/// Spec string that state_from_spec reads back: plain occupations for a single
/// basis state, otherwise weighted kets.
inline std::string to_spec(const QuantumState& state) {
  const auto& amp = state.amplitudes();
  const FockBasis& basis = state.basis();
  std::vector<std::size_t> nonzero;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (std::abs(amp(static_cast<Eigen::Index>(i))) > kCanonicalPhaseFloor) nonzero.push_back(i);
  }
  if (nonzero.size() == 1) return occupation_string(basis[nonzero.front()]);
  std::ostringstream out;
  out << std::fixed << std::setprecision(6);
  for (std::size_t k = 0; k < nonzero.size(); ++k) {
    const Complex a = amp(static_cast<Eigen::Index>(nonzero[k]));
    if (k) out << " + ";
    out << round_to(std::abs(a), 6) << '@' << round_to(rad_to_deg(std::arg(a)), 6) << '*'
        << to_string(basis[nonzero[k]]);
  }
  return out.str();
}

inline nlohmann::ordered_json to_json(const TransitionTable& table) {
  nlohmann::ordered_json j;
  j["basis"] = {{"modes", table.basis().modes()}, {"photons", table.basis().photons()}};
  j["input"] = to_spec(table.input());
  auto& amps = j["amplitudes"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < table.basis().size(); ++i) {
    const Complex a = table.amplitudes()(static_cast<Eigen::Index>(i));
    amps.push_back({{"state", to_string(table.basis()[i])},
                    {"mag", round_to(std::abs(a), 6)},
                    {"phase_deg", round_to(rad_to_deg(std::arg(a)), 6)}});
  }
  return j;
}

inline nlohmann::ordered_json to_json(const NoonReport& r) {
  nlohmann::ordered_json j;
  j["photons"] = r.photons;
  j["modes"] = r.modes;
  j["success_probability"] = round_to(r.success_probability, 4);
  j["fidelity"] = round_to(r.fidelity, 4);
  j["discarded_probability"] = round_to(r.discarded_probability, 4);
  auto& comps = j["components"] = nlohmann::ordered_json::array();
  for (int k = 0; k < r.modes; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    const Complex c = r.raw_amplitudes[idx];
    comps.push_back({{"state", to_string(FockState::concentrated(r.modes, k, r.photons))},
                     {"raw_mag", round_to(std::abs(c), 4)},
                     {"raw_phase_deg", round_to(rad_to_deg(std::arg(c)), 0)},
                     {"optimal_phase_deg", round_to(r.optimal_phases_deg[idx], 0)},
                     {"normalized_mag", round_to(r.normalized_amplitudes[idx], 4)}});
  }
  return j;
}

inline nlohmann::ordered_json to_json(const PostSelectionResult& r) {
  nlohmann::ordered_json j;
  j["probability"] = round_to(r.probability, 4);
  j["discarded_probability"] = round_to(r.discarded_probability, 4);
  auto& comps = j["components"] = nlohmann::ordered_json::array();
  for (const auto& s : r.kept) {
    const Complex a = r.state.amplitude(s);
    comps.push_back({{"state", to_string(s)},
                     {"normalized_mag", round_to(std::abs(a), 4)},
                     {"phase_deg", round_to(rad_to_deg(std::arg(a)), 0)}});
  }
  return j;
}

}  // namespace noonforge
