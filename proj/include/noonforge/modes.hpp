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

// Momentum-polarization modes and the wavelength-indexed subspaces that each
// realize one four-port beam splitter.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <compare>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "noonforge/errors.hpp"
#include "noonforge/unitary.hpp"

namespace noonforge {

enum class Polarization { L, R };
enum class Side { Air, Glass };

struct Mode {
  int diffraction_order = 0;
  Polarization polarization = Polarization::L;
  Side side = Side::Air;

  friend auto operator<=>(const Mode&, const Mode&) = default;
};

/// "L:d:-2" form: polarization, side (d = glass, a = air), diffraction order.
inline std::string to_string(const Mode& m) {
  std::string s;
  s += m.polarization == Polarization::L ? 'L' : 'R';
  s += ':';
  s += m.side == Side::Glass ? 'd' : 'a';
  s += ':';
  s += std::to_string(m.diffraction_order);
  return s;
}

inline Mode parse_mode(std::string_view text) {
  auto fail = [&](const char* why) -> Mode {
    throw ParseError("bad mode string '" + std::string(text) + "': " + why +
                     " (expected e.g. \"L:d:-2\")");
  };
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) return fail("needs three ':'-separated fields");
  const auto pol = text.substr(0, c1);
  const auto side = text.substr(c1 + 1, c2 - c1 - 1);
  auto order = text.substr(c2 + 1);

  Mode m;
  if (pol == "L") {
    m.polarization = Polarization::L;
  } else if (pol == "R") {
    m.polarization = Polarization::R;
  } else {
    return fail("polarization must be L or R");
  }
  if (side == "d" || side == "glass") {
    m.side = Side::Glass;
  } else if (side == "a" || side == "air") {
    m.side = Side::Air;
  } else {
    return fail("side must be d (glass) or a (air)");
  }
  if (!order.empty() && order.front() == '+') order.remove_prefix(1);
  const auto* end = order.data() + order.size();
  const auto res = std::from_chars(order.data(), end, m.diffraction_order);
  if (order.empty() || res.ec != std::errc{} || res.ptr != end) {
    return fail("diffraction order must be an integer");
  }
  return m;
}

enum class Direction { Input, Output };

struct Subspace {
  std::string label;
  double wavelength_nm = 0.0;
  int dimension = 4;
  std::vector<Mode> input_modes;
  std::vector<Mode> output_modes;
  /// Empty for declarative subspaces whose scattering matrix is unknown.
  std::optional<ComplexMatrix> matrix;

  bool executable() const { return matrix.has_value(); }
};

inline Subspace build_subspace(std::string label, double wavelength_nm, int dimension,
                               std::vector<Mode> input_modes, std::vector<Mode> output_modes,
                               std::optional<ComplexMatrix> matrix) {
  if (!(wavelength_nm > 0.0) || !std::isfinite(wavelength_nm)) {
    throw SubspaceError("subspace '" + label + "': wavelength must be positive");
  }
  if (dimension != 4 && dimension != 8) {
    throw SubspaceError("subspace '" + label + "': dimension must be 4 or 8");
  }
  if (input_modes.size() != 4 || output_modes.size() != 4) {
    throw SubspaceError("subspace '" + label + "': needs exactly 4 input and 4 output modes");
  }
  if (matrix && matrix->dim() != 4) {
    throw ShapeError("subspace '" + label + "': matrix must be 4x4");
  }
  auto sorted_unique = [&](std::vector<Mode> v, const char* which) {
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) {
      throw SubspaceError("subspace '" + label + "': duplicate " + which + " mode");
    }
    return v;
  };
  const auto in = sorted_unique(input_modes, "input");
  const auto out = sorted_unique(output_modes, "output");
  std::vector<Mode> shared;
  std::set_intersection(in.begin(), in.end(), out.begin(), out.end(), std::back_inserter(shared));
  if (dimension == 4 && in != out) {
    throw SubspaceError("subspace '" + label +
                        "': a 4-dimensional subspace needs identical input and output modes");
  }
  if (dimension == 8 && !shared.empty()) {
    throw SubspaceError("subspace '" + label + "': an 8-dimensional subspace needs disjoint "
                        "input and output modes, but " + to_string(shared.front()) +
                        " appears in both");
  }
  return Subspace{std::move(label), wavelength_nm,        dimension,
                  std::move(input_modes), std::move(output_modes), std::move(matrix)};
}

inline constexpr double kSameWavelengthNm = 0.01;

struct IndependenceConflict {
  std::size_t first = 0;  // first < second
  std::size_t second = 0;
  std::vector<Mode> shared_modes;
};

/// Pairs of subspaces at the same wavelength that share a mode. Subspaces at
/// different wavelengths never couple in a linear medium.
inline std::vector<IndependenceConflict> check_independence(const std::vector<Subspace>& registry) {
  auto modes_of = [](const Subspace& s) {
    std::vector<Mode> all = s.input_modes;
    all.insert(all.end(), s.output_modes.begin(), s.output_modes.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
  };
  std::vector<IndependenceConflict> conflicts;
  for (std::size_t i = 0; i < registry.size(); ++i) {
    for (std::size_t j = i + 1; j < registry.size(); ++j) {
      if (std::abs(registry[i].wavelength_nm - registry[j].wavelength_nm) > kSameWavelengthNm) {
        continue;
      }
      const auto a = modes_of(registry[i]);
      const auto b = modes_of(registry[j]);
      std::vector<Mode> shared;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
      if (!shared.empty()) conflicts.push_back({i, j, std::move(shared)});
    }
  }
  return conflicts;
}

inline int port_of(const Subspace& s, const Mode& mode, Direction direction) {
  const auto& list = direction == Direction::Input ? s.input_modes : s.output_modes;
  const auto it = std::find(list.begin(), list.end(), mode);
  if (it == list.end()) {
    throw ModeNotFoundError("mode " + to_string(mode) + " is not an " +
                            (direction == Direction::Input ? "input" : "output") +
                            " mode of subspace '" + s.label + "'");
  }
  return static_cast<int>(it - list.begin());
}

}  // namespace noonforge
