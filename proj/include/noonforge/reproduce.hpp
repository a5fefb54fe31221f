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

// Published interference results for the 1523.3 nm four-port splitter, and the
// checks that compare them against a fresh computation.

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "noonforge/evolve.hpp"
#include "noonforge/fock.hpp"
#include "noonforge/noon.hpp"
#include "noonforge/unitary.hpp"

namespace noonforge {

struct QuotedAmplitude {
  std::array<int, 4> occupations;
  double magnitude;
  double phase_deg;
};

namespace published {

/// Output of |0,0,1,1> through the splitter.
inline const std::vector<QuotedAmplitude>& two_photon_output() {
  static const std::vector<QuotedAmplitude> v = {
      {{2, 0, 0, 0}, 0.339, 48},   {{0, 2, 0, 0}, 0.333, 15},  {{0, 0, 2, 0}, 0.342, 149},
      {{0, 0, 0, 2}, 0.350, -136}, {{1, 1, 0, 0}, 0.470, -148}, {{0, 0, 1, 1}, 0.499, -167},
      {{1, 0, 1, 0}, 0.143, -124}, {{1, 0, 0, 1}, 0.085, 77},   {{0, 1, 1, 0}, 0.089, 14},
      {{0, 1, 0, 1}, 0.143, -97}};
  return v;
}

inline constexpr std::array<double, 4> kTwoPhotonNoon = {0.497, 0.488, 0.501, 0.513};
inline constexpr std::array<double, 2> kPathEntangled = {0.686, 0.728};
inline constexpr std::array<double, 4> kThreePhotonNoon = {0.568, 0.439, 0.492, 0.493};
inline constexpr std::array<double, 4> kFourPhotonNoon = {0.508, 0.510, 0.481, 0.501};

}  // namespace published

struct Claim {
  std::string name;
  bool pass = false;
  std::string computed;
  std::string quoted;
};

namespace detail {

inline std::string fmt(double x, int places) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(places);
  s << x;
  return s.str();
}

template <typename Values>
std::string fmt_list(const Values& values, int places) {
  std::string out = "{";
  bool first = true;
  for (double v : values) {
    out += (first ? "" : ", ") + fmt(v, places);
    first = false;
  }
  return out + "}";
}

template <typename A, typename B>
double max_gap(const A& a, const B& b) {
  double g = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) g = std::max(g, std::abs(a[i] - b[i]));
  return g;
}

inline FockState fock4(const std::array<int, 4>& occ) {
  return FockState(std::vector<int>(occ.begin(), occ.end()));
}

}  // namespace detail

/// Largest disagreement in any pairwise phase difference, degrees.
inline double relative_phase_spread(const std::vector<double>& computed_deg,
                                    const std::vector<double>& quoted_deg) {
  std::vector<double> delta;
  for (std::size_t k = 0; k < computed_deg.size(); ++k) {
    delta.push_back(wrap_degrees(computed_deg[k] - quoted_deg[k]));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    for (std::size_t j = i + 1; j < delta.size(); ++j) {
      worst = std::max(worst, std::abs(wrap_degrees(delta[i] - delta[j])));
    }
  }
  return worst;
}

/// Runs every published claim against the unitary representative of `raw`.
/// A claim whose computation fails numerically (for example, no NOON
/// component survives) is reported as failed.
inline std::vector<Claim> reproduce_claims(const ComplexMatrix& raw) {
  using detail::fmt;
  using detail::fmt_list;
  if (raw.dim() != 4) throw ShapeError("the published claims concern a four-port splitter");
  const ComplexMatrix u = unitarize(raw);
  std::vector<Claim> claims;
  auto check = [&claims](std::string name, std::string quoted, auto&& body) {
    Claim c{std::move(name), false, "", std::move(quoted)};
    try {
      body(c);
    } catch (const NumericError& e) {
      c.pass = false;
      c.computed = std::string("numeric failure: ") + e.what();
    }
    claims.push_back(std::move(c));
  };

  auto evolve_spec = [&](const char* spec) { return evolve_state(u, state_from_spec(spec)); };
  const auto two = evolve_spec("0,0,1,1");

  std::vector<double> mags;
  std::vector<double> quoted_mags;
  std::vector<double> phases;
  std::vector<double> quoted_phases;
  for (const auto& q : published::two_photon_output()) {
    const Complex a = two.amplitude(detail::fock4(q.occupations));
    mags.push_back(std::abs(a));
    phases.push_back(rad_to_deg(std::arg(a)));
    quoted_mags.push_back(q.magnitude);
    quoted_phases.push_back(q.phase_deg);
  }
  check("two-photon output magnitudes (10 components, +-0.02)", fmt_list(quoted_mags, 3),
        [&](Claim& c) {
          const double gap = detail::max_gap(mags, quoted_mags);
          c.pass = gap <= 0.02;
          c.computed = fmt_list(mags, 3) + " max gap " + fmt(gap, 4);
        });
  check("two-photon output relative phases (+-4 deg)", "<= 4 deg", [&](Claim& c) {
    const double spread = relative_phase_spread(phases, quoted_phases);
    c.pass = spread <= 4.0;
    c.computed = "worst pairwise disagreement " + fmt(spread, 1) + " deg";
  });
  check("two-photon NOON", "P in [0.45, 0.50], F >= 0.998, " + fmt_list(published::kTwoPhotonNoon, 3),
        [&](Claim& c) {
          const auto r = extract_noon(two, 2);
          const double gap = detail::max_gap(r.normalized_amplitudes, published::kTwoPhotonNoon);
          c.pass = r.success_probability >= 0.45 && r.success_probability <= 0.50 &&
                   r.fidelity >= 0.998 && gap <= 0.02;
          c.computed = "P=" + fmt(r.success_probability, 4) + " F=" + fmt(r.fidelity, 4) + " " +
                       fmt_list(r.normalized_amplitudes, 3);
        });
  check("two-photon path-entangled branch",
        "P in [0.44, 0.52], " + fmt_list(published::kPathEntangled, 3), [&](Claim& c) {
          PostSelection sel{{FockState({1, 1, 0, 0}), FockState({0, 0, 1, 1})}};
          const auto r = post_select(two, sel);
          const std::array<double, 2> m = {std::abs(r.state.amplitude(sel.kept[0])),
                                           std::abs(r.state.amplitude(sel.kept[1]))};
          const double gap = detail::max_gap(m, published::kPathEntangled);
          c.pass = gap <= 0.02 && r.probability >= 0.44 && r.probability <= 0.52;
          c.computed = "P=" + fmt(r.probability, 4) + " " + fmt_list(m, 3);
        });
  check("three-photon NOON",
        "P 0.348+-0.02, F 0.992+-0.005, " + fmt_list(published::kThreePhotonNoon, 3),
        [&](Claim& c) {
          const auto r = extract_noon(evolve_spec("0,1,1,1"), 3);
          const double gap = detail::max_gap(r.normalized_amplitudes, published::kThreePhotonNoon);
          c.pass = std::abs(r.success_probability - 0.348) <= 0.02 &&
                   std::abs(r.fidelity - 0.992) <= 0.005 && gap <= 0.02;
          c.computed = "P=" + fmt(r.success_probability, 4) + " F=" + fmt(r.fidelity, 4) + " " +
                       fmt_list(r.normalized_amplitudes, 3);
        });
  check("four-photon NOON",
        "P 0.337+-0.02 (or 0.348+-0.02), F >= 0.995, " + fmt_list(published::kFourPhotonNoon, 3),
        [&](Claim& c) {
          const auto r = extract_noon(evolve_spec("1,1,1,1"), 4);
          const double gap = detail::max_gap(r.normalized_amplitudes, published::kFourPhotonNoon);
          const bool in_band = std::abs(r.success_probability - 0.337) <= 0.02 ||
                               std::abs(r.success_probability - 0.348) <= 0.02;
          c.pass = in_band && r.fidelity >= 0.995 && gap <= 0.02;
          c.computed = "P=" + fmt(r.success_probability, 4) + " F=" + fmt(r.fidelity, 4) + " " +
                       fmt_list(r.normalized_amplitudes, 3);
        });
  check("spread input beats concentrated input", "P|1,1,1,1> > P|4,0,0,0>", [&](Claim& c) {
    const auto rows = sweep_inputs(u, 4, 4);
    double spread_p = -1.0;
    double bunched_p = -1.0;
    for (const auto& row : rows) {
      if (row.input == FockState({1, 1, 1, 1})) spread_p = row.success_probability;
      if (row.input == FockState({4, 0, 0, 0})) bunched_p = row.success_probability;
    }
    c.pass = spread_p > bunched_p;
    c.computed = "P|1,1,1,1>=" + fmt(spread_p, 4) + " P|4,0,0,0>=" + fmt(bunched_p, 4);
  });
  return claims;
}

}  // namespace noonforge
