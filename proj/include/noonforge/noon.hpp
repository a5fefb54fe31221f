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

// Post-selection of NOON and path-entangled components from an evolved state.
//
// For the N-photon components c_j on |N e_j>, a phase shifter theta_j on mode j
// multiplies |..n_j..> by exp(i n_j theta_j), so theta_j = -arg(c_j) / N makes
// every NOON component real positive. The overlap with the equal-weight ideal
// NOON state is then maximal and has the closed form
//
//     F = (sum_j |c_j|)^2 / (K sum_j |c_j|^2).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "noonforge/errors.hpp"
#include "noonforge/evolve.hpp"
#include "noonforge/fock.hpp"
#include "noonforge/unitary.hpp"

namespace noonforge {

/// Probabilities at or below this are treated as an empty post-selection.
inline constexpr double kZeroProbability = 1e-24;

struct PostSelection {
  std::vector<FockState> kept;
};

struct PostSelectionResult {
  QuantumState state;  // renormalized over the kept states, canonical global phase
  double probability = 0.0;
  double discarded_probability = 0.0;
  std::vector<FockState> kept;
};

inline PostSelectionResult post_select(const TransitionTable& table, const PostSelection& selection) {
  if (selection.kept.empty()) throw InputError("post-selection keeps no states");
  const FockBasis& basis = table.basis();
  std::set<std::size_t> indices;
  for (const auto& s : selection.kept) indices.insert(basis.index_of(s));

  const Eigen::VectorXcd& amp = table.amplitudes();
  Eigen::VectorXcd kept = Eigen::VectorXcd::Zero(amp.size());
  double p = 0.0;
  for (std::size_t i : indices) {
    const auto k = static_cast<Eigen::Index>(i);
    kept(k) = amp(k);
    p += std::norm(amp(k));
  }
  if (p <= kZeroProbability) {
    throw ZeroProbabilityError("post-selected states carry zero probability");
  }
  std::vector<FockState> states;
  for (std::size_t i : indices) states.push_back(basis[i]);
  QuantumState state = QuantumState(table.output().basis_ptr(), kept / std::sqrt(p)).canonical();
  return {std::move(state), p, amp.squaredNorm() - p, std::move(states)};
}

struct NoonReport {
  int photons = 0;
  int modes = 0;
  std::vector<Complex> raw_amplitudes;      // c_j on |N e_j>
  double success_probability = 0.0;         // sum_j |c_j|^2
  std::vector<double> optimal_phases_deg;   // theta_j
  std::vector<double> normalized_amplitudes;
  double fidelity = 0.0;
  double discarded_probability = 0.0;
};

/// sum_j |N e_j> / sqrt(K), all phases zero.
inline QuantumState ideal_noon_state(std::shared_ptr<const FockBasis> basis) {
  const int k = basis->modes();
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->size()));
  for (int j = 0; j < k; ++j) {
    const auto idx = basis->index_of(FockState::concentrated(k, j, basis->photons()));
    amp(static_cast<Eigen::Index>(idx)) = 1.0 / std::sqrt(static_cast<double>(k));
  }
  return QuantumState(std::move(basis), std::move(amp));
}

inline NoonReport extract_noon(const TransitionTable& table, int photons) {
  const FockBasis& basis = table.basis();
  if (basis.photons() != photons) {
    throw ShapeError("table holds " + std::to_string(basis.photons()) +
                     "-photon amplitudes, asked for N = " + std::to_string(photons));
  }
  if (photons < 1) throw ShapeError("NOON extraction needs at least one photon");
  NoonReport r;
  r.photons = photons;
  r.modes = basis.modes();
  double sum_abs = 0.0;
  for (int j = 0; j < r.modes; ++j) {
    const Complex c = table.amplitude(FockState::concentrated(r.modes, j, photons));
    r.raw_amplitudes.push_back(c);
    r.success_probability += std::norm(c);
    sum_abs += std::abs(c);
    r.optimal_phases_deg.push_back(c == Complex{} ? 0.0 : -rad_to_deg(std::arg(c)) / photons);
  }
  if (r.success_probability <= kZeroProbability) {
    throw ZeroProbabilityError("no NOON component survives");
  }
  const double root = std::sqrt(r.success_probability);
  for (const Complex& c : r.raw_amplitudes) r.normalized_amplitudes.push_back(std::abs(c) / root);
  r.fidelity = sum_abs * sum_abs / (r.modes * r.success_probability);
  r.discarded_probability = table.amplitudes().squaredNorm() - r.success_probability;
  return r;
}

/// |<target|state>|^2.
inline double fidelity_against(const QuantumState& state, const QuantumState& target) {
  if (!(state.basis() == target.basis())) throw ShapeError("states live in different bases");
  return std::norm(target.amplitudes().dot(state.amplitudes()));
}

/// Per-mode phase shifters: |n_0..n_{K-1}> picks up exp(i sum_j n_j theta_j).
inline QuantumState apply_phase_shifts(const QuantumState& state,
                                       const std::vector<double>& phases_deg) {
  const FockBasis& basis = state.basis();
  if (static_cast<int>(phases_deg.size()) != basis.modes()) {
    throw ShapeError("need one phase per mode");
  }
  Eigen::VectorXcd amp = state.amplitudes();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    double total = 0.0;
    for (int j = 0; j < basis.modes(); ++j) {
      total += basis[i][j] * deg_to_rad(phases_deg[static_cast<std::size_t>(j)]);
    }
    amp(static_cast<Eigen::Index>(i)) *= std::polar(1.0, total);
  }
  return QuantumState(state.basis_ptr(), std::move(amp));
}

inline TransitionTable apply_phase_shifts(const TransitionTable& table,
                                          const std::vector<double>& phases_deg) {
  return TransitionTable(table.input(), apply_phase_shifts(table.output(), phases_deg));
}

struct SweepRow {
  FockState input;
  double success_probability = 0.0;
  std::optional<NoonReport> report;  // empty when no NOON component survives
};

/// Every placement of n photons over the first K input ports, ranked by NOON
/// success probability (descending), ties by ascending occupation tuple.
inline std::vector<SweepRow> sweep_inputs(const ComplexMatrix& u, int photons, int input_ports) {
  if (photons < 1) throw InputError("sweep needs at least one photon");
  if (input_ports < 1 || input_ports > u.dim()) {
    throw ShapeError("sweep over " + std::to_string(input_ports) + " ports of a " +
                     std::to_string(u.dim()) + "-port unitary");
  }
  const auto inputs = enumerate_basis(input_ports, photons);
  const auto basis = enumerate_basis(u.dim(), photons);
  std::vector<SweepRow> rows;
  rows.reserve(inputs->size());
  for (const FockState& partial : inputs->states()) {
    std::vector<int> occ = partial.occupations();
    occ.resize(static_cast<std::size_t>(u.dim()), 0);
    FockState in(std::move(occ));
    const auto table = evolve_state(u, QuantumState::basis_state(basis, in));
    SweepRow row{in, 0.0, std::nullopt};
    try {
      row.report = extract_noon(table, photons);
      row.success_probability = row.report->success_probability;
    } catch (const ZeroProbabilityError&) {
    }
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.success_probability != b.success_probability) {
      return a.success_probability > b.success_probability;
    }
    return a.input < b.input;
  });
  return rows;
}

}  // namespace noonforge
