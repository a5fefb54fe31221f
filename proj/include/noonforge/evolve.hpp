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

// Multiphoton evolution through a linear-optical unitary. Two independent
// routes: matrix permanents of repeated submatrices, and exponentiation of the
// second-quantized Hamiltonian on the n-photon basis.

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

#include "noonforge/errors.hpp"
#include "noonforge/fock.hpp"
#include "noonforge/permanent.hpp"
#include "noonforge/unitary.hpp"

namespace noonforge {

/// Output amplitudes <out|S|in> over the input's photon-number sector.
class TransitionTable {
 public:
  TransitionTable(QuantumState input, QuantumState output)
      : input_(std::move(input)), output_(std::move(output)) {
    if (!(input_.basis() == output_.basis())) {
      throw ShapeError("transition table input and output bases differ");
    }
  }

  const QuantumState& input() const { return input_; }
  const QuantumState& output() const { return output_; }
  const FockBasis& basis() const { return output_.basis(); }
  const Eigen::VectorXcd& amplitudes() const { return output_.amplitudes(); }
  Complex amplitude(const FockState& s) const { return output_.amplitude(s); }

 private:
  QuantumState input_;
  QuantumState output_;
};

namespace detail {

inline double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

/// Port indices with multiplicity: occupation (2,0,1) -> {0,0,2}.
inline std::vector<int> repeated_ports(const FockState& s) {
  std::vector<int> ports;
  for (int m = 0; m < s.modes(); ++m) {
    for (int k = 0; k < s[m]; ++k) ports.push_back(m);
  }
  return ports;
}

inline double occupation_norm(const FockState& s) {
  double p = 1.0;
  for (int m = 0; m < s.modes(); ++m) p *= factorial(s[m]);
  return p;
}

inline Complex transition_amplitude_unchecked(const Eigen::MatrixXcd& u,
                                              const std::vector<int>& in_ports, double in_norm,
                                              const FockState& out) {
  const auto out_ports = repeated_ports(out);
  const auto n = static_cast<Eigen::Index>(in_ports.size());
  Eigen::MatrixXcd sub(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      sub(r, c) = u(out_ports[static_cast<std::size_t>(r)], in_ports[static_cast<std::size_t>(c)]);
    }
  }
  return permanent(sub) / std::sqrt(in_norm * occupation_norm(out));
}

inline void require_evolvable(const ComplexMatrix& u, const QuantumState& state) {
  if (state.basis().modes() != u.dim()) {
    throw ShapeError("state has " + std::to_string(state.basis().modes()) +
                     " modes but the unitary has " + std::to_string(u.dim()) + " ports");
  }
  if (!state.is_normalized()) throw InputError("input state is not normalized");
}

}  // namespace detail

/// <out| S |in> = Per(U[out, in]) / sqrt(prod in_i! prod out_j!), where the
/// submatrix repeats row j out_j times and column i in_i times.
inline Complex transition_amplitude(const ComplexMatrix& u, const FockState& in,
                                    const FockState& out) {
  if (in.modes() != u.dim() || out.modes() != u.dim()) {
    throw ShapeError("Fock states must have one occupation per port (" +
                     std::to_string(u.dim()) + ")");
  }
  if (in.photons() != out.photons()) {
    throw ShapeError("photon number is conserved: " + to_string(in) + " and " + to_string(out) +
                     " lie in different sectors");
  }
  return detail::transition_amplitude_unchecked(u.data(), detail::repeated_ports(in),
                                                detail::occupation_norm(in), out);
}

/// Permanent route. Each output amplitude sums its input components in basis
/// order, so the result does not depend on evaluation order across outputs.
inline TransitionTable evolve_state(const ComplexMatrix& u, const QuantumState& state) {
  detail::require_evolvable(u, state);
  if (!u.is_unitary()) {
    throw NotUnitaryError("evolution needs an exactly unitary matrix; unitarize it first");
  }
  const FockBasis& basis = state.basis();
  struct Component {
    std::vector<int> ports;
    double norm;
    Complex weight;
  };
  std::vector<Component> inputs;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Complex c = state.amplitudes()(static_cast<Eigen::Index>(i));
    if (c == Complex{}) continue;
    inputs.push_back({detail::repeated_ports(basis[i]), detail::occupation_norm(basis[i]), c});
  }
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    Complex acc{};
    for (const auto& in : inputs) {
      acc += in.weight *
             detail::transition_amplitude_unchecked(u.data(), in.ports, in.norm, basis[j]);
    }
    out(static_cast<Eigen::Index>(j)) = acc;
  }
  return TransitionTable(state, QuantumState(state.basis_ptr(), std::move(out)));
}

/// Matrix of sum_mn A_mn a_m^dagger a_n on the n-photon basis.
inline Eigen::MatrixXcd second_quantized(const Hamiltonian& a, const FockBasis& basis) {
  if (a.dim() != basis.modes()) {
    throw ShapeError("Hamiltonian acts on " + std::to_string(a.dim()) + " modes, basis has " +
                     std::to_string(basis.modes()));
  }
  const auto size = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(size, size);
  const auto& coupling = a.coupling();
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const auto& in = basis[col].occupations();
    for (int n = 0; n < a.dim(); ++n) {
      if (in[static_cast<std::size_t>(n)] == 0) continue;
      for (int m = 0; m < a.dim(); ++m) {
        const Complex amn = coupling(m, n);
        if (amn == Complex{}) continue;
        std::vector<int> occ = in;
        double coef = std::sqrt(static_cast<double>(occ[static_cast<std::size_t>(n)]));
        --occ[static_cast<std::size_t>(n)];
        coef *= std::sqrt(static_cast<double>(occ[static_cast<std::size_t>(m)] + 1));
        ++occ[static_cast<std::size_t>(m)];
        const auto row = basis.index_of(FockState(std::move(occ)));
        h(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += amn * coef;
      }
    }
  }
  return h;
}

/// Hamiltonian route: exp(-i H) applied on the full n-photon basis (t = 1).
inline TransitionTable evolve_state_hamiltonian(const Hamiltonian& a, const QuantumState& state) {
  if (state.basis().modes() != a.dim()) {
    throw ShapeError("state has " + std::to_string(state.basis().modes()) +
                     " modes but the Hamiltonian acts on " + std::to_string(a.dim()));
  }
  if (!state.is_normalized()) throw InputError("input state is not normalized");
  const Eigen::MatrixXcd s = detail::exp_minus_i_hermitian(second_quantized(a, state.basis()));
  Eigen::VectorXcd out = s * state.amplitudes();
  return TransitionTable(state, QuantumState(state.basis_ptr(), std::move(out)));
}

}  // namespace noonforge
