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

// Scattering-matrix algebra for four-port (and general m-port) beam splitters:
// polar ingestion, projection onto the unitary group, symmetry checks and the
// single-particle generator A with U = exp(-i A).

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "noonforge/errors.hpp"

namespace noonforge {

using Complex = std::complex<double>;

inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kBranchCutTolerance = 1e-12;

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Wraps an angle in degrees into (-180, 180].
inline double wrap_degrees(double deg) {
  double w = std::fmod(deg, 360.0);
  if (w <= -180.0) w += 360.0;
  if (w > 180.0) w -= 360.0;
  return w;
}

/// Largest absolute entry of M^dagger M - I.
inline double max_unitarity_deviation(const Eigen::MatrixXcd& m) {
  const auto n = m.rows();
  return (m.adjoint() * m - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

/// Dense square complex matrix of dimension >= 2 with finite entries.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
      throw ShapeError("matrix must be square, got " + std::to_string(m_.rows()) + "x" +
                       std::to_string(m_.cols()));
    }
    if (m_.rows() < 2) throw ShapeError("matrix dimension must be at least 2");
    for (Eigen::Index i = 0; i < m_.size(); ++i) {
      const Complex z = m_.data()[i];
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw ShapeError("matrix entries must be finite");
      }
    }
  }

  static ComplexMatrix identity(int dim) {
    return ComplexMatrix(Eigen::MatrixXcd::Identity(dim, dim));
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& data() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  bool is_unitary(double tol = kUnitaryTolerance) const {
    return max_unitarity_deviation(m_) <= tol;
  }

 private:
  Eigen::MatrixXcd m_;
};

/// Magnitude and phase (degrees) of one scattering amplitude.
struct PolarEntry {
  double magnitude = 0.0;
  double phase_deg = 0.0;

  Complex value() const { return std::polar(magnitude, deg_to_rad(phase_deg)); }
};

using PolarGrid = std::vector<std::vector<PolarEntry>>;

inline ComplexMatrix from_polar(const PolarGrid& entries) {
  const auto dim = static_cast<Eigen::Index>(entries.size());
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const auto& row = entries[static_cast<std::size_t>(r)];
    if (static_cast<Eigen::Index>(row.size()) != dim) {
      throw ShapeError("polar entries must form a square grid; row " + std::to_string(r) +
                       " has " + std::to_string(row.size()) + " entries, expected " +
                       std::to_string(dim));
    }
    for (Eigen::Index c = 0; c < dim; ++c) {
      const PolarEntry& e = row[static_cast<std::size_t>(c)];
      if (!std::isfinite(e.magnitude) || !std::isfinite(e.phase_deg)) {
        throw ShapeError("polar entry is not finite");
      }
      if (e.magnitude < 0.0) throw ShapeError("polar magnitude must be non-negative");
      m(r, c) = e.value();
    }
  }
  return ComplexMatrix(std::move(m));
}

inline PolarGrid to_polar(const ComplexMatrix& m) {
  PolarGrid grid(static_cast<std::size_t>(m.dim()));
  for (int r = 0; r < m.dim(); ++r) {
    for (int c = 0; c < m.dim(); ++c) {
      const Complex z = m(r, c);
      grid[static_cast<std::size_t>(r)].push_back({std::abs(z), rad_to_deg(std::arg(z))});
    }
  }
  return grid;
}

/// Frobenius norm of M^dagger M - I; zero iff M is exactly unitary.
inline double unitarity_defect(const ComplexMatrix& m) {
  const auto n = m.dim();
  return (m.data().adjoint() * m.data() - Eigen::MatrixXcd::Identity(n, n)).norm();
}

/// Nearest unitary in Frobenius norm: the polar factor W V^dagger of M = W S V^dagger.
inline ComplexMatrix unitarize(const ComplexMatrix& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m.data(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double smax = sigma(0);
  const double smin = sigma(sigma.size() - 1);
  if (!(smax > 0.0) || smin <= 1e-12 * smax) {
    throw SingularMatrixError("matrix is singular (smallest singular value " +
                              std::to_string(smin) + "); no unique nearest unitary");
  }
  return ComplexMatrix(svd.matrixU() * svd.matrixV().adjoint());
}

struct MatrixIndex {
  int row = 0;
  int col = 0;
  friend bool operator==(const MatrixIndex&, const MatrixIndex&) = default;
};

struct EqualityPair {
  MatrixIndex first;
  MatrixIndex second;
};

enum class SubspaceKind { SubspaceI, SubspaceII };

/// Equality constraints that a four-port scattering matrix inherits from the
/// mode symmetry of its subspace.
struct SymmetryPattern {
  SubspaceKind kind = SubspaceKind::SubspaceI;
  std::vector<EqualityPair> equality_pairs;

  /// Same-side four-port: the lower-right and upper-left 2x2 blocks are each
  /// persymmetric, and so are the off-diagonal blocks.
  static SymmetryPattern subspace_one() {
    return {SubspaceKind::SubspaceI,
            {{{0, 0}, {1, 1}},
             {{0, 1}, {1, 0}},
             {{0, 2}, {1, 3}},
             {{0, 3}, {1, 2}},
             {{2, 0}, {3, 1}},
             {{2, 1}, {3, 0}},
             {{2, 2}, {3, 3}},
             {{2, 3}, {3, 2}}}};
  }

  /// Disjoint in/out modes: every column is an independent process.
  static SymmetryPattern subspace_two() { return {SubspaceKind::SubspaceII, {}}; }
};

struct SymmetryViolation {
  enum class Kind { EntryMismatch, ColumnNorm };
  Kind kind = Kind::EntryMismatch;
  EqualityPair pair{};  // EntryMismatch only
  int column = -1;      // ColumnNorm only
  double magnitude_gap = 0.0;
  double phase_gap_deg = 0.0;
};

inline std::vector<SymmetryViolation> validate_symmetry(const ComplexMatrix& m,
                                                        const SymmetryPattern& pattern,
                                                        double tol_mag, double tol_phase_deg) {
  if (m.dim() != 4) {
    throw ShapeError("symmetry patterns are defined for 4x4 matrices, got dimension " +
                     std::to_string(m.dim()));
  }
  std::vector<SymmetryViolation> out;
  if (pattern.kind == SubspaceKind::SubspaceII) {
    for (int c = 0; c < 4; ++c) {
      const double gap = std::abs(m.data().col(c).norm() - 1.0);
      if (gap > tol_mag) {
        SymmetryViolation v;
        v.kind = SymmetryViolation::Kind::ColumnNorm;
        v.column = c;
        v.magnitude_gap = gap;
        out.push_back(v);
      }
    }
    return out;
  }
  for (const auto& p : pattern.equality_pairs) {
    const Complex a = m(p.first.row, p.first.col);
    const Complex b = m(p.second.row, p.second.col);
    const double mag_gap = std::abs(std::abs(a) - std::abs(b));
    const double phase_gap = std::abs(wrap_degrees(rad_to_deg(std::arg(a) - std::arg(b))));
    if (mag_gap > tol_mag || phase_gap > tol_phase_deg) {
      SymmetryViolation v;
      v.pair = p;
      v.magnitude_gap = mag_gap;
      v.phase_gap_deg = phase_gap;
      out.push_back(v);
    }
  }
  return out;
}

/// Hermitian single-particle generator A of H = sum_mn A_mn a_m^dagger a_n
/// (hbar = 1, t = 1).
class Hamiltonian {
 public:
  explicit Hamiltonian(Eigen::MatrixXcd a) : a_(std::move(a)) {
    if (a_.rows() != a_.cols() || a_.rows() < 1) throw ShapeError("Hamiltonian must be square");
    const double dev = (a_ - a_.adjoint()).cwiseAbs().maxCoeff();
    if (!(dev <= kHermitianTolerance)) {
      throw NotHermitianError("coupling matrix is not Hermitian (max |A - A^dagger| = " +
                              std::to_string(dev) + ")");
    }
  }

  int dim() const { return static_cast<int>(a_.rows()); }
  const Eigen::MatrixXcd& coupling() const { return a_; }

 private:
  Eigen::MatrixXcd a_;
};

namespace detail {

/// exp(-i H) for Hermitian H via its eigendecomposition.
inline Eigen::MatrixXcd exp_minus_i_hermitian(const Eigen::MatrixXcd& h) {
  const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(sym);
  const Eigen::VectorXd& w = eig.eigenvalues();
  Eigen::VectorXcd phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::polar(1.0, -w(k));
  const Eigen::MatrixXcd& v = eig.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

}  // namespace detail

/// exp(-i A): the single-photon evolution operator generated by A.
inline ComplexMatrix matrix_exp(const Hamiltonian& a) {
  return ComplexMatrix(detail::exp_minus_i_hermitian(a.coupling()));
}

/// A = i Log(U) with the principal logarithm, so that exp(-i A) = U.
inline Hamiltonian effective_hamiltonian(const ComplexMatrix& u) {
  const double dev = max_unitarity_deviation(u.data());
  if (dev > kUnitaryTolerance) {
    throw NotUnitaryError("effective Hamiltonian needs an exactly unitary matrix (max deviation " +
                          std::to_string(dev) + "); unitarize it first");
  }
  // A unitary matrix is normal, so its complex Schur form is diagonal up to
  // rounding and Q is a unitary eigenbasis even for degenerate spectra.
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u.data());
  const Eigen::MatrixXcd& t = schur.matrixT();
  const Eigen::MatrixXcd& q = schur.matrixU();
  Eigen::VectorXcd generator(t.rows());
  for (Eigen::Index k = 0; k < t.rows(); ++k) {
    const Complex lambda = t(k, k);
    if (std::abs(lambda + 1.0) <= kBranchCutTolerance) {
      throw BranchCutError(
          "eigenvalue at -1 lies on the branch cut of the principal logarithm; perturb the "
          "matrix (e.g. apply a small global phase) and retry");
    }
    generator(k) = -std::arg(lambda);
  }
  Eigen::MatrixXcd a = q * generator.asDiagonal() * q.adjoint();
  return Hamiltonian(0.5 * (a + a.adjoint()));
}

}  // namespace noonforge
