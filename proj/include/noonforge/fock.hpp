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

// Occupation-number (Fock) states of n photons over m ports.

#include <Eigen/Dense>

#include <charconv>
#include <cmath>
#include <compare>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "noonforge/errors.hpp"
#include "noonforge/unitary.hpp"

namespace noonforge {

class FockState {
 public:
  FockState() = default;
  explicit FockState(std::vector<int> occupations) : occ_(std::move(occupations)) {
    for (int k : occ_) {
      if (k < 0) throw SpecError("occupation numbers must be non-negative");
    }
  }

  int modes() const { return static_cast<int>(occ_.size()); }
  int photons() const {
    int n = 0;
    for (int k : occ_) n += k;
    return n;
  }
  int operator[](int mode) const { return occ_[static_cast<std::size_t>(mode)]; }
  const std::vector<int>& occupations() const { return occ_; }

  /// All n photons in `mode`, none elsewhere.
  static FockState concentrated(int modes, int mode, int photons) {
    std::vector<int> occ(static_cast<std::size_t>(modes), 0);
    occ[static_cast<std::size_t>(mode)] = photons;
    return FockState(std::move(occ));
  }

  friend auto operator<=>(const FockState&, const FockState&) = default;

 private:
  std::vector<int> occ_;
};

/// Comma-separated occupations, e.g. "0,0,1,1".
inline std::string occupation_string(const FockState& s) {
  std::string out;
  for (int i = 0; i < s.modes(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out;
}

inline std::string to_string(const FockState& s) { return "|" + occupation_string(s) + ">"; }

inline constexpr std::uint64_t kDefaultBasisCap = 10'000'000;

/// Basis-size cap; the NOONFORGE_CAP environment variable overrides the default.
inline std::uint64_t default_basis_cap() {
  if (const char* env = std::getenv("NOONFORGE_CAP")) {
    std::uint64_t v = 0;
    const std::string_view s(env);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec == std::errc{} && res.ptr == s.data() + s.size() && v > 0) return v;
  }
  return kDefaultBasisCap;
}

/// C(n + m - 1, m - 1), saturating at uint64 max.
inline std::uint64_t basis_size(int modes, int photons) {
  const std::uint64_t k = static_cast<std::uint64_t>(modes - 1);
  const std::uint64_t top = static_cast<std::uint64_t>(photons) + k;
  std::uint64_t acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // acc * (top - k + i) is divisible by i; split i across both factors.
    const std::uint64_t g = std::gcd(acc, i);
    const std::uint64_t factor = (top - k + i) / (i / g);
    if (__builtin_mul_overflow(acc / g, factor, &acc)) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return acc;
}

/// All n-photon states over m modes, in descending lexicographic order so that
/// |n,0,...,0> comes first.
class FockBasis {
 public:
  FockBasis(int modes, int photons, std::uint64_t cap = default_basis_cap())
      : modes_(modes), photons_(photons) {
    if (modes < 1) throw ShapeError("basis needs at least one mode");
    if (photons < 0) throw ShapeError("photon number must be non-negative");
    const std::uint64_t size = basis_size(modes, photons);
    if (size > cap) {
      throw CapacityError("basis of " + std::to_string(photons) + " photons over " +
                          std::to_string(modes) + " modes has " + std::to_string(size) +
                          " states, above the cap of " + std::to_string(cap) +
                          " (set NOONFORGE_CAP to raise it)");
    }
    states_.reserve(static_cast<std::size_t>(size));
    std::vector<int> occ(static_cast<std::size_t>(modes), 0);
    fill(occ, 0, photons);
    for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i].occupations(), i);
  }

  int modes() const { return modes_; }
  int photons() const { return photons_; }
  std::size_t size() const { return states_.size(); }
  const std::vector<FockState>& states() const { return states_; }
  const FockState& operator[](std::size_t i) const { return states_[i]; }

  std::optional<std::size_t> find(const FockState& s) const {
    const auto it = index_.find(s.occupations());
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(const FockState& s) const {
    if (s.modes() != modes_ || s.photons() != photons_) {
      throw ShapeError("state " + to_string(s) + " is not in the " + std::to_string(photons_) +
                       "-photon, " + std::to_string(modes_) + "-mode basis");
    }
    return *find(s);
  }

  friend bool operator==(const FockBasis& a, const FockBasis& b) {
    return a.modes_ == b.modes_ && a.photons_ == b.photons_;
  }

 private:
  void fill(std::vector<int>& occ, int mode, int remaining) {
    if (mode == modes_ - 1) {
      occ[static_cast<std::size_t>(mode)] = remaining;
      states_.emplace_back(occ);
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      occ[static_cast<std::size_t>(mode)] = k;
      fill(occ, mode + 1, remaining - k);
    }
  }

  int modes_;
  int photons_;
  std::vector<FockState> states_;
  std::map<std::vector<int>, std::size_t> index_;
};

inline std::shared_ptr<const FockBasis> enumerate_basis(int modes, int photons,
                                                        std::uint64_t cap = default_basis_cap()) {
  return std::make_shared<const FockBasis>(modes, photons, cap);
}

/// Amplitudes below this magnitude are treated as zero when fixing the global phase.
inline constexpr double kCanonicalPhaseFloor = 1e-12;

/// Pure state expanded over a Fock basis.
class QuantumState {
 public:
  QuantumState(std::shared_ptr<const FockBasis> basis, Eigen::VectorXcd amplitudes)
      : basis_(std::move(basis)), amp_(std::move(amplitudes)) {
    if (!basis_) throw ShapeError("state needs a basis");
    if (static_cast<std::size_t>(amp_.size()) != basis_->size()) {
      throw ShapeError("amplitude vector length does not match basis size");
    }
  }

  static QuantumState basis_state(std::shared_ptr<const FockBasis> basis, const FockState& s) {
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->size()));
    amp(static_cast<Eigen::Index>(basis->index_of(s))) = 1.0;
    return QuantumState(std::move(basis), std::move(amp));
  }

  const FockBasis& basis() const { return *basis_; }
  const std::shared_ptr<const FockBasis>& basis_ptr() const { return basis_; }
  const Eigen::VectorXcd& amplitudes() const { return amp_; }
  Complex amplitude(const FockState& s) const {
    return amp_(static_cast<Eigen::Index>(basis_->index_of(s)));
  }

  double norm() const { return amp_.norm(); }
  bool is_normalized(double tol = 1e-9) const { return std::abs(amp_.squaredNorm() - 1.0) <= tol; }

  QuantumState normalized() const {
    const double n = norm();
    if (!(n > 0.0)) throw ZeroProbabilityError("cannot normalize a zero state");
    return QuantumState(basis_, amp_ / n);
  }

  /// Global phase fixed so the first non-negligible amplitude is real positive.
  QuantumState canonical() const {
    for (Eigen::Index i = 0; i < amp_.size(); ++i) {
      if (std::abs(amp_(i)) > kCanonicalPhaseFloor) {
        const Complex rot = std::conj(amp_(i)) / std::abs(amp_(i));
        return QuantumState(basis_, amp_ * rot);
      }
    }
    return *this;
  }

 private:
  std::shared_ptr<const FockBasis> basis_;
  Eigen::VectorXcd amp_;
};

namespace detail {

class KetSpecParser {
 public:
  explicit KetSpecParser(std::string_view text) : text_(text) {}

  struct Term {
    Complex weight;
    std::vector<int> occ;
  };

  std::vector<Term> parse() {
    std::vector<Term> terms;
    skip_ws();
    if (text_.find('|') == std::string_view::npos) {
      terms.push_back({1.0, ket_body()});
      skip_ws();
      if (pos_ != text_.size()) fail("unexpected trailing text");
      return terms;
    }
    while (true) {
      terms.push_back(term());
      skip_ws();
      if (pos_ == text_.size()) break;
      if (text_[pos_] != '+') fail("expected '+' between terms");
      ++pos_;
      skip_ws();
    }
    return terms;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw SpecError("bad state spec '" + std::string(text_) + "' at position " +
                    std::to_string(pos_) + ": " + why);
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  double number() {
    skip_ws();
    double v = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || !std::isfinite(v)) fail("expected a number");
    pos_ += static_cast<std::size_t>(res.ptr - first);
    return v;
  }

  int integer() {
    skip_ws();
    int v = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{}) fail("expected an integer occupation");
    pos_ += static_cast<std::size_t>(res.ptr - first);
    if (v < 0) fail("occupation numbers must be non-negative");
    return v;
  }

  std::vector<int> ket_body() {
    std::vector<int> occ{integer()};
    while (accept(',')) occ.push_back(integer());
    if (occ.size() < 2) fail("a ket needs at least two occupation numbers");
    return occ;
  }

  Term term() {
    skip_ws();
    Complex weight = 1.0;
    if (pos_ < text_.size() && text_[pos_] != '|') {
      const double amp = number();
      double phase = 0.0;
      if (accept('@')) phase = number();
      if (!accept('*')) fail("expected '*' before the ket");
      weight = std::polar(1.0, deg_to_rad(phase)) * amp;
    }
    if (!accept('|')) fail("expected '|'");
    auto occ = ket_body();
    if (!accept('>')) fail("expected '>'");
    return {weight, std::move(occ)};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses "0,0,1,1" or a superposition such as "0.6*|2,0> + 0.8@90*|0,2>" into
/// a normalized state over the matching basis.
inline QuantumState state_from_spec(std::string_view spec, std::uint64_t cap = default_basis_cap()) {
  const auto terms = detail::KetSpecParser(spec).parse();
  const auto modes = terms.front().occ.size();
  int photons = 0;
  for (int k : terms.front().occ) photons += k;
  for (const auto& t : terms) {
    int n = 0;
    for (int k : t.occ) n += k;
    if (t.occ.size() != modes) throw SpecError("superposition terms have different mode counts");
    if (n != photons) throw SpecError("superposition terms have different photon numbers");
  }
  auto basis = enumerate_basis(static_cast<int>(modes), photons, cap);
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->size()));
  for (const auto& t : terms) {
    amp(static_cast<Eigen::Index>(basis->index_of(FockState(t.occ)))) += t.weight;
  }
  if (!(amp.norm() > 0.0)) throw SpecError("state spec has zero norm");
  return QuantumState(std::move(basis), amp / amp.norm());
}

}  // namespace noonforge
