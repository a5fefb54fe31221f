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

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <numbers>
#include <set>

#include "noonforge/fock.hpp"
#include "test_support.hpp"

using namespace noonforge;
using Catch::Matchers::WithinAbs;

TEST_CASE("enumerate_basis sizes", "[fock]") {
  CHECK(enumerate_basis(4, 0)->size() == 1);
  CHECK((*enumerate_basis(4, 0))[0] == FockState({0, 0, 0, 0}));
  CHECK(enumerate_basis(4, 2)->size() == 10);
  CHECK(enumerate_basis(4, 4)->size() == 35);

  for (int m = 1; m <= 6; ++m) {
    for (int n = 0; n <= 8; ++n) {
      const auto b = enumerate_basis(m, n);
      REQUIRE(b->size() == testing::pascal(n + m - 1, m - 1));
      REQUIRE(basis_size(m, n) == testing::pascal(n + m - 1, m - 1));
    }
  }
}

TEST_CASE("basis is distinct, descending, and indexable", "[fock]") {
  for (int m = 1; m <= 5; ++m) {
    for (int n = 0; n <= 5; ++n) {
      const auto b = enumerate_basis(m, n);
      std::set<std::vector<int>> seen;
      for (std::size_t i = 0; i < b->size(); ++i) {
        const auto& s = (*b)[i];
        REQUIRE(s.modes() == m);
        REQUIRE(s.photons() == n);
        REQUIRE(seen.insert(s.occupations()).second);
        if (i > 0) REQUIRE((*b)[i - 1] > s);
        REQUIRE(b->index_of(s) == i);
      }
      if (n > 0) REQUIRE((*b)[0] == FockState::concentrated(m, 0, n));
    }
  }
  const auto b = enumerate_basis(3, 2);
  CHECK_THROWS_AS(b->index_of(FockState({1, 1})), ShapeError);
  CHECK_THROWS_AS(b->index_of(FockState({1, 1, 1})), ShapeError);
}

TEST_CASE("basis capacity", "[fock]") {
  CHECK_THROWS_AS(enumerate_basis(4, 4, 34), CapacityError);
  CHECK(enumerate_basis(4, 4, 35)->size() == 35);
  CHECK_THROWS_AS(enumerate_basis(40, 40), CapacityError);
  CHECK(basis_size(200, 200) == std::numeric_limits<std::uint64_t>::max());

  ::setenv("NOONFORGE_CAP", "20", 1);
  CHECK(default_basis_cap() == 20);
  CHECK(enumerate_basis(4, 3)->size() == 20);
  CHECK_THROWS_AS(enumerate_basis(4, 4), CapacityError);
  ::setenv("NOONFORGE_CAP", "not-a-number", 1);
  CHECK(default_basis_cap() == kDefaultBasisCap);
  ::unsetenv("NOONFORGE_CAP");
  CHECK(default_basis_cap() == kDefaultBasisCap);
}

TEST_CASE("state_from_spec with plain occupations", "[fock]") {
  const auto s = state_from_spec("0,0,1,1");
  CHECK(s.basis().modes() == 4);
  CHECK(s.basis().photons() == 2);
  CHECK(s.amplitude(FockState({0, 0, 1, 1})) == Complex{1.0, 0.0});
  CHECK(s.is_normalized());

  const auto four = state_from_spec("1,1,1,1");
  CHECK(four.basis().size() == 35);
  CHECK(four.amplitude(FockState({1, 1, 1, 1})) == Complex{1.0, 0.0});

  CHECK(state_from_spec(" 2 , 0 ").amplitude(FockState({2, 0})) == Complex{1.0, 0.0});
}

TEST_CASE("state_from_spec with superpositions", "[fock]") {
  const auto s = state_from_spec("0.6*|2,0> + 0.8@90*|0,2>");
  CHECK(s.is_normalized(1e-12));
  CHECK(std::abs(s.amplitude(FockState({2, 0})) - Complex{0.6, 0.0}) < 1e-15);
  CHECK(std::abs(s.amplitude(FockState({0, 2})) - Complex{0.0, 0.8}) < 1e-15);

  const auto u = state_from_spec("|1,0>+|0,1>");
  CHECK_THAT(std::abs(u.amplitude(FockState({1, 0}))), WithinAbs(std::numbers::sqrt2 / 2, 1e-15));

  // Repeated kets add.
  const auto r = state_from_spec("|1,0>+|1,0>");
  CHECK(std::abs(r.amplitude(FockState({1, 0})) - Complex{1.0, 0.0}) < 1e-15);
}

TEST_CASE("state_from_spec errors", "[fock]") {
  for (const char* bad : {"0,-1", "", "3", "|1,0", "1,0>", "|1,0>+|1,1>", "|1,0>+|1,0,0>",
                          "0.5|1,0>", "|1,0> |0,1>", "1,a", "1*|1,0>-|0,1>", "0*|1,0>",
                          "|1,0>+|0,1>+"}) {
    INFO(bad);
    CHECK_THROWS_AS(state_from_spec(bad), SpecError);
  }
  CHECK_THROWS_AS(FockState({1, -2}), SpecError);
}

TEST_CASE("QuantumState canonical phase and normalization", "[fock]") {
  auto b = enumerate_basis(2, 1);
  Eigen::VectorXcd amp(2);
  amp << Complex{0.0, 3.0}, Complex{-4.0, 0.0};
  const QuantumState s(b, amp);
  CHECK_FALSE(s.is_normalized());
  const auto c = s.normalized().canonical();
  CHECK(c.is_normalized(1e-15));
  CHECK(std::abs(c.amplitudes()(0) - Complex{0.6, 0.0}) < 1e-15);
  CHECK(std::abs(c.amplitudes()(1) - Complex{0.0, 0.8}) < 1e-15);
  CHECK_THROWS_AS(QuantumState(b, Eigen::VectorXcd::Zero(2)).normalized(), ZeroProbabilityError);
  CHECK_THROWS_AS(QuantumState(b, Eigen::VectorXcd::Zero(3)), ShapeError);
}
