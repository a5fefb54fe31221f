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

#include <algorithm>
#include <random>
#include <set>

#include "noonforge/io.hpp"
#include "noonforge/modes.hpp"
#include "test_support.hpp"

using namespace noonforge;

namespace {

std::vector<Mode> modes(std::initializer_list<const char*> names) {
  std::vector<Mode> out;
  for (const char* n : names) out.push_back(parse_mode(n));
  return out;
}

Subspace subspace_one() {
  const auto m = modes({"L:d:-1", "R:d:+1", "L:a:+1", "R:a:-1"});
  return build_subspace("I", 1525.1, 4, m, m, testing::published_m1());
}

Subspace subspace_two() {
  return build_subspace("II", 1523.3, 8, modes({"L:d:-2", "R:d:0", "L:a:0", "R:a:-2"}),
                        modes({"R:d:+2", "L:d:0", "R:a:0", "L:a:+2"}), testing::published_m2());
}

Subspace subspace_three() {
  return build_subspace("III", 1519.1, 8, modes({"L:d:-3", "R:d:-1", "L:a:-1", "R:a:-3"}),
                        modes({"R:d:+3", "L:d:+1", "R:a:+1", "L:a:+3"}), std::nullopt);
}

}  // namespace

TEST_CASE("mode strings", "[modes]") {
  const Mode m = parse_mode("L:d:-2");
  CHECK(m.polarization == Polarization::L);
  CHECK(m.side == Side::Glass);
  CHECK(m.diffraction_order == -2);
  CHECK(to_string(m) == "L:d:-2");
  CHECK(parse_mode("R:a:+2") == parse_mode("R:air:2"));
  CHECK(to_string(parse_mode("R:glass:0")) == "R:d:0");
  for (const char* bad : {"", "L:d", "X:d:1", "L:x:1", "L:d:1.5", "L:d:", "L:d:1:2"}) {
    CHECK_THROWS_AS(parse_mode(bad), ParseError);
  }
}

TEST_CASE("build_subspace accepts the published subspaces", "[modes]") {
  const auto one = subspace_one();
  CHECK(one.dimension == 4);
  CHECK(one.executable());
  const auto two = subspace_two();
  CHECK(two.dimension == 8);
  CHECK(two.executable());
  const auto three = subspace_three();
  CHECK_FALSE(three.executable());
}

TEST_CASE("build_subspace rejects inconsistent declarations", "[modes]") {
  const auto in = modes({"L:d:-2", "R:d:0", "L:a:0", "R:a:-2"});
  const auto out = modes({"R:d:+2", "L:d:0", "R:a:0", "L:a:+2"});
  CHECK_THROWS_AS(build_subspace("x", 1500, 4, in, out, std::nullopt), SubspaceError);
  CHECK_THROWS_AS(build_subspace("x", 1500, 8, in, in, std::nullopt), SubspaceError);
  auto partial = out;
  partial[0] = in[0];
  CHECK_THROWS_AS(build_subspace("x", 1500, 8, in, partial, std::nullopt), SubspaceError);
  auto dup = in;
  dup[3] = dup[0];
  CHECK_THROWS_AS(build_subspace("x", 1500, 8, dup, out, std::nullopt), SubspaceError);
  CHECK_THROWS_AS(build_subspace("x", 1500, 6, in, out, std::nullopt), SubspaceError);
  CHECK_THROWS_AS(build_subspace("x", -1, 8, in, out, std::nullopt), SubspaceError);
  CHECK_THROWS_AS(build_subspace("x", 1500, 8, {in[0], in[1], in[2]}, out, std::nullopt),
                  SubspaceError);
  CHECK_THROWS_AS(build_subspace("x", 1500, 8, in, out, ComplexMatrix::identity(3)), ShapeError);
}

TEST_CASE("port_of follows declaration order", "[modes]") {
  const auto two = subspace_two();
  CHECK(port_of(two, parse_mode("L:a:0"), Direction::Input) == 2);
  CHECK(port_of(two, parse_mode("R:a:0"), Direction::Output) == 2);
  CHECK_THROWS_AS(port_of(two, parse_mode("R:a:0"), Direction::Input), ModeNotFoundError);
  CHECK_THROWS_AS(port_of(subspace_one(), parse_mode("L:d:0"), Direction::Input), ModeNotFoundError);

  for (const auto& s : {subspace_one(), two, subspace_three()}) {
    for (auto dir : {Direction::Input, Direction::Output}) {
      const auto& list = dir == Direction::Input ? s.input_modes : s.output_modes;
      std::set<int> ports;
      for (std::size_t i = 0; i < list.size(); ++i) {
        const int p = port_of(s, list[i], dir);
        CHECK(p == static_cast<int>(i));
        ports.insert(p);
      }
      CHECK(ports == std::set<int>{0, 1, 2, 3});
    }
  }
}

TEST_CASE("check_independence", "[modes]") {
  CHECK(check_independence({}).empty());
  CHECK(check_independence({subspace_one(), subspace_two(), subspace_three()}).empty());

  // A second subspace at 1523.3 nm reusing |L>d_0.
  const auto clash = build_subspace("clash", 1523.305, 8,
                                    modes({"L:d:0", "R:d:2", "L:a:2", "R:a:0"}),
                                    modes({"R:d:4", "L:d:-4", "R:a:-2", "L:a:4"}), std::nullopt);
  const auto conflicts = check_independence({subspace_one(), subspace_two(), clash});
  REQUIRE(conflicts.size() == 1);
  CHECK(conflicts[0].first == 1);
  CHECK(conflicts[0].second == 2);
  CHECK(std::find(conflicts[0].shared_modes.begin(), conflicts[0].shared_modes.end(),
                  parse_mode("L:d:0")) != conflicts[0].shared_modes.end());

  // Same modes at a different wavelength do not couple.
  auto shifted = subspace_two();
  shifted.wavelength_nm += 0.5;
  CHECK(check_independence({subspace_two(), shifted}).empty());
}

TEST_CASE("check_independence is order-symmetric without self-conflicts", "[modes]") {
  const auto in = modes({"L:d:0", "R:d:2", "L:a:2", "R:a:0"});
  const auto out = modes({"R:d:4", "L:d:-4", "R:a:-2", "L:a:4"});
  std::vector<Subspace> reg = {subspace_one(), subspace_two(), subspace_three(),
                               build_subspace("a", 1523.3, 8, in, out, std::nullopt),
                               build_subspace("b", 1525.1, 4, modes({"L:d:-1", "R:d:3", "L:a:3", "R:a:-1"}),
                                              modes({"L:d:-1", "R:d:3", "L:a:3", "R:a:-1"}), std::nullopt)};
  auto pairs_of = [](const std::vector<Subspace>& r) {
    std::set<std::pair<std::string, std::string>> s;
    for (const auto& c : check_independence(r)) {
      REQUIRE(c.first < c.second);
      auto a = r[c.first].label;
      auto b = r[c.second].label;
      if (b < a) std::swap(a, b);
      s.emplace(a, b);
    }
    return s;
  };
  const auto reference = pairs_of(reg);
  CHECK(reference.size() == 2);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 10; ++k) {
    std::shuffle(reg.begin(), reg.end(), rng);
    CHECK(pairs_of(reg) == reference);
  }
}

TEST_CASE("subspace declaration files", "[modes]") {
  const auto two = read_subspace_file(testing::data_path("subspace_ii.json"));
  CHECK(two.label == "II");
  CHECK(two.dimension == 8);
  CHECK(two.wavelength_nm == 1523.3);
  REQUIRE(two.executable());
  CHECK(testing::max_abs_diff(two.matrix->data(), testing::published_m2().data()) == 0.0);
  CHECK(port_of(two, parse_mode("L:a:0"), Direction::Input) == 2);

  const auto one = read_subspace_file(testing::data_path("subspace_i.json"));
  CHECK(one.dimension == 4);
  const auto three = read_subspace_file(testing::data_path("subspace_iii.json"));
  CHECK_FALSE(three.executable());
  CHECK(check_independence({one, two, three}).empty());
}
