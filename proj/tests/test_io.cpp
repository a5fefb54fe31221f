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

#include <filesystem>
#include <random>

#include "noonforge/io.hpp"
#include "noonforge/noon.hpp"
#include "test_support.hpp"

using namespace noonforge;

namespace {

// Transcription of the measured matrices, row-major "mag@phase".
const std::vector<std::string> kM1 = {
    "0.57@-74", "0.45@-51", "0.49@-92",   "0.48@82",  "0.45@-51", "0.57@-74",
    "0.48@82",  "0.49@-92", "0.50@-92",   "0.48@81",  "0.41@-126", "0.59@-106",
    "0.48@81",  "0.50@-92", "0.59@-106",  "0.41@-126"};
const std::vector<std::string> kM2 = {
    "0.44@-27", "0.57@-64", "0.48@91",  "0.50@-44",  "0.57@-63", "0.45@-60",
    "0.49@-96", "0.48@113", "0.48@92",  "0.49@-96",  "0.59@-115", "0.42@-95",
    "0.50@-44", "0.48@111", "0.41@-96", "0.59@-41"};

std::vector<std::string> literals(const MatrixDocument& doc) {
  std::vector<std::string> out;
  for (const auto& e : doc.entries) out.push_back(e.mag.text + "@" + e.phase_deg.text);
  return out;
}

}  // namespace

TEST_CASE("bundled matrices match the transcription", "[io]") {
  const auto m1 = read_matrix_file(testing::data_path("m1.json"));
  const auto m2 = read_matrix_file(testing::data_path("m2.json"));
  CHECK(literals(m1) == kM1);
  CHECK(literals(m2) == kM2);
  CHECK(m1.wavelength_nm->text == "1525.1");
  CHECK(m2.wavelength_nm->text == "1523.3");
  CHECK(m1.subspace == "I");
  CHECK(m2.subspace == "II");
  CHECK(m2.matrix()(2, 0) == std::polar(0.48, deg_to_rad(92.0)));
}

TEST_CASE("matrix files round-trip byte for byte", "[io]") {
  for (const char* name : {"m1.json", "m2.json", "identity4.json", "bs50.json"}) {
    INFO(name);
    const std::string text = detail::read_text(testing::data_path(name));
    CHECK(write_matrix_document(parse_matrix_document(text)) == text);
  }
}

TEST_CASE("from_matrix round-trips doubles exactly", "[io]") {
  std::mt19937_64 rng(2);
  const auto u = testing::haar_unitary(4, rng);
  const auto doc = MatrixDocument::from_matrix(u, "haar");
  const auto back = parse_matrix_document(write_matrix_document(doc));
  const auto grid = to_polar(u);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const auto& e = back.entries[static_cast<std::size_t>(r * 4 + c)];
      REQUIRE(e.mag.value == grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].magnitude);
      REQUIRE(e.phase_deg.value ==
              grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].phase_deg);
    }
  }
  CHECK(back.label == "haar");

  const auto path = std::filesystem::temp_directory_path() / "noonforge_io_roundtrip.json";
  write_matrix_file(path, doc);
  CHECK(write_matrix_document(read_matrix_file(path)) == write_matrix_document(doc));
  std::filesystem::remove(path);

  CHECK(Decimal::from_double(-0.0).text == "0");
  CHECK(Decimal::from_double(0.1).text == "0.1");
}

TEST_CASE("malformed matrix documents", "[io]") {
  const char* bad[] = {
      "",
      "[]",
      "{\"dim\": 2}",
      "{\"dim\": 2, \"entries\": []}",
      "{\"dim\": 1, \"entries\": [{\"mag\": 1, \"phase_deg\": 0}]}",
      "{\"dim\": 2.5, \"entries\": []}",
      "{\"dim\": 2, \"entries\": [{\"mag\": 1}, {\"mag\": 0, \"phase_deg\": 0}, "
      "{\"mag\": 0, \"phase_deg\": 0}, {\"mag\": 1, \"phase_deg\": 0}]}",
      "{\"dim\": 2, \"entries\": [{\"mag\": -1, \"phase_deg\": 0}, {\"mag\": 0, \"phase_deg\": 0}, "
      "{\"mag\": 0, \"phase_deg\": 0}, {\"mag\": 1, \"phase_deg\": 0}]}",
      "{\"dim\": 2, \"entries\": [{\"mag\": \"1\", \"phase_deg\": 0}, {\"mag\": 0, \"phase_deg\": 0}, "
      "{\"mag\": 0, \"phase_deg\": 0}, {\"mag\": 1, \"phase_deg\": 0}]}",
      "{\"dim\": 2, \"entries\": [",
  };
  for (const char* text : bad) {
    INFO(text);
    CHECK_THROWS_AS(parse_matrix_document(text), ParseError);
  }
  CHECK_THROWS_AS(read_matrix_file("/nonexistent/noonforge.json"), InputError);
  CHECK_THROWS_AS(Decimal::parse("1e999"), ParseError);
  CHECK_THROWS_AS(Decimal::parse("1.5x"), ParseError);
}

TEST_CASE("to_spec reads back through state_from_spec", "[io]") {
  CHECK(to_spec(state_from_spec("0,0,1,1")) == "0,0,1,1");
  const auto s = state_from_spec("0.6*|2,0> + 0.8@90*|0,2>");
  const auto back = state_from_spec(to_spec(s));
  CHECK(testing::max_abs_diff(back.amplitudes(), s.amplitudes()) < 1e-6);
}

TEST_CASE("JSON output is deterministic", "[io]") {
  const auto u = unitarize(testing::published_m2());
  const auto a = evolve_state(u, state_from_spec("0,1,1,1"));
  const auto b = evolve_state(u, state_from_spec("0,1,1,1"));
  CHECK(to_json(a).dump(2) == to_json(b).dump(2));
  CHECK(to_json(extract_noon(a, 3)).dump() == to_json(extract_noon(b, 3)).dump());

  const auto j = to_json(extract_noon(a, 3));
  CHECK(j["photons"] == 3);
  CHECK(j["components"].size() == 4);
  CHECK(j["components"][0]["state"] == "|3,0,0,0>");
  CHECK(j["success_probability"] == 0.3557);
  CHECK(j["fidelity"] == 0.9901);

  const auto t = to_json(a);
  CHECK(t["basis"]["photons"] == 3);
  CHECK(t["amplitudes"].size() == 20);
  CHECK(t["input"] == "0,1,1,1");
}
