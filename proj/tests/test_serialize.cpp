// Copyright 2026 The ctxval authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include "ctxval/random.hpp"
#include "ctxval/scenarios.hpp"
#include "ctxval/serialize.hpp"

using namespace ctxval;

TEST_CASE("frames round-trip bit-exactly through JSON") {
  Rng rng(71);
  for (int trial = 0; trial < 5; ++trial) {
    const Frame f = random_frame(2 + trial % 3, rng);
    const Frame g = frame_from_json(to_json(f));
    REQUIRE(g.dim() == f.dim());
    for (std::size_t i = 0; i < f.dim(); ++i) {
      for (std::size_t k = 0; k < f.dim(); ++k) {
        CHECK(g[i][k].real() == f[i][k].real());
        CHECK(g[i][k].imag() == f[i][k].imag());
      }
    }
  }
}

TEST_CASE("states and matrices round-trip") {
  Rng rng(72);
  const CVector v = random_state(4, rng);
  const CVector w = state_from_json(to_json(v));
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(w[i].real() == v[i].real());
    CHECK(w[i].imag() == v[i].imag());
  }

  const CMatrix m = random_hermitian(3, rng);
  const CMatrix m2 = matrix_from_json(to_json(m));
  CHECK(max_abs_diff(m, m2) == 0.0);
}

TEST_CASE("context documents carry the stable id") {
  Rng rng(73);
  const Context c(random_frame(3, rng));
  const Context d = context_from_json(to_json(c));
  CHECK(c.id() == d.id());
}

TEST_CASE("partition documents are 1-based") {
  const RemarkFixture fx = remark_fixture();
  const PartitionPair pp = finest_partitions(fx.b_context, fx.c_context);
  const std::string json = to_json(pp);
  CHECK(json.find("\"blocks_a\": [\n    [\n      1,\n      2\n    ],") !=
        std::string::npos);
  const std::string table = to_table(pp);
  CHECK(table.find("{{1,2},{3}}") != std::string::npos);
}

TEST_CASE("history documents accept both shapes") {
  const RemarkFixture fx = remark_fixture();
  const std::string single = to_json(fx.b_context.frame());
  const std::string as_array = "[" + single + "," + to_json(fx.c_context.frame()) + "]";
  CHECK(history_from_json(as_array).size() == 2);
  const std::string as_object = "{\"contexts\": " + as_array + "}";
  CHECK(history_from_json(as_object).size() == 2);
}

TEST_CASE("malformed documents raise FormatError") {
  CHECK_THROWS_AS(state_from_json("not json"), FormatError);
  CHECK_THROWS_AS(state_from_json("{\"entries\": [[1]]}"), FormatError);
  CHECK_THROWS_AS(matrix_from_json("{\"entries\": [[[1,0]],[[0,1]]]}"), FormatError);
  CHECK_THROWS_AS(frame_from_json("{\"vectors\": []}"), FormatError);
  // Non-orthonormal vectors are rejected at frame construction.
  CHECK_THROWS_AS(
      frame_from_json("{\"vectors\": [[[1,0],[0,0]],[[1,0],[0,0]]]}"), FormatError);
  CHECK_THROWS_AS(history_from_json("{\"contexts\": []}"), FormatError);
}

TEST_CASE("the ensemble dump carries config, history, split and samples") {
  const PeresFixture fx = peres_contexts();
  ModelConfig cfg;
  cfg.state = fx.singlet;
  cfg.base_context = fx.xi;
  cfg.n_samples = 3;
  cfg.seed = 5;
  const LabeledEnsemble le = extend_history(prepare(cfg), fx.gamma);
  const std::string dump = to_json(le);
  CHECK(dump.find("\"history\"") != std::string::npos);
  CHECK(dump.find(fx.xi.id()) != std::string::npos);
  CHECK(dump.find(fx.gamma.id()) != std::string::npos);
  CHECK(dump.find("\"segments\"") != std::string::npos);
  CHECK(dump.find("\"u\"") != std::string::npos);
  CHECK(dump.find("\"e\"") != std::string::npos);
}
