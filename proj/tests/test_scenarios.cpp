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

#include <algorithm>

#include "ctxval/scenarios.hpp"
#include "ctxval/serialize.hpp"

using namespace ctxval;

TEST_CASE("the stability table matches is_stable exhaustively") {
  const PeresFixture fx = peres_contexts();
  const auto table = fx.stability_table();
  REQUIRE(table.size() == fx.observables.size());
  for (const auto& [obs_name, obs] : fx.observables) {
    const auto row = std::find_if(table.begin(), table.end(),
                                  [&](const auto& r) { return r.first == obs_name; });
    REQUIRE(row != table.end());
    for (const auto& [ctx_name, ctx] : fx.contexts) {
      const bool expect = std::find(row->second.begin(), row->second.end(),
                                    ctx_name) != row->second.end();
      INFO(obs_name << " in " << ctx_name);
      CHECK(is_stable(obs, ctx) == expect);
    }
  }
}

TEST_CASE("the two product observables multiply to the z-product") {
  const PeresFixture fx = peres_contexts();
  const CMatrix prod = kron(sigma_x(), sigma_y()) * kron(sigma_y(), sigma_x());
  CHECK(max_abs_diff(prod, kron(sigma_z(), sigma_z())) <= 1e-12);
}

TEST_CASE("run_peres establishes every per-sample statement") {
  ScenarioConfig cfg;
  cfg.n_samples = 2000;
  cfg.seed = 1;
  const PeresReport r = run_peres(cfg);

  CHECK(r.product_value == -1);
  CHECK(r.noncontextual_product == 1);
  CHECK(r.contradiction_verified);
  CHECK(r.acrl_ok);
  CHECK(r.dual_path_checked);
  CHECK(r.dual_path_ok);
  CHECK(r.flips_x + r.flips_y == cfg.n_samples);
  CHECK(r.hysteresis_flags.size() == cfg.n_samples);

  REQUIRE(r.per_history_values.size() == 6);
  CHECK(r.per_history_values[0].first == "ξ");
  for (int v : r.per_history_values[0].second) CHECK(v == -1);
  for (const auto& [label, values] : r.per_history_values) {
    for (int v : values) CHECK((v == 1 || v == -1));
  }
}

TEST_CASE("run_peres invariants hold across seeds and radii") {
  for (const double eps : {0.06, 0.3, 0.69}) {
    for (const std::uint64_t seed : {2ULL, 3ULL}) {
      ScenarioConfig cfg;
      cfg.epsilon = eps;
      cfg.seed = seed;
      cfg.n_samples = 500;
      const PeresReport r = run_peres(cfg);
      CHECK(r.product_value == -1);
      CHECK(r.contradiction_verified);
      CHECK(r.flips_x + r.flips_y == cfg.n_samples);
    }
  }
}

TEST_CASE("run_remark is route consistent") {
  ScenarioConfig cfg;
  cfg.n_samples = 2000;
  const RemarkReport r = run_remark(cfg);
  CHECK(r.matrices_match);
  CHECK(r.stable_in_both);
  CHECK(r.route_consistent);
  CHECK(r.max_route_dev <= 1e-12);
}

TEST_CASE("run_born on the singlet in the z-product context") {
  const PeresFixture fx = peres_contexts();
  ScenarioConfig cfg;
  cfg.n_samples = 5000;
  const BornReport r = run_born(fx.singlet, {fx.gamma.frame()},
                                kron(sigma_z(), sigma_z()), cfg);
  CHECK(r.exact_ok);
  CHECK(r.mc_ok);
  CHECK(r.exact_expectation == Catch::Approx(-1.0).margin(1e-12));
  CHECK(r.quantum_expectation == Catch::Approx(-1.0).margin(1e-12));
}

TEST_CASE("randomized verification suites run clean") {
  CHECK(run_gfunc_suite(25, 17).ok());
  CHECK(run_ntrns_suite(25, 18).ok());
  CHECK(run_symplectic_suite(25, 19).ok());
  const SuiteReport born = run_born_suite(25, 20, 2000);
  CHECK(born.ok());
  CHECK(born.max_residual <= 1e-9);
  CHECK(run_dualpath_suite(25, 21).ok());
}

TEST_CASE("peres reports serialize deterministically") {
  ScenarioConfig cfg;
  cfg.n_samples = 300;
  cfg.seed = 7;
  const std::string a = to_json(run_peres(cfg));
  const std::string b = to_json(run_peres(cfg));
  CHECK(a == b);
}
