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

// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Pass --cli <path> to exercise the installed binary for the
// determinism criterion; without it the check runs in process.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ctxval/scenarios.hpp"
#include "ctxval/serialize.hpp"
#include "support/oracles.hpp"

using namespace ctxval;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%2d] %s  %s (%s)\n", id, pass ? "PASS" : "FAIL", name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

void run(int id, const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    const auto [pass, detail] = body();
    report(id, name, pass, detail);
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

std::string exec_capture(const std::string& cmd, int* exit_code) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    *exit_code = -1;
    return {};
  }
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
  }

  PeresReport first_run;

  // 1. Product value -1 on every sample at N = 1e5, under 5 s.
  run(1, "Peres product = -1 on 100% of 1e5 samples", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    ScenarioConfig cfg;  // seed 42, epsilon 0.3, dual path on
    cfg.n_samples = 100000;
    first_run = run_peres(cfg);  // throws if any per-sample assertion fails
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::size_t checked = 0;
    bool all = first_run.product_value == -1;
    for (int v : first_run.per_history_values[0].second) {
      all = all && v == -1;
      ++checked;
    }
    std::ostringstream d;
    d << checked << " samples, runtime " << secs << " s";
    return std::make_pair(all && checked == 100000 && secs < 5.0, d.str());
  });

  // 2. Noncontextual product +1, flagged contradictory.
  run(2, "noncontextual product +1 contradicts the -1 product", [&] {
    const bool pass =
        first_run.noncontextual_product == 1 && first_run.contradiction_verified;
    return std::make_pair(pass, std::string("noncontextual = +1, contradiction flagged"));
  });

  // 3. Exactly one of the four history factors flips, 1e5 x 10 seeds.
  run(3, "hysteresis: exactly one factor flips per sample", [&] {
    std::size_t checked = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      ScenarioConfig cfg;
      cfg.seed = seed;
      cfg.n_samples = 100000;
      cfg.verify_dual_path = false;  // criterion 10 covers the pullback
      const PeresReport r = run_peres(cfg);  // asserts the flip pattern per sample
      if (r.flips_x + r.flips_y != cfg.n_samples) {
        return std::make_pair(false, std::string("flip counts do not cover samples"));
      }
      checked += cfg.n_samples;
    }
    std::ostringstream d;
    d << checked << " samples across 10 seeds, 0 violations";
    return std::make_pair(true, d.str());
  });

  // 4. Born rule on 200 random triples, n in {2,3,4}, depth <= 5, N = 1e4.
  run(4, "Born reproduction, exact <= 1e-9 and MC within 5 SE", [&] {
    const SuiteReport r = run_born_suite(200, 2026, 10000);
    std::ostringstream d;
    d << r.trials << " trials, max |exact - qm| = " << r.max_residual << ", "
      << r.violations << " violations";
    return std::make_pair(r.ok(), d.str());
  });

  // 5. gFUNC: 100 randomized trials, zero violations.
  run(5, "gFUNC and sum/product homomorphism", [&] {
    const SuiteReport r = run_gfunc_suite(100, 2027);
    std::ostringstream d;
    d << r.trials << " trials, max residual " << r.max_residual << ", "
      << r.violations << " violations";
    return std::make_pair(r.ok(), d.str());
  });

  // 6. n-TRNS: 100 randomized stable extensions, zero violations.
  run(6, "n-TRNS across stable extensions", [&] {
    const SuiteReport r = run_ntrns_suite(100, 2028);
    std::ostringstream d;
    d << r.trials << " trials, max residual " << r.max_residual << ", "
      << r.violations << " violations";
    return std::make_pair(r.ok(), d.str());
  });

  // 7. Finest partitions vs the exhaustive oracle + the three fixtures.
  run(7, "finest partitions match the enumeration oracle", [&] {
    const RemarkFixture rem = remark_fixture();
    const PartitionPair pb = finest_partitions(rem.b_context, rem.c_context);
    bool pass = pb.source_blocks ==
                    std::vector<std::vector<std::size_t>>{{0, 1}, {2}} &&
                pb.target_blocks == pb.source_blocks;

    const PeresFixture fx = peres_contexts();
    const PartitionPair ad = finest_partitions(fx.alpha, fx.delta);
    pass = pass &&
           ad.source_blocks == std::vector<std::vector<std::size_t>>{{0, 2}, {1, 3}} &&
           ad.target_blocks == ad.source_blocks;
    pass = pass && finest_partitions(fx.alpha, fx.gamma).block_count() == 1;

    Rng rng(2029);
    std::size_t agreements = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 2 + trial % 3;
      const Frame a = random_frame(n, rng);
      const Frame b = ctxval_test::next_related_frame(a, rng);
      const auto oracle = ctxval_test::brute_force_finest(a, b);
      if (!oracle) return std::make_pair(false, std::string("oracle saw equivalent pair"));
      const PartitionPair pp = finest_partitions(Context(a), Context(b));
      if (pp.source_blocks != oracle->source_blocks ||
          pp.target_blocks != oracle->target_blocks) {
        return std::make_pair(false, std::string("oracle disagreement at trial ") +
                                         std::to_string(trial));
      }
      ++agreements;
    }
    std::ostringstream d;
    d << "3 fixtures + " << agreements << " random pairs agree";
    return std::make_pair(pass, d.str());
  });

  // 8. History reduction: 100 random histories of depth <= 6.
  run(8, "history reduction onto a base-frame permutation", [&] {
    Rng rng(2030);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 2 + trial % 5;  // up to 6
      const History h = ctxval_test::random_history(n, 1 + rng.below(5), rng);
      const HistoryReduction red = reduce_history(h);
      for (std::size_t i = 0; i < n; ++i) {
        const CVector image = red.composed.apply(h.front().frame()[i]);
        const CVector expect =
            red.direct ? red.direct->unitary.apply(h.front().frame()[red.perm[i]])
                       : h.back().frame()[red.perm[i]];
        worst = std::max(worst, (image - expect).norm());

        // The reverse product must map the last frame onto the base frame.
        CVector back = h.back().frame()[i];
        for (auto it = red.steps.rbegin(); it != red.steps.rend(); ++it) {
          back = it->unitary.adjoint().apply(back);
        }
        worst = std::max(worst,
                         (back - h.front().frame()[red.pullback_perm[i]]).norm());
      }
    }
    std::ostringstream d;
    d << "100 histories, max residual " << worst;
    return std::make_pair(worst <= 1e-8, d.str());
  });

  // 9. Symplectic + volume preservation for 100 random unitaries, n <= 8.
  run(9, "realified unitaries are canonical and volume preserving", [&] {
    const SuiteReport r = run_symplectic_suite(100, 2031);
    std::ostringstream d;
    d << r.trials << " unitaries, max residual " << r.max_residual;
    return std::make_pair(r.ok() && r.max_residual <= 1e-9, d.str());
  });

  // 10. Dual-path equality on all Peres histories + 50 random histories.
  run(10, "label values equal pullback values on every sample", [&] {
    const bool peres_ok = first_run.dual_path_checked && first_run.dual_path_ok;
    const SuiteReport r = run_dualpath_suite(50, 2032);
    std::ostringstream d;
    d << "Peres histories exact, " << r.trials
      << " random histories, max dev " << r.max_residual;
    return std::make_pair(peres_ok && r.ok(), d.str());
  });

  // 11. Byte-identical JSON across repeated runs.
  run(11, "repeated seed-7 runs produce byte-identical JSON", [&] {
    if (!cli.empty()) {
      const std::string cmd =
          "\"" + cli + "\" peres --seed 7 --samples 100000 --format json";
      int code_a = 0, code_b = 0;
      const std::string a = exec_capture(cmd, &code_a);
      const std::string b = exec_capture(cmd, &code_b);
      std::ostringstream d;
      d << "two CLI runs, " << a.size() << " bytes each";
      return std::make_pair(code_a == 0 && code_b == 0 && !a.empty() && a == b,
                            d.str());
    }
    ScenarioConfig cfg;
    cfg.seed = 7;
    cfg.n_samples = 100000;
    const std::string a = to_json(run_peres(cfg));
    const std::string b = to_json(run_peres(cfg));
    return std::make_pair(!a.empty() && a == b,
                          std::string("two in-process runs compared"));
  });

  if (failures == 0) {
    std::printf("acceptance: all 11 criteria passed\n");
  } else {
    std::printf("acceptance: %d criteria FAILED\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
