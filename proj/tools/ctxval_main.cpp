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

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ctxval/serialize.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertionFailure = 1;
constexpr int kExitInputError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ctxval::FormatError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ctxval::FormatError("cannot write file: " + out_path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

struct CommonOpts {
  double epsilon = 0.3;
  std::uint64_t seed = 42;
  std::size_t samples = 100000;
  std::string out;
  std::string format = "table";
};

void add_common(CLI::App* cmd, CommonOpts* opts, bool with_samples = true) {
  cmd->add_option("--epsilon", opts->epsilon, "ball radius, in (0, sqrt(2)/2)")
      ->capture_default_str();
  cmd->add_option("--seed", opts->seed, "seed for all randomness")
      ->capture_default_str();
  if (with_samples) {
    cmd->add_option("--samples", opts->samples, "ensemble size")
        ->capture_default_str();
  }
  cmd->add_option("--out", opts->out, "output path (default: stdout)");
  cmd->add_option("--format", opts->format, "report format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
}

bool input_error(const ctxval::Error& e) {
  return dynamic_cast<const ctxval::FormatError*>(&e) != nullptr ||
         dynamic_cast<const ctxval::InvalidConfigError*>(&e) != nullptr ||
         dynamic_cast<const ctxval::DimensionMismatchError*>(&e) != nullptr ||
         dynamic_cast<const ctxval::NotOrthonormalError*>(&e) != nullptr ||
         dynamic_cast<const ctxval::NotHermitianError*>(&e) != nullptr ||
         dynamic_cast<const ctxval::NotStableError*>(&e) != nullptr ||
         dynamic_cast<const ctxval::EquivalentContextsError*>(&e) != nullptr ||
         dynamic_cast<const ctxval::SpanMismatchError*>(&e) != nullptr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"History-dependent contextual value assignments for "
               "finite-dimensional quantum systems"};
  app.require_subcommand(1);

  CommonOpts peres_opts;
  CLI::App* peres = app.add_subcommand(
      "peres", "run the two-qubit product-observable scenario on the singlet");
  add_common(peres, &peres_opts);
  bool peres_skip_dual = false;
  peres->add_flag("--skip-dual-path", peres_skip_dual,
                  "skip the per-sample pullback cross-check");

  CommonOpts remark_opts;
  CLI::App* remark = app.add_subcommand(
      "remark", "run the degenerate three-level f(B) = g(C) consistency check");
  add_common(remark, &remark_opts);

  CommonOpts born_opts;
  born_opts.samples = 10000;
  std::string state_path, history_path, observable_path, dump_path;
  CLI::App* born = app.add_subcommand(
      "born", "compare model expectations with <phi|O|phi> along a history");
  born->add_option("--state", state_path, "state vector document")->required();
  born->add_option("--history", history_path, "context list document")->required();
  born->add_option("--observable", observable_path, "observable matrix document")
      ->required();
  born->add_option("--dump", dump_path, "also write the labeled-ensemble dump here");
  add_common(born, &born_opts);

  CommonOpts part_opts;
  std::string frame_a_path, frame_b_path;
  CLI::App* partitions = app.add_subcommand(
      "partitions", "finest partitions of two frames");
  partitions->add_option("--frame-a", frame_a_path, "first frame document")->required();
  partitions->add_option("--frame-b", frame_b_path, "second frame document")->required();
  partitions->add_option("--out", part_opts.out, "output path (default: stdout)");
  partitions->add_option("--format", part_opts.format, "report format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();

  CommonOpts check_opts;
  std::string suite;
  std::size_t trials = 100;
  CLI::App* check = app.add_subcommand("check", "randomized verification suites");
  check->add_option("--suite", suite, "which suite to run")
      ->check(CLI::IsMember({"gfunc", "ntrns", "symplectic"}))
      ->required();
  check->add_option("--trials", trials, "number of randomized trials")
      ->capture_default_str();
  check->add_option("--seed", check_opts.seed, "seed for all randomness")
      ->capture_default_str();
  check->add_option("--out", check_opts.out, "output path (default: stdout)");
  check->add_option("--format", check_opts.format, "report format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (app.got_subcommand(peres)) {
      ctxval::ScenarioConfig cfg;
      cfg.epsilon = peres_opts.epsilon;
      cfg.seed = peres_opts.seed;
      cfg.n_samples = peres_opts.samples;
      cfg.verify_dual_path = !peres_skip_dual;
      const ctxval::PeresReport report = ctxval::run_peres(cfg);
      emit(peres_opts.format == "json" ? ctxval::to_json(report)
                                       : ctxval::to_table(report),
           peres_opts.out);
      return kExitOk;
    }
    if (app.got_subcommand(remark)) {
      ctxval::ScenarioConfig cfg;
      cfg.epsilon = remark_opts.epsilon;
      cfg.seed = remark_opts.seed;
      cfg.n_samples = remark_opts.samples;
      const ctxval::RemarkReport report = ctxval::run_remark(cfg);
      emit(remark_opts.format == "json" ? ctxval::to_json(report)
                                        : ctxval::to_table(report),
           remark_opts.out);
      return kExitOk;
    }
    if (app.got_subcommand(born)) {
      ctxval::ScenarioConfig cfg;
      cfg.epsilon = born_opts.epsilon;
      cfg.seed = born_opts.seed;
      cfg.n_samples = born_opts.samples;
      const ctxval::CVector state = ctxval::state_from_json(read_file(state_path));
      const std::vector<ctxval::Frame> frames =
          ctxval::history_from_json(read_file(history_path));
      const ctxval::CMatrix obs =
          ctxval::matrix_from_json(read_file(observable_path));
      const ctxval::LabeledEnsemble le = ctxval::born_ensemble(state, frames, cfg);
      const ctxval::BornReport report = ctxval::run_born(le, obs);
      if (!dump_path.empty()) emit(ctxval::to_json(le), dump_path);
      emit(born_opts.format == "json" ? ctxval::to_json(report)
                                      : ctxval::to_table(report),
           born_opts.out);
      return report.exact_ok && report.mc_ok ? kExitOk : kExitAssertionFailure;
    }
    if (app.got_subcommand(partitions)) {
      const ctxval::Context a(ctxval::frame_from_json(read_file(frame_a_path)));
      const ctxval::Context b(ctxval::frame_from_json(read_file(frame_b_path)));
      const ctxval::PartitionPair pp = ctxval::finest_partitions(a, b);
      emit(part_opts.format == "json" ? ctxval::to_json(pp) : ctxval::to_table(pp),
           part_opts.out);
      return kExitOk;
    }
    if (app.got_subcommand(check)) {
      ctxval::SuiteReport report;
      if (suite == "gfunc") {
        report = ctxval::run_gfunc_suite(trials, check_opts.seed);
      } else if (suite == "ntrns") {
        report = ctxval::run_ntrns_suite(trials, check_opts.seed);
      } else {
        report = ctxval::run_symplectic_suite(trials, check_opts.seed);
      }
      emit(check_opts.format == "json" ? ctxval::to_json(report)
                                       : ctxval::to_table(report),
           check_opts.out);
      return report.ok() ? kExitOk : kExitAssertionFailure;
    }
  } catch (const ctxval::Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return input_error(e) ? kExitInputError : kExitAssertionFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitAssertionFailure;
  }
  return kExitInputError;
}
