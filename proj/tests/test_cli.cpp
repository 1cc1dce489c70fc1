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

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "ctxval/scenarios.hpp"
#include "ctxval/serialize.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

std::string cli_path() {
  const char* env = std::getenv("CTXVAL_CLI");
  REQUIRE(env != nullptr);
  return env;
}

RunResult run_cli(const std::string& args) {
  const std::string cmd = "\"" + cli_path() + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    result.output.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path write_doc(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::path("cli_test_docs");
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("peres subcommand emits a deterministic JSON report") {
  const RunResult a = run_cli("peres --samples 400 --seed 7 --format json");
  CHECK(a.exit_code == 0);
  CHECK(a.output.find("\"product_value\": -1") != std::string::npos);
  CHECK(a.output.find("\"contradiction_verified\": true") != std::string::npos);

  const RunResult b = run_cli("peres --samples 400 --seed 7 --format json");
  CHECK(a.output == b.output);

  const RunResult c = run_cli("peres --samples 400 --seed 8 --format json");
  CHECK(a.output != c.output);
}

TEST_CASE("remark subcommand passes") {
  const RunResult r = run_cli("remark --samples 500 --format table");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("route-consistent per sample   yes") != std::string::npos);
}

TEST_CASE("partitions subcommand prints the fixture blocks") {
  const ctxval::RemarkFixture fx = ctxval::remark_fixture();
  const auto a = write_doc("frame_b.json", ctxval::to_json(fx.b_context.frame()));
  const auto b = write_doc("frame_c.json", ctxval::to_json(fx.c_context.frame()));
  const RunResult r =
      run_cli("partitions --frame-a " + a.string() + " --frame-b " + b.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("{{1,2},{3}}") != std::string::npos);

  const RunResult same =
      run_cli("partitions --frame-a " + a.string() + " --frame-b " + a.string());
  CHECK(same.exit_code == 2);
}

TEST_CASE("born subcommand checks the singlet expectation end to end") {
  const ctxval::PeresFixture fx = ctxval::peres_contexts();
  const auto state = write_doc("singlet.json", ctxval::to_json(fx.singlet));
  const auto history = write_doc(
      "history.json", "{\"contexts\": [" + ctxval::to_json(fx.gamma.frame()) + "]}");
  const auto zz = write_doc("zz.json",
                            ctxval::to_json(kron(ctxval::sigma_z(), ctxval::sigma_z())));
  const auto dump = std::filesystem::path("cli_test_docs") / "ensemble_dump.json";

  const RunResult r = run_cli("born --state " + state.string() + " --history " +
                              history.string() + " --observable " + zz.string() +
                              " --samples 2000 --format json --dump " + dump.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"exact_ok\": true") != std::string::npos);
  CHECK(r.output.find("\"mc_ok\": true") != std::string::npos);
  CHECK(std::filesystem::exists(dump));

  // An observable that is not stable in the final context is an input error.
  const auto xx = write_doc("xx.json",
                            ctxval::to_json(kron(ctxval::sigma_x(), ctxval::sigma_x())));
  const RunResult bad = run_cli("born --state " + state.string() + " --history " +
                                history.string() + " --observable " + xx.string() +
                                " --samples 100");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("check subcommand runs the verification suites") {
  const RunResult r = run_cli("check --suite gfunc --trials 5 --seed 3 --format json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"violations\": 0") != std::string::npos);
  const RunResult s = run_cli("check --suite symplectic --trials 5");
  CHECK(s.exit_code == 0);
}

TEST_CASE("--out writes the report to a file instead of stdout") {
  const auto path = std::filesystem::path("cli_test_docs") / "peres_out.json";
  std::filesystem::create_directories(path.parent_path());
  const RunResult r =
      run_cli("peres --samples 200 --format json --out " + path.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.empty());
  REQUIRE(std::filesystem::exists(path));
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(text.find("\"product_value\": -1") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("no-such-subcommand").exit_code == 2);
  CHECK(run_cli("born --state missing.json").exit_code == 2);
  CHECK(run_cli("check --suite bogus").exit_code == 2);
  CHECK(run_cli("peres --epsilon 0.9 --samples 10").exit_code == 2);
}
