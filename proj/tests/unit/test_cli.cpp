// Copyright 2026 The lexnet Authors
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

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "lexnet/cli/app.hpp"
#include "lexnet/cli/config.hpp"
#include "lexnet/cli/manifest.hpp"
#include "lexnet/io.hpp"

using namespace lexnet;
using namespace lexnet::cli;
using lexnet::testing::TempDir;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines_of(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Small synthetic fixture plus its generated config.
std::filesystem::path make_fixture(const TempDir& dir) {
  const auto r = invoke({"synth", "-o", dir.path().string(), "--set", "synth.n_authors=240", "--set",
                      "synth.tokens_per_author=120", "--set", "synth.vocab_size=600", "--set",
                      "synth.marker_strength=3", "--set", "synth.marker_rate=0.004", "--set",
                      "synth.markers_per_gender=10", "--set", "synth.rho=0.7", "--set",
                      "synth.coupling_link=true", "--set", "corpus.english_min_overlap=20", "--set",
                      "classifier.folds=5", "--set", "clustering.K=3", "--set", "clustering.restarts=2",
                      "--set", "clustering.min_size=10", "--set", "curve.budgets=0,50",
                      "--set", "features.vocab_size=800", "--set", "homophily.bins=5"});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  return dir.path() / "synth" / "lexnet.ini";
}

}  // namespace

TEST_CASE("sha256 matches the published test vectors") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  TempDir dir("sha");
  CHECK(sha256_file(dir.write("f", "abc")) == sha256_hex("abc"));
}

TEST_CASE("config files resolve relative paths and reject unknown keys") {
  TempDir dir("cfg");
  const auto p = dir.write("a.ini",
                           "[paths]\nmessages = data/m.jsonl\noutput_dir = /abs/out\n"
                           "[markers]\nalpha = 0.01\n[classifier]\nlambda_grid = 0.5, 2\n");
  const auto cfg = load_config(p);
  CHECK(cfg.paths.messages == (dir.path() / "data/m.jsonl").lexically_normal());
  CHECK(cfg.paths.output_dir == "/abs/out");
  CHECK(cfg.markers.alpha == 0.01);
  CHECK(cfg.classifier.lambda_grid == std::vector<double>{0.5, 2.0});

  const auto bad = dir.write("b.ini", "[markers]\nalhpa = 0.01\n");
  try {
    load_config(bad);
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "markers.alhpa");
  }
  RunConfig c;
  CHECK_THROWS_AS(set_config_value(c, "clustering.K", "many"), ConfigError);
  CHECK_THROWS_AS(set_config_value(c, "synth.coupling_link", "maybe"), ConfigError);
}

TEST_CASE("validation names the offending field") {
  auto field_of = [](RunConfig cfg) -> std::string {
    try {
      cfg.validate();
    } catch (const ConfigError& e) {
      return e.field();
    }
    return "";
  };
  RunConfig cfg;
  CHECK(field_of(cfg).empty());
  cfg.markers.alpha = 2;
  CHECK(field_of(cfg) == "markers.alpha");
  cfg = {};
  cfg.folds = 2;
  CHECK(field_of(cfg) == "classifier.folds");
  cfg = {};
  cfg.synth.rho = -0.1;
  CHECK(field_of(cfg) == "synth.rho");
  cfg = {};
  cfg.budgets = {10, 0};
  CHECK(field_of(cfg) == "curve.budgets");
}

TEST_CASE("canonical dump round-trips through a config file") {
  RunConfig cfg;
  set_config_value(cfg, "clustering.lambda_beta", "0.25");
  set_config_value(cfg, "curve.budgets", "0,10,20");
  set_config_value(cfg, "homophily.bin_mode", "equal_width");
  set_config_value(cfg, "paths.output_dir", "/tmp/x");
  TempDir dir("dump");
  std::string ini, section;
  std::istringstream in(canonical_dump(cfg));
  for (std::string line; std::getline(in, line);) {
    const auto s = line.substr(0, line.find('.'));
    if (s != section) ini += "[" + (section = s) + "]\n";
    ini += line.substr(line.find('.') + 1) + "\n";
  }
  const auto loaded = load_config(dir.write("c.ini", ini));
  CHECK(canonical_dump(loaded) == canonical_dump(cfg));
}

TEST_CASE("usage errors exit with 2, config errors with 1") {
  CHECK(invoke({"frobnicate"}).code == kExitUsage);
  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"--help"}).code == kExitOk);
  const auto bad = invoke({"classify", "--set", "markers.alpha=7"});
  CHECK(bad.code == kExitFailure);
  CHECK(bad.err.find("markers.alpha") != std::string::npos);
  const auto missing = invoke({"classify", "--set", "paths.messages=/nonexistent/m.jsonl", "--set",
                            "paths.names=/nonexistent/n.csv"});
  CHECK(missing.code == kExitFailure);
  CHECK(missing.err.find("paths.messages") != std::string::npos);
  const auto no_eq = invoke({"all", "--set", "markers.alpha"});
  CHECK(no_eq.code == kExitFailure);
}

TEST_CASE("commands write their artifacts and a manifest") {
  TempDir dir("cli");
  const auto ini = make_fixture(dir);
  const auto out = dir.path() / "run";

  auto r = invoke({"classify", "-c", ini.string(), "-o", out.string()});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(std::filesystem::exists(out / "cv_report.csv"));
  CHECK(std::filesystem::exists(out / "model.json"));
  const auto m = Manifest::read(out / "manifest.json");
  CHECK(m.command == "classify");
  CHECK(m.artifacts.contains("cv_report.csv"));
  CHECK(m.artifacts.at("model.json") == sha256_file(out / "model.json"));
  CHECK(m.inputs.size() == 2);

  r = invoke({"homophily", "-c", ini.string(), "-o", out.string()});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const auto rows = lines_of(out / "correlations.csv");
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "measure,gender,r,n,ci_low,ci_high,level");
  CHECK(rows[1].rfind("classifier,female,", 0) == 0);
  CHECK(rows[2].rfind("classifier,male,", 0) == 0);
  CHECK(rows[3].rfind("markers,female,", 0) == 0);
  CHECK(rows[4].rfind("markers,male,", 0) == 0);
}

TEST_CASE("the output directory comes from the environment unless given on the command line") {
  TempDir dir("env");
  const auto ini = make_fixture(dir);
  const auto env_dir = dir.path() / "from-env";
  ::setenv("LEXNET_OUTPUT_DIR", env_dir.c_str(), 1);
  const auto r = invoke({"markers", "-c", ini.string()});
  ::unsetenv("LEXNET_OUTPUT_DIR");
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(std::filesystem::exists(env_dir / "markers.csv"));
}

TEST_CASE("reruns produce identical artifacts") {
  TempDir dir("rerun");
  const auto ini = make_fixture(dir);
  const auto a = dir.path() / "a", b = dir.path() / "b";
  REQUIRE(invoke({"all", "-c", ini.string(), "-o", a.string()}).code == 0);
  REQUIRE(invoke({"all", "-c", ini.string(), "-o", b.string()}).code == 0);
  const auto ma = Manifest::read(a / "manifest.json");
  const auto mb = Manifest::read(b / "manifest.json");
  CHECK(ma.artifacts.size() >= 20);
  CHECK(ma.artifacts == mb.artifacts);
  CHECK(ma.config_hash != mb.config_hash);  // output_dir differs
}
