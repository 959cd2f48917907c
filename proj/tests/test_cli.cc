// tests/test_cli.cc

// Copyright 2026  The TCS Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Shell-level tests of the CLI binary: exit codes, stdout contracts,
// and byte determinism. TCS_CLI_PATH is injected by the build.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "tcs/matrix.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "tcs_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  const std::string cmd = std::string(TCS_CLI_PATH) + " " + args + " > " + out.string() +
                          " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

// A,~,+ alphabet and a 2-frame uniform score file: the TCS 'A' fixture.
fs::path fixture_alphabet() {
  const fs::path path = work_dir() / "alphabet.json";
  write_file(path,
             R"({"names": ["A", "~", "+"], "blank": null, "background": 1, "foreground": 2})");
  return path;
}

fs::path fixture_logits(int rows) {
  const fs::path path = work_dir() / ("logits_" + std::to_string(rows) + ".csv");
  std::string text;
  for (int t = 0; t < rows; ++t) text += "0,0,0\n";
  write_file(path, text);
  return path;
}

}  // namespace

TEST_CASE("loss reports the fixture NLL and verifies against enumeration") {
  const std::string base = "loss --logits " + fixture_logits(2).string() + " --labels A " +
                           "--alphabet " + fixture_alphabet().string() + " --topology tcs";

  RunResult r = run(base);
  REQUIRE(r.exit_code == 0);
  const json out = json::parse(r.out);
  CHECK(out.at("nll").get<double>() == doctest::Approx(std::log(9.0)).epsilon(1e-9));
  CHECK(out.contains("cross_entropy"));

  r = run(base + " --verify");
  REQUIRE(r.exit_code == 0);
  const json verified = json::parse(r.out);
  CHECK(verified.at("abs_diff").get<double>() < 1e-9);
  CHECK(verified.at("oracle_nll").get<double>() ==
        doctest::Approx(std::log(9.0)).epsilon(1e-9));
}

TEST_CASE("loss writes the gradient CSV on request") {
  const fs::path grad_path = work_dir() / "grad.csv";
  const RunResult r =
      run("loss --logits " + fixture_logits(2).string() + " --labels A --alphabet " +
          fixture_alphabet().string() + " --topology tcs --grad " + grad_path.string());
  REQUIRE(r.exit_code == 0);

  const tcs::Matrix grad = tcs::read_csv_matrix(grad_path);
  REQUIRE(grad.rows() == 2);
  REQUIRE(grad.cols() == 3);
  CHECK(grad(0, 2) == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));  // foreground target 1
  CHECK(grad(1, 0) == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));  // 'A' target 1
}

TEST_CASE("loss exit codes: infeasible labels and parse errors") {
  const RunResult infeasible =
      run("loss --logits " + fixture_logits(1).string() + " --labels A --alphabet " +
          fixture_alphabet().string() + " --topology tcs");
  CHECK(infeasible.exit_code == 3);
  CHECK(infeasible.err.find("min_frames") != std::string::npos);

  const fs::path bad_csv = work_dir() / "bad.csv";
  write_file(bad_csv, "0,zero,0\n");
  const RunResult parse = run("loss --logits " + bad_csv.string() + " --labels A --alphabet " +
                              fixture_alphabet().string() + " --topology tcs");
  CHECK(parse.exit_code == 2);

  const RunResult unknown =
      run("loss --logits " + fixture_logits(2).string() + " --labels Z --alphabet " +
          fixture_alphabet().string() + " --topology tcs");
  CHECK(unknown.exit_code == 2);
}

TEST_CASE("align emits tiling segments and honors --speech-span") {
  const std::string base = "align --logits " + fixture_logits(2).string() + " --labels A " +
                           "--alphabet " + fixture_alphabet().string() + " --topology tcs";
  RunResult r = run(base);
  REQUIRE(r.exit_code == 0);
  json segments = json::parse(r.out);
  REQUIRE(segments.size() == 2);
  CHECK(segments[0].at("label") == "+");
  CHECK(segments[0].at("start") == 0);
  CHECK(segments[0].at("end") == 0);
  CHECK(segments[1].at("label") == "A");
  CHECK(segments[1].at("role") == "character");
  CHECK(segments[1].at("end") == 1);

  r = run(base + " --speech-span");
  REQUIRE(r.exit_code == 0);
  segments = json::parse(r.out);
  REQUIRE(segments.size() == 1);
  CHECK(segments[0].at("label") == "A");
  CHECK(segments[0].at("start") == 0);
  CHECK(segments[0].at("end") == 1);

  const RunResult infeasible =
      run("align --logits " + fixture_logits(1).string() + " --labels A --alphabet " +
          fixture_alphabet().string() + " --topology tcs");
  CHECK(infeasible.exit_code == 3);
}

TEST_CASE("decode reports greedy labels") {
  // Frames argmaxed to ~ ~ + A ~ decode to 'A'.
  const fs::path scores = work_dir() / "decode.csv";
  write_file(scores, "0,5,0\n0,5,0\n0,0,5\n5,0,0\n0,5,0\n");
  RunResult r = run("decode --logits " + scores.string() + " --alphabet " +
                    fixture_alphabet().string() + " --topology tcs");
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.out) == json{{"labels", {"A"}}});

  // All background decodes to the empty list.
  r = run("decode --logits " + fixture_logits(3).string() + " --alphabet " +
          fixture_alphabet().string() + " --topology tcs");
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.out) == json{{"labels", json::array()}});

  const RunResult parse = run("decode --logits /nonexistent.csv --alphabet " +
                              fixture_alphabet().string() + " --topology tcs");
  CHECK(parse.exit_code == 2);
}

TEST_CASE("synth datasets are byte-identical per seed") {
  const fs::path config_path = work_dir() / "synth_config.json";
  write_file(config_path, R"({"n_classes": 3, "feature_dim": 4, "noise_sigma": 0.1,
    "char_dur": [3, 5], "gap_dur": [2, 3], "seq_len": [1, 2], "seed": 0})");

  const fs::path dir_a = work_dir() / "data_a";
  const fs::path dir_b = work_dir() / "data_b";
  RunResult r = run("synth --out " + dir_a.string() + " --n 4 --seed 12 --config " +
                    config_path.string());
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.out).at("seed") == 12);
  r = run("synth --out " + dir_b.string() + " --n 4 --seed 12 --config " + config_path.string());
  REQUIRE(r.exit_code == 0);

  for (const auto& entry : fs::directory_iterator(dir_a)) {
    const fs::path other = dir_b / entry.path().filename();
    REQUIRE(fs::exists(other));
    CHECK(slurp(entry.path()) == slurp(other));
  }

  // n=0 leaves an empty manifest.
  const fs::path dir_empty = work_dir() / "data_empty";
  r = run("synth --out " + dir_empty.string() + " --n 0 --seed 1");
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(slurp(dir_empty / "manifest.json")).empty());

  const fs::path bad_config = work_dir() / "bad_config.json";
  write_file(bad_config, R"({"char_dur": [9, 2]})");
  r = run("synth --out " + (work_dir() / "data_bad").string() + " --n 1 --seed 1 --config " +
          bad_config.string());
  CHECK(r.exit_code == 2);
}

TEST_CASE("train then posteriors over a tiny dataset") {
  const fs::path config_path = work_dir() / "train_config.json";
  write_file(config_path, R"({"n_classes": 3, "feature_dim": 5, "noise_sigma": 0.1,
    "char_dur": [4, 7], "gap_dur": [2, 4], "seq_len": [1, 2], "seed": 0})");
  const fs::path data_dir = work_dir() / "train_data";
  RunResult r = run("synth --out " + data_dir.string() + " --n 10 --seed 3 --config " +
                    config_path.string());
  REQUIRE(r.exit_code == 0);

  const fs::path model_path = work_dir() / "model.json";
  r = run("train --data " + data_dir.string() +
          " --topology tcs --epochs 2 --seed 7 --hidden 8 --stack-window 2 --stack-stride 1 " +
          "--holdout 2 --model-out " + model_path.string());
  REQUIRE(r.exit_code == 0);
  const json metrics = json::parse(r.out);
  REQUIRE(metrics.at("epochs").size() == 2);
  CHECK(metrics.at("epochs")[0].contains("mean_nll"));
  CHECK(metrics.at("eval").contains("sequence_accuracy"));
  REQUIRE(fs::exists(model_path));

  // Posteriors: K columns, rows sum to 1, byte-stable.
  const fs::path sample_csv = data_dir / "sample_00000.csv";
  const std::string post_cmd = "posteriors --model " + model_path.string() + " --input " +
                               sample_csv.string() + " --stack-window 2 --stack-stride 1";
  r = run(post_cmd);
  REQUIRE(r.exit_code == 0);
  const std::string first = r.out;
  {
    std::ofstream tmp(work_dir() / "post.csv");
    tmp << first;
  }
  const tcs::Matrix probs = tcs::read_csv_matrix(work_dir() / "post.csv");
  CHECK(probs.cols() == 5);  // 3 characters + background + foreground
  for (int t = 0; t < probs.rows(); ++t) {
    double sum = 0.0;
    for (int k = 0; k < probs.cols(); ++k) sum += probs(t, k);
    CHECK(std::abs(sum - 1.0) < 1e-9);
  }
  r = run(post_cmd);
  CHECK(r.out == first);

  const RunResult missing = run("train --data /nonexistent_dir --topology tcs");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("bad command lines exit 2") {
  CHECK(run("loss").exit_code == 2);                  // missing required flags
  CHECK(run("frobnicate").exit_code == 2);            // unknown subcommand
  CHECK(run("").exit_code == 2);                      // no subcommand
  const RunResult bad_topo =
      run("decode --logits " + fixture_logits(2).string() + " --alphabet " +
          fixture_alphabet().string() + " --topology xyz");
  CHECK(bad_topo.exit_code == 2);
}
