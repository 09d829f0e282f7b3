// Copyright 2026 The Authors.
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

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "subsparse/data_io.hpp"
#include "subsparse/maximize.hpp"
#include "subsparse/objective.hpp"

using namespace subsparse;
using nlohmann::json;

namespace {

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("subsparse_cli_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    std::filesystem::create_directories((path / name).parent_path());
    const std::string p = (path / name).string();
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }
  std::string at(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
  const std::string cmd = std::string(SUBSPARSE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// a=(4,0), b=(0,4), c=(1,1) over two features, padded with a light element.
const char* kExampleMatrix = "4 2\n0 0 4.0\n1 1 4.0\n2 0 1.0\n2 1 1.0\n3 0 0.25\n";

}  // namespace

TEST_CASE("summarize matches the library on the example matrix") {
  TempDir tmp("summarize");
  const std::string matrix = tmp.file("m.txt", kExampleMatrix);
  const std::string out = tmp.at("sol.json");
  REQUIRE(run("summarize --input " + matrix + " --k 2 --algo greedy --out " + out) == 0);
  const json j = json::parse(slurp(out));

  const Objective obj = Objective::feature_sqrt(load_feature_matrix(matrix));
  std::vector<int> ground(4);
  std::iota(ground.begin(), ground.end(), 0);
  const Solution expect = greedy(obj, ground, 2);
  CHECK(j.at("value").get<double>() == doctest::Approx(expect.value).epsilon(1e-12));
  CHECK(j.at("selected").get<std::vector<int>>() == expect.selected);
  CHECK(j.at("config").at("k") == 2);
  CHECK(j.at("config").at("algo") == "greedy");
  CHECK(j.contains("version"));
}

TEST_CASE("sparsify trace is byte-identical across reruns") {
  TempDir tmp("sparsify");
  SynthConfig synth;
  synth.n_elements = 400;
  synth.n_features = 80;
  synth.nnz_per_element = 5;
  synth.cluster_count = 8;
  synth.seed = 13;
  const std::string matrix = tmp.at("m.txt");
  save_feature_matrix(generate_synthetic(synth), matrix);

  const std::string out1 = tmp.at("t1.json"), out2 = tmp.at("t2.json");
  const std::string flags = " --r 2 --c 8 --seed 7 --out ";
  REQUIRE(run("sparsify --input " + matrix + flags + out1) == 0);
  REQUIRE(run("sparsify --input " + matrix + flags + out2) == 0);
  CHECK(slurp(out1) == slurp(out2));

  const json j = json::parse(slurp(out1));
  CHECK(j.at("config").at("r") == 2.0);
  CHECK(j.at("config").at("seed") == 7);
  CHECK(j.at("kept_size").get<int>() < 400);
  CHECK(!j.at("iterations").empty());

  const std::string ids = tmp.at("ids.txt");
  REQUIRE(run("sparsify --input " + matrix + flags + tmp.at("t3.json") + " --out-set " + ids) ==
          0);
  std::istringstream in(slurp(ids));
  std::vector<int> kept;
  int v;
  while (in >> v) kept.push_back(v);
  CHECK(kept == j.at("kept").get<std::vector<int>>());
}

TEST_CASE("ingest produces the library's TF-IDF matrix") {
  TempDir tmp("ingest");
  tmp.file("corpus/docs/a.txt", "red fish blue fish. one fish!");
  tmp.file("corpus/docs/b.txt", "two red cars.");
  tmp.file("corpus/refs/r1.txt", "red fish. blue cars.");
  const std::string out = tmp.at("m.txt");
  REQUIRE(run("ingest --corpus " + tmp.at("corpus") + " --out " + out) == 0);

  const Corpus corpus = ingest_corpus({tmp.at("corpus/docs/a.txt"), tmp.at("corpus/docs/b.txt")});
  const FeatureMatrix expect = tfidf_featurize(corpus);
  const FeatureMatrix got = load_feature_matrix(out);
  CHECK(got.n_elements == expect.n_elements);
  CHECK(got.n_features == expect.n_features);
  REQUIRE(got.entries.size() == expect.entries.size());
  for (std::size_t i = 0; i < got.entries.size(); ++i) {
    CHECK(got.entries[i].weight == doctest::Approx(expect.entries[i].weight).epsilon(1e-12));
  }
}

TEST_CASE("summarize over a corpus emits rouge against references") {
  TempDir tmp("rouge");
  tmp.file("corpus/docs/a.txt", "alpha beta gamma. delta epsilon zeta. alpha beta again.");
  tmp.file("corpus/refs/r1.txt", "alpha beta gamma.");
  const std::string out = tmp.at("sol.json");
  REQUIRE(run("summarize --corpus " + tmp.at("corpus") + " --algo greedy --out " + out) == 0);
  const json j = json::parse(slurp(out));
  REQUIRE(j.contains("rouge2"));
  REQUIRE(j.at("rouge2").size() == 1);
  CHECK(j.at("rouge2")[0].at("recall").get<double>() >= 0.0);
  CHECK(j.contains("summary_sentences"));
}

TEST_CASE("benchmark CSV is identical across runs and thread counts") {
  TempDir tmp("bench");
  const std::string suite = tmp.file("suite.json", R"({
    "datasets": [{"id": "s", "synth": {"n_elements": 200, "n_features": 40,
                  "nnz_per_element": 4, "cluster_count": 8, "seed": 2}}],
    "algorithms": ["lazy_greedy", "ss"],
    "k": 8, "seeds": [1, 2], "r_values": [2.0]
  })");
  const std::string c1 = tmp.at("r1.csv"), c2 = tmp.at("r2.csv");
  REQUIRE(run("--threads 1 benchmark --suite " + suite + " --no-timings --out-csv " + c1) == 0);
  REQUIRE(run("--threads 8 benchmark --suite " + suite + " --no-timings --out-csv " + c2) == 0);
  CHECK(slurp(c1) == slurp(c2));
  CHECK(slurp(c1).rfind("dataset_id,", 0) == 0);
}

TEST_CASE("graph-audit emits a parsable config-stamped CSV") {
  TempDir tmp("audit");
  const std::string matrix = tmp.file("m.txt", kExampleMatrix);
  const std::string out = tmp.at("audit.csv");
  REQUIRE(run("graph-audit --input " + matrix + " --samples 50 --seed 3 --out " + out) == 0);
  const std::string text = slurp(out);
  CHECK(text.rfind("# version=", 0) == 0);
  CHECK(text.find("u,v,weight\n") != std::string::npos);
  int lines = 0;
  for (char ch : text) lines += ch == '\n';
  CHECK(lines == 52);  // comment + header + 50 samples
}

TEST_CASE("validate --quick passes and exit codes follow the contract") {
  CHECK(run("validate --quick") == 0);
  CHECK(run("--no-such-flag") == 1);
  CHECK(run("summarize --input /nonexistent/m.txt --k 2") == 1);
  CHECK(run("--help") == 0);
}
