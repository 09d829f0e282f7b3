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

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <vector>

#include <doctest.h>

#include "subsparse/data_io.hpp"
#include "subsparse/maximize.hpp"
#include "subsparse/objective.hpp"
#include "subsparse/sparsify.hpp"

using namespace subsparse;

namespace {

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("subsparse_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    const std::string p = (path / name).string();
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("tokenizer splits on terminators followed by whitespace") {
  const auto s = tokenize_document("A b. C!");
  REQUIRE(s.size() == 2);
  CHECK(s[0] == TokenList{"a", "b"});
  CHECK(s[1] == TokenList{"c"});

  // Terminator runs collapse; a terminator not followed by whitespace does
  // not end the sentence.
  const auto t = tokenize_document("Wait?! Yes. a.b stays together");
  REQUIRE(t.size() == 3);
  CHECK(t[0] == TokenList{"wait"});
  CHECK(t[1] == TokenList{"yes"});
  CHECK(t[2] == TokenList{"a", "b", "stays", "together"});

  CHECK(tokenize_document("").empty());
  CHECK(tokenize_document("  ...  ").empty());
}

TEST_CASE("corpus ingestion and independent token count") {
  TempDir tmp("ingest");
  const std::string d1 = tmp.file("d1.txt", "One two three. Four five!\nSix seven.");
  const std::string d2 = tmp.file("d2.txt", "");
  const Corpus corpus = ingest_corpus({d1, d2});
  REQUIRE(corpus.documents.size() == 2);
  CHECK(corpus.documents[0].sentences.size() == 3);
  CHECK(corpus.documents[1].sentences.empty());
  CHECK(corpus.sentence_count() == 3);
  // Independent count: 7 whitespace-separated alphabetic words in d1.
  int tokens = 0;
  for (const auto& s : corpus.documents[0].sentences) tokens += static_cast<int>(s.size());
  CHECK(tokens == 7);
  CHECK_THROWS_AS(ingest_corpus({(tmp.path / "missing.txt").string()}), std::runtime_error);
}

TEST_CASE("tfidf closed forms") {
  TempDir tmp("tfidf");
  // Single sentence, one term twice: weight = 2 ln 2.
  const std::string doc = tmp.file("d.txt", "word word.");
  const FeatureMatrix m = tfidf_featurize(ingest_corpus({doc}));
  REQUIRE(m.entries.size() == 1);
  CHECK(m.entries[0].weight == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));

  // A term in every sentence still gets idf = ln 2.
  const std::string doc2 = tmp.file("d2.txt", "cat runs. cat sleeps.");
  const FeatureMatrix m2 = tfidf_featurize(ingest_corpus({doc2}));
  // Sorted vocabulary: cat=0, runs=1, sleeps=2.
  double cat_weight = -1.0;
  for (const auto& e : m2.entries) {
    if (e.element == 0 && e.feature == 0) cat_weight = e.weight;
  }
  CHECK(cat_weight == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("tfidf matches a brute-force recomputation on a small corpus") {
  TempDir tmp("tfidf2");
  const std::string d1 = tmp.file("d1.txt", "red fish blue fish. one fish!");
  const std::string d2 = tmp.file("d2.txt", "two red cars.");
  const Corpus corpus = ingest_corpus({d1, d2});
  const FeatureMatrix m = tfidf_featurize(corpus);
  const std::vector<TokenList> sents = corpus_sentences(corpus);
  const int n = static_cast<int>(sents.size());

  std::map<std::string, int> df;
  for (const auto& s : sents) {
    std::map<std::string, int> seen;
    for (const auto& t : s) seen[t] = 1;
    for (const auto& [t, one] : seen) df[t] += one;
  }
  std::map<std::string, int> ids;
  int next = 0;
  for (const auto& [t, cnt] : df) ids[t] = next++;

  CHECK(m.n_elements == n);
  CHECK(m.n_features == static_cast<int>(df.size()));
  for (int v = 0; v < n; ++v) {
    std::map<std::string, int> tf;
    for (const auto& t : sents[static_cast<std::size_t>(v)]) ++tf[t];
    for (const auto& [t, cnt] : tf) {
      const double expect = cnt * std::log(1.0 + static_cast<double>(n) / df[t]);
      bool found = false;
      for (const auto& e : m.entries) {
        if (e.element == v && e.feature == ids[t]) {
          CHECK(e.weight == doctest::Approx(expect).epsilon(1e-12));
          found = true;
        }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("matrix file round trip and load errors") {
  TempDir tmp("matrix");
  FeatureMatrix m;
  m.n_elements = 3;
  m.n_features = 2;
  m.entries = {{0, 0, 1.25}, {1, 1, 0.5}, {2, 0, 3.0}};
  const std::string p = (tmp.path / "m.txt").string();
  save_feature_matrix(m, p);
  const FeatureMatrix back = load_feature_matrix(p);
  CHECK(back.n_elements == m.n_elements);
  CHECK(back.n_features == m.n_features);
  REQUIRE(back.entries.size() == m.entries.size());
  for (std::size_t i = 0; i < m.entries.size(); ++i) {
    CHECK(back.entries[i].element == m.entries[i].element);
    CHECK(back.entries[i].feature == m.entries[i].feature);
    CHECK(back.entries[i].weight == m.entries[i].weight);  // bit-exact round trip
  }

  const std::string bad1 = tmp.file("neg.txt", "2 1\n0 0 -1.0\n");
  CHECK_THROWS_AS(load_feature_matrix(bad1), std::runtime_error);
  const std::string bad2 = tmp.file("malformed.txt", "2 1\n0 zero 1.0\n");
  try {
    load_feature_matrix(bad2);
    FAIL("expected malformed-entry error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);  // line number
  }
  const std::string bad3 = tmp.file("range.txt", "2 1\n5 0 1.0\n");
  CHECK_THROWS_AS(load_feature_matrix(bad3), std::runtime_error);
  CHECK_THROWS_AS(load_feature_matrix((tmp.path / "nope.txt").string()), std::runtime_error);
}

TEST_CASE("similarity CSV loader") {
  TempDir tmp("sim");
  const std::string good = tmp.file("s.csv", "1.0,0.5\n0.5,1.0\n");
  const SimilarityMatrix m = load_similarity_csv(good);
  CHECK(m.n_elements == 2);
  CHECK(m.at(0, 1) == 0.5);
  const std::string ragged = tmp.file("ragged.csv", "1.0,0.5\n0.5\n");
  CHECK_THROWS_AS(load_similarity_csv(ragged), std::runtime_error);
  const std::string bad = tmp.file("bad.csv", "1.0,x\n0.5,1.0\n");
  CHECK_THROWS_AS(load_similarity_csv(bad), std::runtime_error);
}

TEST_CASE("synthetic generator determinism and duplicate regime") {
  SynthConfig cfg;
  cfg.n_elements = 50;
  cfg.n_features = 12;
  cfg.nnz_per_element = 4;
  cfg.cluster_count = 1;
  cfg.noise = 0.0;
  cfg.seed = 9;
  const FeatureMatrix a = generate_synthetic(cfg);
  const FeatureMatrix b = generate_synthetic(cfg);
  TempDir tmp("synth");
  const std::string pa = (tmp.path / "a.txt").string();
  const std::string pb = (tmp.path / "b.txt").string();
  save_feature_matrix(a, pa);
  save_feature_matrix(b, pb);
  CHECK(slurp(pa) == slurp(pb));  // byte-identical across runs

  // One cluster, zero noise: all rows identical, so the second greedy pick
  // adds exactly (sqrt 2 - 1) times the first.
  const Objective obj = Objective::feature_sqrt(a);
  std::vector<int> ground(50);
  std::iota(ground.begin(), ground.end(), 0);
  const Solution s = greedy(obj, ground, 3);
  REQUIRE(s.step_gains.size() == 3);
  CHECK(s.step_gains[1] ==
        doctest::Approx((std::sqrt(2.0) - 1.0) * s.step_gains[0]).epsilon(1e-9));

  SynthConfig bad = cfg;
  bad.nnz_per_element = 20;
  CHECK_THROWS_AS(generate_synthetic(bad), std::invalid_argument);
}

TEST_CASE("clustered synthetic data gives the sparsifier headroom") {
  SynthConfig cfg;
  cfg.n_elements = 2000;
  cfg.n_features = 400;
  cfg.nnz_per_element = 8;
  cfg.cluster_count = 20;
  cfg.seed = 21;
  const Objective obj = Objective::feature_sqrt(generate_synthetic(cfg));
  std::vector<int> ground(2000);
  std::iota(ground.begin(), ground.end(), 0);
  SparsifierConfig scfg;  // r = 8, c = 8
  scfg.seed = 21;
  const SparsifyResult res = sparsify(obj, ground, scfg);
  CHECK(res.kept.size() * 5 <= 2000);  // at least 80% pruned
}
