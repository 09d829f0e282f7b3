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

#include "subsparse/data_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "subsparse/rng.hpp"

namespace subsparse {

namespace {

bool is_sentence_end(char c) { return c == '.' || c == '?' || c == '!'; }

TokenList tokenize_sentence(const std::string& raw) {
  TokenList tokens;
  std::string cur;
  for (char c : raw) {
    const unsigned char uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc)) {
      cur.push_back(static_cast<char>(std::tolower(uc)));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int Corpus::sentence_count() const {
  int n = 0;
  for (const auto& d : documents) n += static_cast<int>(d.sentences.size());
  return n;
}

std::vector<TokenList> tokenize_document(const std::string& text) {
  std::vector<TokenList> sentences;
  std::string cur;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    cur.push_back(c);
    if (is_sentence_end(c)) {
      // Consume the terminator run; a sentence ends when whitespace (or
      // end of input) follows.
      while (i + 1 < text.size() && is_sentence_end(text[i + 1])) {
        cur.push_back(text[++i]);
      }
      if (i + 1 >= text.size() || std::isspace(static_cast<unsigned char>(text[i + 1]))) {
        TokenList tokens = tokenize_sentence(cur);
        if (!tokens.empty()) sentences.push_back(std::move(tokens));
        cur.clear();
      }
    }
  }
  TokenList tail = tokenize_sentence(cur);
  if (!tail.empty()) sentences.push_back(std::move(tail));
  return sentences;
}

Corpus ingest_corpus(const std::vector<std::string>& doc_paths,
                     const std::vector<std::string>& ref_paths) {
  Corpus corpus;
  for (const std::string& path : doc_paths) {
    Document doc;
    doc.doc_id = std::filesystem::path(path).stem().string();
    doc.sentences = tokenize_document(read_file(path));
    if (doc.sentences.empty()) {
      std::cerr << "warning: no sentences in " << path << "\n";
    }
    corpus.documents.push_back(std::move(doc));
  }
  for (const std::string& path : ref_paths) {
    TokenList ref = tokenize_sentence(read_file(path));
    corpus.reference_summaries.push_back(std::move(ref));
  }
  return corpus;
}

std::vector<TokenList> corpus_sentences(const Corpus& corpus) {
  std::vector<TokenList> out;
  for (const auto& d : corpus.documents) {
    out.insert(out.end(), d.sentences.begin(), d.sentences.end());
  }
  return out;
}

FeatureMatrix tfidf_featurize(const Corpus& corpus) {
  const std::vector<TokenList> sentences = corpus_sentences(corpus);
  const int n = static_cast<int>(sentences.size());
  if (n == 0) throw std::invalid_argument("tfidf_featurize: empty corpus");

  // Sorted term order fixes feature ids independently of scheduling.
  std::map<std::string, int> df;
  for (const TokenList& s : sentences) {
    std::map<std::string, int> seen;
    for (const std::string& t : s) ++seen[t];
    for (const auto& [t, cnt] : seen) ++df[t];
  }
  if (df.empty()) throw std::invalid_argument("tfidf_featurize: empty vocabulary");
  std::unordered_map<std::string, int> term_id;
  term_id.reserve(df.size());
  {
    int next = 0;
    for (const auto& [t, cnt] : df) term_id[t] = next++;
  }

  FeatureMatrix m;
  m.n_elements = n;
  m.n_features = static_cast<int>(df.size());
  for (int v = 0; v < n; ++v) {
    std::map<std::string, int> tf;
    for (const std::string& t : sentences[v]) ++tf[t];
    for (const auto& [t, cnt] : tf) {
      const double idf = std::log(1.0 + static_cast<double>(n) / df.at(t));
      m.entries.push_back({v, term_id.at(t), static_cast<double>(cnt) * idf});
    }
  }
  m.validate();
  return m;
}

FeatureMatrix generate_synthetic(const SynthConfig& cfg) {
  if (cfg.n_elements <= 0 || cfg.n_features <= 0 || cfg.cluster_count <= 0) {
    throw std::invalid_argument("generate_synthetic: counts must be positive");
  }
  if (cfg.nnz_per_element > cfg.n_features) {
    throw std::invalid_argument("generate_synthetic: nnz_per_element > n_features");
  }
  Rng rng(cfg.seed);

  struct Centroid {
    std::vector<int> features;
    std::vector<double> weights;
  };
  std::vector<Centroid> centroids(static_cast<std::size_t>(cfg.cluster_count));
  std::vector<int> all_features(static_cast<std::size_t>(cfg.n_features));
  std::iota(all_features.begin(), all_features.end(), 0);
  for (Centroid& c : centroids) {
    c.features = rng.sample_without_replacement(all_features,
                                                static_cast<std::size_t>(cfg.nnz_per_element));
    std::sort(c.features.begin(), c.features.end());
    c.weights.reserve(c.features.size());
    for (std::size_t i = 0; i < c.features.size(); ++i) {
      double w;
      if (cfg.weight_law == WeightLaw::uniform) {
        w = 1.0 - rng.unit();  // (0, 1]
      } else {
        const std::uint64_t rank = 1 + rng.next_below(1000);
        w = std::pow(static_cast<double>(rank), -cfg.zipf_s);
      }
      c.weights.push_back(w);
    }
  }

  FeatureMatrix m;
  m.n_elements = cfg.n_elements;
  m.n_features = cfg.n_features;
  m.entries.reserve(static_cast<std::size_t>(cfg.n_elements) * cfg.nnz_per_element);
  for (int v = 0; v < cfg.n_elements; ++v) {
    const Centroid& c = centroids[rng.next_below(static_cast<std::uint64_t>(cfg.cluster_count))];
    for (std::size_t i = 0; i < c.features.size(); ++i) {
      const double jitter = 1.0 + cfg.noise * (2.0 * rng.unit() - 1.0);
      m.entries.push_back({v, c.features[i], c.weights[i] * std::max(jitter, 1e-6)});
    }
  }
  m.validate();
  return m;
}

FeatureMatrix load_feature_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  FeatureMatrix m;
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
  ++line_no;
  {
    std::istringstream ss(line);
    if (!(ss >> m.n_elements >> m.n_features)) {
      throw std::runtime_error(path + ":1: malformed header");
    }
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    FeatureMatrix::Entry e;
    if (!(ss >> e.element >> e.feature >> e.weight)) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": malformed entry");
    }
    m.entries.push_back(e);
  }
  try {
    m.validate();
  } catch (const std::invalid_argument& err) {
    throw std::runtime_error(path + ": " + err.what());
  }
  return m;
}

void save_feature_matrix(const FeatureMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out.precision(17);
  out << m.n_elements << " " << m.n_features << "\n";
  for (const auto& e : m.entries) {
    out << e.element << " " << e.feature << " " << e.weight << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

SimilarityMatrix load_similarity_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": malformed cell '" +
                                 cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  SimilarityMatrix m;
  m.n_elements = static_cast<int>(rows.size());
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != m.n_elements) {
      throw std::runtime_error(path + ": matrix is not square");
    }
    m.sim.insert(m.sim.end(), row.begin(), row.end());
  }
  m.validate();
  return m;
}

}  // namespace subsparse
