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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subsparse/feature_matrix.hpp"

namespace subsparse {

using TokenList = std::vector<std::string>;

struct Document {
  std::string doc_id;
  std::vector<TokenList> sentences;
};

struct Corpus {
  std::vector<Document> documents;
  std::vector<TokenList> reference_summaries;

  int sentence_count() const;
};

// Splits on `.?!` runs followed by whitespace (or end of file), lowercases,
// and keeps alphanumeric tokens. Empty sentences are dropped. Deterministic.
std::vector<TokenList> tokenize_document(const std::string& text);

// One document per file; throws naming the path on unreadable input.
// Reference summaries (token-list files) may be supplied separately.
Corpus ingest_corpus(const std::vector<std::string>& doc_paths,
                     const std::vector<std::string>& ref_paths = {});

// Sentences become elements, vocabulary terms become features;
// weight = tf * ln(1 + N / df) with N the sentence count and raw tf.
// Vocabulary ids follow sorted term order. Throws on an empty vocabulary.
FeatureMatrix tfidf_featurize(const Corpus& corpus);

// Flat sentence list in element-id order (for mapping solutions back to text).
std::vector<TokenList> corpus_sentences(const Corpus& corpus);

enum class WeightLaw { uniform, zipf };

struct SynthConfig {
  int n_elements = 0;
  int n_features = 0;
  int nnz_per_element = 0;
  int cluster_count = 1;
  WeightLaw weight_law = WeightLaw::uniform;
  double zipf_s = 1.0;
  double noise = 0.05;  // relative weight jitter around the cluster centroid
  std::uint64_t seed = 0;
};

// Clustered rows around feature centroids; high within-cluster redundancy
// gives the sparsifier headroom. Byte-identical across runs for a fixed
// seed.
FeatureMatrix generate_synthetic(const SynthConfig& cfg);

// Triple format: header "n_elements n_features", then one
// "element feature weight" line per entry.
FeatureMatrix load_feature_matrix(const std::string& path);
void save_feature_matrix(const FeatureMatrix& m, const std::string& path);

// CSV, n rows by n columns.
SimilarityMatrix load_similarity_csv(const std::string& path);

}  // namespace subsparse
