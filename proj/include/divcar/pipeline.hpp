#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "divcar/graph.hpp"
#include "divcar/query.hpp"
#include "divcar/ranker.hpp"
#include "divcar/sampler.hpp"
#include "divcar/steiner.hpp"

namespace divcar {

struct RecommendConfig {
  SampleConfig sampling;
  std::size_t k = kDefaultK;
  double theta = kDefaultTheta;
  std::size_t jobs = 1;
};

struct Recommendation {
  std::vector<Subgraph> samples;
  /// One entry per sample, nullopt where the sample admits no tree.
  std::vector<std::optional<SteinerTree>> trees;
  RankedResult result;
};

/// Throws QueryError(UnknownKeyword) listing query keywords absent from the
/// graph's keyword index.
void require_known_keywords(const CorrelationGraph& g, const Query& q);

/// search_min_gst on every subgraph; slot i holds the result for subgraph i.
std::vector<std::optional<SteinerTree>> search_all(std::span<const Subgraph> subgraphs, const Query& q,
                                                   std::size_t jobs = 1);

/// Sample, search each sample, rank by compatibility and diversify.
Recommendation recommend(const CorrelationGraph& g, const Query& q, const RecommendConfig& cfg);

}  // namespace divcar
