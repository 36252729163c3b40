#include "divcar/pipeline.hpp"

#include "divcar/parallel.hpp"

namespace divcar {

void require_known_keywords(const CorrelationGraph& g, const Query& q) {
  std::vector<Keyword> unknown;
  for (const auto& k : q.keywords()) {
    if (!g.has_keyword(k)) unknown.push_back(k);
  }
  if (unknown.empty()) return;
  std::string msg = "unknown keywords:";
  for (const auto& k : unknown) msg += " " + k;
  throw QueryError(QueryError::Kind::UnknownKeyword, msg, std::move(unknown));
}

std::vector<std::optional<SteinerTree>> search_all(std::span<const Subgraph> subgraphs, const Query& q,
                                                   std::size_t jobs) {
  std::vector<std::optional<SteinerTree>> trees(subgraphs.size());
  parallel_for(subgraphs.size(), jobs, [&](std::size_t i) { trees[i] = search_min_gst(subgraphs[i], q); });
  return trees;
}

Recommendation recommend(const CorrelationGraph& g, const Query& q, const RecommendConfig& cfg) {
  require_known_keywords(g, q);
  Recommendation out;
  out.samples = sample_subgraphs(g, q, cfg.sampling, cfg.jobs);
  out.trees = search_all(out.samples, q, cfg.jobs);
  out.result = rank_and_diversify(g, out.trees, cfg.k, cfg.theta);
  return out;
}

}  // namespace divcar
