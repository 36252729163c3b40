#include "divcar/query.hpp"

#include <algorithm>

namespace divcar {

Query Query::make(std::vector<std::string> keywords, std::size_t max_width) {
  max_width = std::min(max_width, kMaxQueryWidth);
  const auto raw_size = keywords.size();
  auto sorted = make_id_set(std::move(keywords));
  if (sorted.empty() || (sorted.size() == 1 && sorted.front().empty())) {
    throw QueryError(QueryError::Kind::Empty, "query has no keywords");
  }
  if (std::any_of(sorted.begin(), sorted.end(), [](const auto& k) { return k.empty(); })) {
    throw QueryError(QueryError::Kind::Empty, "query contains an empty keyword");
  }
  if (sorted.size() != raw_size) {
    throw QueryError(QueryError::Kind::DuplicateKeyword, "query repeats a keyword");
  }
  if (sorted.size() > max_width) {
    throw QueryError(QueryError::Kind::MaskWidthExceeded,
                     "query has " + std::to_string(sorted.size()) + " keywords; at most " + std::to_string(max_width) +
                         " are supported");
  }
  Query q;
  q.keywords_ = std::move(sorted);
  return q;
}

std::optional<std::size_t> Query::bit_of(std::string_view keyword) const {
  const auto it = std::lower_bound(keywords_.begin(), keywords_.end(), keyword);
  if (it == keywords_.end() || *it != keyword) return std::nullopt;
  return static_cast<std::size_t>(it - keywords_.begin());
}

KeywordMask Query::mask_of(std::span<const Keyword> tags) const {
  // Both sides are sorted: merge walk.
  KeywordMask mask = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < keywords_.size() && j < tags.size()) {
    if (keywords_[i] < tags[j]) {
      ++i;
    } else if (tags[j] < keywords_[i]) {
      ++j;
    } else {
      mask |= KeywordMask{1} << i;
      ++i;
      ++j;
    }
  }
  return mask;
}

std::vector<Keyword> Query::keywords_in(KeywordMask mask) const {
  std::vector<Keyword> out;
  for (std::size_t i = 0; i < keywords_.size(); ++i) {
    if ((mask >> i) & 1u) out.push_back(keywords_[i]);
  }
  return out;
}

}  // namespace divcar
