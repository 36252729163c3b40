#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "divcar/error.hpp"
#include "divcar/ingest.hpp"

namespace divcar {

/// One bit per query keyword, in Query order.
using KeywordMask = std::uint32_t;

inline constexpr std::size_t kMaxQueryWidth = 32;

class QueryError : public InputError {
 public:
  enum class Kind { Empty, DuplicateKeyword, MaskWidthExceeded, UnknownKeyword };

  QueryError(Kind kind, std::string message, std::vector<Keyword> keywords = {})
      : InputError(std::move(message)), kind_(kind), keywords_(std::move(keywords)) {}
  [[nodiscard]] Kind kind() const { return kind_; }
  /// Offending keywords, when the error is about specific ones.
  [[nodiscard]] const std::vector<Keyword>& keywords() const { return keywords_; }

 private:
  Kind kind_;
  std::vector<Keyword> keywords_;
};

/// A set of r distinct required keywords. Keywords are stored sorted, so
/// bit i of a KeywordMask always refers to the i-th smallest keyword.
class Query {
 public:
  /// Trims each keyword. Throws QueryError on an empty list, a repeated
  /// keyword, or more than `max_width` keywords (never above 32).
  static Query make(std::vector<std::string> keywords, std::size_t max_width = kMaxQueryWidth);

  [[nodiscard]] std::size_t size() const { return keywords_.size(); }
  [[nodiscard]] const std::vector<Keyword>& keywords() const { return keywords_; }
  [[nodiscard]] KeywordMask full_mask() const {
    return keywords_.size() == 32 ? ~KeywordMask{0} : (KeywordMask{1} << keywords_.size()) - 1;
  }
  [[nodiscard]] std::optional<std::size_t> bit_of(std::string_view keyword) const;
  /// Bits of the query keywords present in `tags` (a sorted set).
  [[nodiscard]] KeywordMask mask_of(std::span<const Keyword> tags) const;
  /// Keywords whose bits are set in `mask`.
  [[nodiscard]] std::vector<Keyword> keywords_in(KeywordMask mask) const;

  friend bool operator==(const Query&, const Query&) = default;

 private:
  std::vector<Keyword> keywords_;
};

inline int popcount(KeywordMask m) { return std::popcount(m); }

}  // namespace divcar
