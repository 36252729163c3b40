#include <doctest.h>

#include "divcar/query.hpp"

using namespace divcar;

namespace {

QueryError::Kind query_error(std::vector<std::string> kws, std::size_t width = kMaxQueryWidth) {
  try {
    Query::make(std::move(kws), width);
  } catch (const QueryError& e) {
    return e.kind();
  }
  FAIL("expected a QueryError");
  return QueryError::Kind::Empty;
}

}  // namespace

TEST_CASE("query keywords are trimmed and sorted into mask order") {
  const auto q = Query::make({" weather", "maps ", "chat"});
  CHECK(q.keywords() == std::vector<Keyword>{"chat", "maps", "weather"});
  CHECK(q.full_mask() == 0b111u);
  CHECK(q.bit_of("maps") == 1u);
  CHECK_FALSE(q.bit_of("nope").has_value());
  const std::vector<Keyword> tags{"chat", "sms", "weather"};
  CHECK(q.mask_of(tags) == 0b101u);
  CHECK(q.keywords_in(0b110) == std::vector<Keyword>{"maps", "weather"});
}

TEST_CASE("query validation") {
  CHECK(query_error({}) == QueryError::Kind::Empty);
  CHECK(query_error({"a", " "}) == QueryError::Kind::Empty);
  CHECK(query_error({"a", "b", "a "}) == QueryError::Kind::DuplicateKeyword);
  CHECK(query_error({"a", "b", "c"}, 2) == QueryError::Kind::MaskWidthExceeded);
  std::vector<std::string> wide;
  for (int i = 0; i < 33; ++i) wide.push_back("k" + std::to_string(i));
  CHECK(query_error(wide) == QueryError::Kind::MaskWidthExceeded);
  wide.pop_back();
  CHECK(Query::make(wide).full_mask() == 0xFFFFFFFFu);
}
