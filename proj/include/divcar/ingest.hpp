#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "divcar/error.hpp"

namespace divcar {

using ApiId = std::string;
using AppId = std::string;
using Keyword = std::string;

/// Sorted, duplicate-free sequence. Used for tag sets and app API sets.
using IdSet = std::vector<std::string>;

/// The "APP-API" co-usage record store: every API with its tags and every
/// app with the set of APIs it composes.
///
/// Invariants (enforced by parse_corpus):
///  - every API referenced by an app exists in `apis`
///  - every app references at least one API
///  - tag and API sets are sorted and deduplicated
struct Ecosystem {
  std::map<ApiId, IdSet> apis;
  std::map<AppId, IdSet> apps;

  friend bool operator==(const Ecosystem&, const Ecosystem&) = default;
};

class IngestError : public InputError {
 public:
  enum class Kind { MalformedLine, DuplicateId, DanglingApiRef, EmptyCorpus };

  IngestError(Kind kind, std::string message) : InputError(std::move(message)), kind_(kind) {}
  [[nodiscard]] Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Reads the API and app JSON-lines streams into a validated Ecosystem.
///
/// API lines look like {"api": "<id>", "tags": ["<kw>", ...]} and app lines
/// like {"app": "<id>", "apis": ["<id>", ...]}. Unknown fields are ignored,
/// blank lines are skipped, identifiers and keywords are trimmed and compared
/// case-sensitively.
Ecosystem parse_corpus(std::istream& api_stream, std::istream& app_stream);

/// Writes the two JSON-lines streams in identifier order.
void write_corpus(const Ecosystem& eco, std::ostream& api_stream, std::ostream& app_stream);

/// Checks the Ecosystem invariants; throws IngestError on the first violation.
void validate(const Ecosystem& eco);

/// Sorted, deduplicated copy of `ids` with surrounding whitespace removed.
IdSet make_id_set(std::vector<std::string> ids);

struct AppQuerySet {
  AppId app;
  IdSet keywords;
  /// Apps whose tag union has exactly two keywords are not evaluated.
  bool excluded_from_eval = false;
};

/// For each app (in id order), the union of its APIs' tags.
std::vector<AppQuerySet> derive_query_sets(const Ecosystem& eco);

}  // namespace divcar
