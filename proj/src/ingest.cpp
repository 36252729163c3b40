#include "divcar/ingest.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>

#include <json.hpp>

namespace divcar {
namespace {

using json = nlohmann::json;

std::string trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void malformed(std::string_view stream, std::size_t line_no, std::string_view why) {
  throw IngestError(IngestError::Kind::MalformedLine,
                    std::string(stream) + " line " + std::to_string(line_no) + ": " + std::string(why));
}

std::string read_id(const json& obj, const char* field, std::string_view stream, std::size_t line_no) {
  const auto it = obj.find(field);
  if (it == obj.end() || !it->is_string()) malformed(stream, line_no, std::string("missing string field \"") + field + "\"");
  auto id = trim(it->get<std::string>());
  if (id.empty()) malformed(stream, line_no, std::string("empty \"") + field + "\"");
  return id;
}

IdSet read_id_list(const json& obj, const char* field, std::string_view stream, std::size_t line_no) {
  const auto it = obj.find(field);
  if (it == obj.end() || !it->is_array()) malformed(stream, line_no, std::string("missing array field \"") + field + "\"");
  std::vector<std::string> raw;
  raw.reserve(it->size());
  for (const auto& v : *it) {
    if (!v.is_string()) malformed(stream, line_no, std::string("non-string entry in \"") + field + "\"");
    auto s = trim(v.get<std::string>());
    if (s.empty()) malformed(stream, line_no, std::string("empty entry in \"") + field + "\"");
    raw.push_back(std::move(s));
  }
  return make_id_set(std::move(raw));
}

// Calls `fn(object, line_no)` for each non-blank line.
template <typename Fn>
void for_each_record(std::istream& in, std::string_view stream, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded() || !obj.is_object()) malformed(stream, line_no, "not a JSON object");
    fn(obj, line_no);
  }
}

}  // namespace

IdSet make_id_set(std::vector<std::string> ids) {
  for (auto& id : ids) id = trim(id);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

Ecosystem parse_corpus(std::istream& api_stream, std::istream& app_stream) {
  Ecosystem eco;
  for_each_record(api_stream, "api", [&](const json& obj, std::size_t line_no) {
    auto id = read_id(obj, "api", "api", line_no);
    auto tags = read_id_list(obj, "tags", "api", line_no);
    if (!eco.apis.emplace(id, std::move(tags)).second) {
      throw IngestError(IngestError::Kind::DuplicateId, "duplicate api id \"" + id + "\" on api line " + std::to_string(line_no));
    }
  });
  for_each_record(app_stream, "app", [&](const json& obj, std::size_t line_no) {
    auto id = read_id(obj, "app", "app", line_no);
    auto apis = read_id_list(obj, "apis", "app", line_no);
    if (apis.empty()) malformed("app", line_no, "app references no apis");
    if (!eco.apps.emplace(id, std::move(apis)).second) {
      throw IngestError(IngestError::Kind::DuplicateId, "duplicate app id \"" + id + "\" on app line " + std::to_string(line_no));
    }
  });
  validate(eco);
  return eco;
}

void validate(const Ecosystem& eco) {
  if (eco.apis.empty() || eco.apps.empty()) {
    throw IngestError(IngestError::Kind::EmptyCorpus, "corpus has no apis or no apps");
  }
  for (const auto& [app, apis] : eco.apps) {
    if (apis.empty()) throw IngestError(IngestError::Kind::MalformedLine, "app \"" + app + "\" references no apis");
    for (const auto& api : apis) {
      if (!eco.apis.contains(api)) {
        throw IngestError(IngestError::Kind::DanglingApiRef, "app \"" + app + "\" references unknown api \"" + api + "\"");
      }
    }
  }
}

void write_corpus(const Ecosystem& eco, std::ostream& api_stream, std::ostream& app_stream) {
  for (const auto& [api, tags] : eco.apis) {
    api_stream << nlohmann::ordered_json{{"api", api}, {"tags", tags}}.dump() << '\n';
  }
  for (const auto& [app, apis] : eco.apps) {
    app_stream << nlohmann::ordered_json{{"app", app}, {"apis", apis}}.dump() << '\n';
  }
}

std::vector<AppQuerySet> derive_query_sets(const Ecosystem& eco) {
  std::vector<AppQuerySet> out;
  out.reserve(eco.apps.size());
  for (const auto& [app, apis] : eco.apps) {
    std::set<Keyword> keywords;
    for (const auto& api : apis) {
      const auto it = eco.apis.find(api);
      if (it == eco.apis.end()) continue;
      keywords.insert(it->second.begin(), it->second.end());
    }
    AppQuerySet entry{app, IdSet(keywords.begin(), keywords.end()), false};
    entry.excluded_from_eval = entry.keywords.size() == 2;
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace divcar
