#pragma once

#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "locale_lab/catalog.hpp"

namespace lolab {

// Boolean predicate over classification flags: idents joined with & | !,
// parenthesized. Known flags: monotone, meet_preserving, localic, closed,
// open, sub_open, hereditarily_skeletal, nearly_open, skeletal. The last five
// are only evaluated on localic maps, so mentioning one restricts the scanned
// instances to localic maps.
struct Predicate {
  struct Node;
  std::shared_ptr<const Node> root;
  bool needs_localic = false;
  std::string text;
};

Predicate parse_predicate(const std::string& text);  // throws BadPredicate

struct FlagValues {
  bool monotone = false, meet_preserving = false, localic = false, closed = false;
  bool open = false, sub_open = false, hereditarily_skeletal = false;
  bool nearly_open = false, skeletal = false;
};

bool eval_predicate(const Predicate& p, const FlagValues& v);

struct SearchResult {
  bool found = false;
  std::uint64_t instances_scanned = 0;
  bool truncated = false;                // caps cut the scan short somewhere
  std::optional<nlohmann::json> witness; // standalone replayable instance
  std::string summary;                   // printable witness description
};

// First catalog instance satisfying the predicate, in canonical order;
// reports exhaustion at the spec bounds otherwise (never nonexistence).
SearchResult search_counterexample(const std::string& predicate, const CatalogSpec& spec);

}  // namespace lolab
