#include "locale_lab/search.hpp"

#include <cctype>

#include "locale_lab/json_io.hpp"

namespace lolab {

using nlohmann::json;

struct Predicate::Node {
  enum class Kind { flag, band, bor, bnot } kind;
  std::string flag;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

const char* kFlags[] = {"monotone",           "meet_preserving", "localic",
                        "closed",             "open",            "sub_open",
                        "hereditarily_skeletal", "nearly_open",  "skeletal"};

bool known_flag(const std::string& s) {
  for (const char* f : kFlags)
    if (s == f) return true;
  return false;
}

bool localic_only_flag(const std::string& s) {
  return s == "open" || s == "sub_open" || s == "hereditarily_skeletal" ||
         s == "nearly_open" || s == "skeletal";
}

struct Parser {
  const std::string& text;
  size_t pos = 0;
  bool needs_localic = false;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::shared_ptr<const Predicate::Node> parse_expr() {
    auto lhs = parse_term();
    while (eat('|')) {
      auto node = std::make_shared<Predicate::Node>();
      node->kind = Predicate::Node::Kind::bor;
      node->lhs = lhs;
      node->rhs = parse_term();
      lhs = node;
    }
    return lhs;
  }

  std::shared_ptr<const Predicate::Node> parse_term() {
    auto lhs = parse_factor();
    while (eat('&')) {
      auto node = std::make_shared<Predicate::Node>();
      node->kind = Predicate::Node::Kind::band;
      node->lhs = lhs;
      node->rhs = parse_factor();
      lhs = node;
    }
    return lhs;
  }

  std::shared_ptr<const Predicate::Node> parse_factor() {
    skip_ws();
    if (eat('!')) {
      auto node = std::make_shared<Predicate::Node>();
      node->kind = Predicate::Node::Kind::bnot;
      node->lhs = parse_factor();
      return node;
    }
    if (eat('(')) {
      auto inner = parse_expr();
      if (!eat(')')) throw BadPredicate("missing ')'");
      return inner;
    }
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (start == pos) throw BadPredicate("expected a flag name at position " +
                                         std::to_string(start));
    std::string name = text.substr(start, pos - start);
    if (!known_flag(name)) throw BadPredicate("unknown flag: " + name);
    if (localic_only_flag(name)) needs_localic = true;
    auto node = std::make_shared<Predicate::Node>();
    node->kind = Predicate::Node::Kind::flag;
    node->flag = name;
    return node;
  }
};

bool eval_node(const Predicate::Node& n, const FlagValues& v) {
  switch (n.kind) {
    case Predicate::Node::Kind::flag:
      if (n.flag == "monotone") return v.monotone;
      if (n.flag == "meet_preserving") return v.meet_preserving;
      if (n.flag == "localic") return v.localic;
      if (n.flag == "closed") return v.closed;
      if (n.flag == "open") return v.open;
      if (n.flag == "sub_open") return v.sub_open;
      if (n.flag == "hereditarily_skeletal") return v.hereditarily_skeletal;
      if (n.flag == "nearly_open") return v.nearly_open;
      return v.skeletal;
    case Predicate::Node::Kind::band:
      return eval_node(*n.lhs, v) && eval_node(*n.rhs, v);
    case Predicate::Node::Kind::bor:
      return eval_node(*n.lhs, v) || eval_node(*n.rhs, v);
    case Predicate::Node::Kind::bnot:
      return !eval_node(*n.lhs, v);
  }
  return false;
}

bool set_is_open(const Frame& tgt, ElemSet s) {
  for (int b = 0; b < tgt.size(); ++b)
    if (tgt.open_set[b] == s) return true;
  return false;
}

bool set_is_closed(const Frame& tgt, ElemSet s) {
  for (int b = 0; b < tgt.size(); ++b)
    if (tgt.upset[b] == s) return true;
  return false;
}

}  // namespace

Predicate parse_predicate(const std::string& text) {
  Parser p{text};
  Predicate pred;
  pred.root = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size())
    throw BadPredicate("trailing input at position " + std::to_string(p.pos));
  pred.needs_localic = p.needs_localic;
  pred.text = text;
  return pred;
}

bool eval_predicate(const Predicate& p, const FlagValues& v) { return eval_node(*p.root, v); }

SearchResult search_counterexample(const std::string& predicate, const CatalogSpec& spec) {
  Predicate pred = parse_predicate(predicate);
  Catalog cat = generate_catalog(spec);
  SearchResult result;

  const MapClass domain = pred.needs_localic ? MapClass::localic : MapClass::all;
  for (int si = 0; si < cat.size() && !result.found; ++si)
    for (int ti = 0; ti < cat.size() && !result.found; ++ti) {
      const Frame& src = cat.frames[si].frame;
      const Frame& tgt = cat.frames[ti].frame;
      std::vector<ElemId> adjoint;
      auto stats = for_each_map(
          src, tgt, domain, spec.max_maps_per_pair,
          [&](std::uint64_t rank, const LatticeMap& map) {
            auto flags = quick_classify(map, &adjoint);
            FlagValues v;
            v.monotone = flags.monotone;
            v.meet_preserving = flags.meet_preserving;
            v.localic = flags.localic;
            bool closed = true, open = true;
            for (int a = 0; a < src.size() && (closed || open); ++a) {
              if (closed && !set_is_closed(tgt, raw_image(map, src.upset[a]))) closed = false;
              if (open && !set_is_open(tgt, raw_image(map, src.open_set[a]))) open = false;
            }
            v.closed = closed;
            if (flags.localic) {
              v.open = open;
              v.skeletal = true;
              v.nearly_open = true;
              v.hereditarily_skeletal = true;
              v.sub_open = true;
              for (int b = 0; b < tgt.size(); ++b) {
                if (src.pseudo(adjoint[tgt.pseudo(b)]) != src.pseudo(src.pseudo(adjoint[b])))
                  v.skeletal = false;
                if (adjoint[tgt.pseudo(b)] != src.pseudo(adjoint[b])) v.nearly_open = false;
                for (int c = 0; c < tgt.size(); ++c) {
                  if (src.arrow(adjoint[tgt.arrow(b, c)], adjoint[c]) !=
                      src.arrow(src.arrow(adjoint[b], adjoint[c]), adjoint[c]))
                    v.hereditarily_skeletal = false;
                  if (adjoint[tgt.arrow(b, c)] != src.arrow(adjoint[b], adjoint[c]))
                    v.sub_open = false;
                }
              }
            }
            if (eval_predicate(pred, v)) {
              result.found = true;
              json flags_json{{"monotone", v.monotone},
                              {"meet_preserving", v.meet_preserving},
                              {"localic", v.localic},
                              {"closed", v.closed}};
              if (flags.localic) {
                flags_json["open"] = v.open;
                flags_json["sub_open"] = v.sub_open;
                flags_json["hereditarily_skeletal"] = v.hereditarily_skeletal;
                flags_json["nearly_open"] = v.nearly_open;
                flags_json["skeletal"] = v.skeletal;
              }
              result.witness = json{{"kind", "search-witness"},
                                    {"predicate", pred.text},
                                    {"source_raw", frame_to_raw_json(src)},
                                    {"target_raw", frame_to_raw_json(tgt)},
                                    {"map_values", map.values},
                                    {"rank", rank},
                                    {"flags", flags_json}};
              std::string assigns;
              for (int a = 0; a < src.size(); ++a) {
                if (a) assigns += ", ";
                assigns += src.label(a) + "->" + tgt.label(map.values[a]);
              }
              result.summary = src.name + " -> " + tgt.name + " [" + assigns + "]";
              return false;
            }
            return true;
          });
      result.instances_scanned += stats.emitted;
      if (stats.truncated) result.truncated = true;
    }
  return result;
}

}  // namespace lolab
