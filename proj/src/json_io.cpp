#include "locale_lab/json_io.hpp"

#include <filesystem>
#include <fstream>

namespace lolab {

using nlohmann::json;

namespace {

std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) throw BadInput(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw BadInput(std::string(what) + " entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

Frame frame_from_json(const json& j) {
  if (!j.contains("elements")) throw BadInput("lattice JSON needs \"elements\"");
  auto elements = string_list(j.at("elements"), "elements");
  OrderMode mode = OrderMode::covers;
  std::vector<std::pair<std::string, std::string>> pairs;
  if (j.contains("order")) {
    const auto& order = j.at("order");
    std::string m = order.value("mode", "covers");
    if (m == "covers")
      mode = OrderMode::covers;
    else if (m == "leq")
      mode = OrderMode::leq;
    else
      throw BadInput("order.mode must be \"covers\" or \"leq\"");
    for (const auto& p : order.value("pairs", json::array())) {
      if (!p.is_array() || p.size() != 2) throw BadInput("order.pairs entries must be [a, b]");
      pairs.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
    }
  }
  return frame_check(lattice_from_order(std::move(elements), pairs, mode),
                     j.value("name", ""));
}

json frame_to_json(const Frame& f) {
  const auto ext = linear_extension(f.lat.order);
  json elements = json::array();
  for (ElemId i : ext) elements.push_back(f.label(i));

  json pairs = json::array();
  const int n = f.size();
  for (ElemId a : ext)
    for (ElemId b : ext) {
      if (a == b || !f.leq(a, b)) continue;
      bool cover = true;
      for (int c = 0; c < n && cover; ++c)
        if (c != a && c != b && f.leq(a, c) && f.leq(c, b)) cover = false;
      if (cover) pairs.push_back(json::array({f.label(a), f.label(b)}));
    }
  return json{{"name", f.name},
              {"elements", elements},
              {"order", {{"mode", "covers"}, {"pairs", pairs}}}};
}

FiniteSpace space_from_json(const json& j) {
  if (!j.contains("points") || !j.contains("opens"))
    throw BadInput("topology JSON needs \"points\" and \"opens\"");
  auto points = string_list(j.at("points"), "points");
  std::vector<std::vector<std::string>> opens;
  for (const auto& o : j.at("opens")) opens.push_back(string_list(o, "opens"));
  return make_space(std::move(points), opens);
}

Frame frame_from_any_json(const json& j) {
  if (j.contains("points")) return frame_from_topology(space_from_json(j));
  return frame_from_json(j);
}

json frame_to_raw_json(const Frame& f) {
  json up = json::array(), meet = json::array(), join = json::array(), arrow = json::array();
  for (ElemSet u : f.lat.order.up) up.push_back(u);
  for (ElemId v : f.lat.meet_tab) meet.push_back(v);
  for (ElemId v : f.lat.join_tab) join.push_back(v);
  for (ElemId v : f.arrow_tab) arrow.push_back(v);
  json elements = json::array();
  for (const auto& l : f.lat.order.labels) elements.push_back(l);
  return json{{"name", f.name},     {"elements", elements}, {"up", up},
              {"meet", meet},       {"join", join},         {"arrow", arrow},
              {"bottom", f.bottom()}, {"top", f.top()}};
}

Frame frame_from_raw_json(const json& j) {
  Frame f;
  f.name = j.value("name", "");
  for (const auto& l : j.at("elements")) f.lat.order.labels.push_back(l.get<std::string>());
  for (const auto& u : j.at("up")) f.lat.order.up.push_back(u.get<ElemSet>());
  for (const auto& v : j.at("meet")) f.lat.meet_tab.push_back(v.get<ElemId>());
  for (const auto& v : j.at("join")) f.lat.join_tab.push_back(v.get<ElemId>());
  for (const auto& v : j.at("arrow")) f.arrow_tab.push_back(v.get<ElemId>());
  f.lat.bottom = j.at("bottom").get<ElemId>();
  f.lat.top = j.at("top").get<ElemId>();
  const int n = f.size();
  f.upset = f.lat.order.up;
  f.downset.assign(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (f.leq(b, a)) f.downset[a] |= elem_bit(b);
  f.open_set.assign(n, 0);
  for (int a = 0; a < n; ++a) {
    ElemSet o = 0;
    for (int x = 0; x < n; ++x) o |= elem_bit(f.arrow(a, x));
    f.open_set[a] = o;
  }
  return f;
}

LatticeMap map_from_json(const json& j, Frame& source_holder, Frame& target_holder,
                         const std::string& base_dir) {
  if (!j.contains("source") || !j.contains("target") || !j.contains("assignments"))
    throw BadInput("map JSON needs \"source\", \"target\" and \"assignments\"");
  auto load_side = [&](const json& side) -> Frame {
    if (side.is_string()) {
      std::filesystem::path p = side.get<std::string>();
      if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
      return frame_from_any_json(load_json_file(p.string()));
    }
    return frame_from_any_json(side);
  };
  source_holder = load_side(j.at("source"));
  target_holder = load_side(j.at("target"));

  LatticeMap m;
  m.source = &source_holder;
  m.target = &target_holder;
  m.values.assign(source_holder.size(), -1);
  for (const auto& [src_label, tgt_label] : j.at("assignments").items()) {
    auto a = source_holder.index_of(src_label);
    if (!a) throw UnknownElement("unknown source element: " + src_label);
    auto b = target_holder.index_of(tgt_label.get<std::string>());
    if (!b) throw UnknownElement("unknown target element: " + tgt_label.get<std::string>());
    if (m.values[*a] != -1) throw BadInput("duplicate assignment for " + src_label);
    m.values[*a] = *b;
  }
  for (int a = 0; a < source_holder.size(); ++a)
    if (m.values[a] == -1)
      throw BadInput("missing assignment for " + source_holder.label(a));
  return m;
}

json map_to_json(const LatticeMap& f) {
  json assignments = json::object();
  for (int a = 0; a < f.src_size(); ++a)
    assignments[f.source->label(a)] = f.target->label(f.values[a]);
  return json{{"source", frame_to_json(*f.source)},
              {"target", frame_to_json(*f.target)},
              {"assignments", assignments}};
}

namespace {

json member_labels(const Frame& f, ElemSet s) {
  json out = json::array();
  for_each_elem(s, [&](int i) { out.push_back(f.label(i)); });
  return out;
}

}  // namespace

json sublocale_lattice_to_json(const SublocaleLattice& sl) {
  const Frame& f = *sl.frame;
  json subs = json::array();
  for (const auto& s : sl.all) {
    json e{{"members", member_labels(f, s.members)}};
    if (s.open_at) e["open"] = f.label(*s.open_at);
    if (s.closed_at) e["closed"] = f.label(*s.closed_at);
    subs.push_back(std::move(e));
  }
  json containment = json::array();
  for (int i = 0; i < sl.size(); ++i)
    for (int k = 0; k < sl.size(); ++k)
      if (i != k && sl.contains_idx(i, k)) containment.push_back(json::array({i, k}));
  return json{{"frame", f.name}, {"count", sl.size()},
              {"sublocales", subs}, {"containment", containment}};
}

json classification_to_json(const MapClassification& c, const LatticeMap& f) {
  json out{{"monotone", c.monotone},
           {"meet_preserving", c.meet_preserving},
           {"L1", c.l1},
           {"L2", c.l2},
           {"localic", c.localic}};
  json w = json::object();
  if (c.monotone_witness)
    w["monotone"] = json::array({f.source->label(c.monotone_witness->first),
                                 f.source->label(c.monotone_witness->second)});
  if (c.meet_witness) w["meet_subset"] = member_labels(*f.source, *c.meet_witness);
  if (c.preimage_witness) w["closed_preimage"] = f.target->label(*c.preimage_witness);
  if (c.l1_witness) w["L1"] = f.source->label(*c.l1_witness);
  if (c.l2_witness)
    w["L2"] = json::array({f.target->label(c.l2_witness->first),
                           f.source->label(c.l2_witness->second)});
  if (!w.empty()) out["witnesses"] = w;
  return out;
}

json jt_to_json(const JTReport& r, const LatticeMap& f) {
  json out{{"open", r.open_images},
           {"complete_heyting", r.complete_heyting},
           {"frobenius", r.frobenius},
           {"arrow_identity", r.arrow_identity},
           {"agree", r.all_equal()},
           {"lemma_4_1", r.lemma_4_1},
           {"shriek_exists", r.shriek_exists}};
  if (r.shriek_exists) {
    json sh = json::object();
    for (int a = 0; a < f.src_size(); ++a)
      sh[f.source->label(a)] = f.target->label(r.shriek[a]);
    out["shriek"] = sh;
  }
  json adj = json::object();
  for (int b = 0; b < f.tgt_size(); ++b) adj[f.target->label(b)] = f.source->label(r.adjoint[b]);
  out["adjoint"] = adj;
  if (r.heyting_witness)
    out["heyting_witness"] = json::array({f.target->label(r.heyting_witness->first),
                                          f.target->label(r.heyting_witness->second)});
  if (r.frobenius_witness)
    out["frobenius_witness"] = json::array({f.source->label(r.frobenius_witness->first),
                                            f.target->label(r.frobenius_witness->second)});
  return out;
}

json hierarchy_to_json(const HierarchyReport& r, const LatticeMap& f) {
  json out{{"skeletal", r.skeletal},
           {"nearly_open", r.nearly_open},
           {"hereditarily_skeletal", r.hereditarily_skeletal},
           {"sub_open", r.sub_open},
           {"open", r.open},
           {"chain_ok", r.chain_ok()},
           {"prop_5_6_agree", r.prop_5_6_agree}};
  if (r.skeletal_witness) out["skeletal_witness"] = f.target->label(*r.skeletal_witness);
  if (r.nearly_open_witness) out["nearly_open_witness"] = f.target->label(*r.nearly_open_witness);
  if (r.hs_witness)
    out["hereditarily_skeletal_witness"] =
        json::array({f.target->label(r.hs_witness->first), f.target->label(r.hs_witness->second)});
  if (r.sub_open_witness)
    out["sub_open_witness"] = json::array({f.target->label(r.sub_open_witness->first),
                                           f.target->label(r.sub_open_witness->second)});
  if (r.open_witness) out["open_witness"] = f.source->label(*r.open_witness);
  return out;
}

json open_closed_to_json(const OpenClosedReport& r, const LatticeMap& f) {
  json out{{"open", r.is_open}, {"closed", r.is_closed}};
  if (r.open_witness) out["open_witness"] = f.source->label(*r.open_witness);
  if (r.closed_witness) out["closed_witness"] = f.source->label(*r.closed_witness);
  if (r.closed_conditions) {
    json c = json::array();
    for (bool b : *r.closed_conditions) c.push_back(b);
    out["closed_conditions"] = c;
  }
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInput("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw BadInput("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw BadInput("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace lolab
