#include "locale_lab/theorems.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <random>
#include <thread>

#include "locale_lab/json_io.hpp"

namespace lolab {

using nlohmann::json;

namespace {

struct InstanceInfo {
  const FrameContext* src = nullptr;
  const FrameContext* tgt = nullptr;
  const LatticeMap* map = nullptr;
  QuickFlags flags;
  std::vector<ElemId> adjoint;  // valid when meet_preserving
};

struct CheckOutcome {
  bool counted = false;
  std::optional<json> witness;
};

struct TheoremDef {
  std::string id;
  std::string title;
  bool frame_level = false;
  bool needs_subs = false;
  MapClass domain = MapClass::all;
  std::function<CheckOutcome(const FrameContext&)> frame_fn;
  std::function<CheckOutcome(const InstanceInfo&)> map_fn;
};

json fail(const std::string& check, json detail = json::object()) {
  detail["check"] = check;
  return detail;
}

bool broad_open(const LatticeMap& f) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  for (int a = 0; a < src.size(); ++a) {
    ElemSet img = raw_image(f, src.open_set[a]);
    if (std::find(tgt.open_set.begin(), tgt.open_set.end(), img) == tgt.open_set.end())
      return false;
  }
  return true;
}

bool broad_closed(const LatticeMap& f) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  for (int a = 0; a < src.size(); ++a) {
    ElemSet img = raw_image(f, src.upset[a]);
    if (std::find(tgt.upset.begin(), tgt.upset.end(), img) == tgt.upset.end()) return false;
  }
  return true;
}

// ---- frame-level checks ----

CheckOutcome check_heyting(const FrameContext& ctx) {
  const Frame& f = ctx.frame;
  const int n = f.size();
  CheckOutcome out;
  out.counted = true;
  auto wit = [&](const char* rule, std::initializer_list<ElemId> ids) {
    json elems = json::array();
    for (ElemId i : ids) elems.push_back(f.label(i));
    return fail(rule, {{"elements", elems}});
  };

  for (int a = 0; a < n; ++a) {
    if (f.arrow(f.top(), a) != a) return {true, wit("H1-unit", {a})};
    if (!f.leq(a, f.pseudo(f.pseudo(a)))) return {true, wit("double-negation", {a})};
    for (int b = 0; b < n; ++b)
      if ((f.arrow(a, b) == f.top()) != f.leq(a, b)) return {true, wit("H1-order", {a, b})};
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        ElemId lhs = f.arrow(a, f.arrow(b, c));
        if (lhs != f.arrow(f.meet(a, b), c) || lhs != f.arrow(b, f.arrow(a, c)))
          return {true, wit("H3", {a, b, c})};
        if (f.leq(f.meet(a, b), c) != f.leq(a, f.arrow(b, c)))
          return {true, wit("adjunction", {a, b, c})};
      }
  if (n <= 16) {
    const ElemSet whole = f.all();
    for (ElemSet m = 0;; ++m) {
      ElemId meet_m = f.meet_all(m);
      ElemId join_m = f.join_all(m);
      for (int a = 0; a < n; ++a) {
        ElemSet arrows_into = 0, arrows_from = 0;
        for_each_elem(m, [&](int b) {
          arrows_into |= elem_bit(f.arrow(a, b));
          arrows_from |= elem_bit(f.arrow(b, a));
        });
        if (f.arrow(a, meet_m) != f.meet_all(arrows_into)) return {true, wit("H2", {a})};
        if (f.arrow(join_m, a) != f.meet_all(arrows_from)) return {true, wit("H4", {a})};
      }
      if (m == whole) break;
    }
  } else {
    // Folds reduce arbitrary index sets to the binary/empty cases.
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          if (f.arrow(a, f.meet(b, c)) != f.meet(f.arrow(a, b), f.arrow(a, c)))
            return {true, wit("H2", {a, b, c})};
          if (f.arrow(f.join(b, c), a) != f.meet(f.arrow(b, a), f.arrow(c, a)))
            return {true, wit("H4", {a, b, c})};
        }
  }
  return out;
}

CheckOutcome check_oracle_frame(const FrameContext& ctx) {
  const Frame& f = ctx.frame;
  const int n = f.size();
  CheckOutcome out;
  out.counted = true;

  // Arrow table against the brute-force greatest element of {c : c ^ a <= b}.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      ElemSet cs = 0;
      for (int c = 0; c < n; ++c)
        if (f.leq(f.meet(c, a), b)) cs |= elem_bit(c);
      std::optional<ElemId> max;
      for_each_elem(cs, [&](int c) {
        if (subset_of(cs, f.downset[c])) max = c;
      });
      if (!max || *max != f.arrow(a, b))
        return {true, fail("arrow-brute-force",
                           {{"a", f.label(a)}, {"b", f.label(b)}})};
    }

  // Least sublocale containing X against the intersection of all enumerated
  // sublocales above X.
  if (n <= kSubsetLawCap) {
    const ElemSet whole = f.all();
    for (ElemSet x = 0;; ++x) {
      ElemSet direct = least_sublocale_containing(f, x).members;
      ElemSet meet = whole;
      for (const auto& s : ctx.subs->all)
        if (subset_of(x, s.members)) meet &= s.members;
      if (direct != meet)
        return {true, fail("least-sublocale", {{"subset", json(x)}})};
      if (x == whole) break;
    }
  }
  return out;
}

// ---- map-level checks ----

CheckOutcome check_type_i(const InstanceInfo& info) {
  const LatticeMap& f = *info.map;
  CheckOutcome out;
  out.counted = true;
  std::optional<std::pair<ElemId, ElemId>> w;
  bool pair_i = adjoint_pair_holds(f, AdjunctionType::I, &w);
  if (pair_i != info.flags.meet_preserving)
    return {true, fail("pair-I-vs-meet-preservation",
                       {{"pair", pair_i}, {"meet_preserving", info.flags.meet_preserving}})};
  auto chain = lemma_type_i_chain(f);
  for (size_t k = 1; k < chain.size(); ++k)
    if (chain[k] != chain[0])
      return {true, fail("lemma-3-1-2-chain", {{"condition", k + 1}})};
  if (localic_by_type_i_theorem(f) != info.flags.localic)
    return {true, fail("thm-3-1-5", {{"localic", info.flags.localic}})};
  return out;
}

CheckOutcome check_type_ii(const InstanceInfo& info) {
  const LatticeMap& f = *info.map;
  CheckOutcome out;
  out.counted = true;
  if (localic_by_interior_test(f) != info.flags.localic)
    return {true, fail("prop-3-2-5", {{"localic", info.flags.localic}})};
  if (info.flags.monotone) {
    std::optional<std::pair<ElemId, ElemId>> w;
    bool pair_ii = adjoint_pair_holds(f, AdjunctionType::II, &w);
    if (pair_ii != info.flags.localic)
      return {true, fail("pair-II-vs-localic",
                         {{"pair", pair_ii}, {"localic", info.flags.localic}})};
  }
  if (info.flags.meet_preserving && !lemma_3_2_4_holds(f))
    return {true, fail("lemma-3-2-4")};
  return out;
}

CheckOutcome check_type_iii(const InstanceInfo& info) {
  const LatticeMap& f = *info.map;
  CheckOutcome out;
  out.counted = true;
  bool open = broad_open(f);
  bool pair_iii = adjoint_pair_holds(f, AdjunctionType::III);
  if (info.flags.meet_preserving) {
    if (pair_iii != open)
      return {true, fail("pair-III-vs-open", {{"pair", pair_iii}, {"open", open}})};
    auto chain = lemma_type_iii_chain(f);
    for (size_t k = 1; k < chain.size(); ++k)
      if (chain[k] != chain[0])
        return {true, fail("lemma-3-3-1-chain", {{"condition", k + 1}})};
  }
  bool pair_ii = adjoint_pair_holds(f, AdjunctionType::II);
  if ((pair_ii && pair_iii) != (info.flags.localic && open))
    return {true, fail("triple-open", {{"pair_ii", pair_ii},
                                       {"pair_iii", pair_iii},
                                       {"open_localic", info.flags.localic && open}})};
  return out;
}

CheckOutcome check_type_iv(const InstanceInfo& info) {
  const LatticeMap& f = *info.map;
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  CheckOutcome out;
  out.counted = true;
  bool open = broad_open(f);
  TypeAssignments asg;
  bool pair_iv = adjoint_pair_holds(f, AdjunctionType::IV, nullptr, &asg);
  if (info.flags.meet_preserving) {
    if (pair_iv != (info.flags.localic && open))
      return {true, fail("pair-IV-vs-open-localic",
                         {{"pair", pair_iv}, {"open_localic", info.flags.localic && open}})};
    bool phi_adj = true;
    for (int a = 0; a < src.size() && phi_adj; ++a)
      for (int b = 0; b < tgt.size(); ++b)
        if (src.leq(a, info.adjoint[b]) != tgt.leq(asg.forward[a], b)) {
          phi_adj = false;
          break;
        }
    if (phi_adj != pair_iv)
      return {true, fail("lemma-3-4-phi", {{"phi_adjunction", phi_adj}, {"pair", pair_iv}})};
  }
  bool pair_i = adjoint_pair_holds(f, AdjunctionType::I);
  if ((pair_i && pair_iv) != (info.flags.localic && open))
    return {true, fail("triple-closed", {{"pair_i", pair_i},
                                         {"pair_iv", pair_iv},
                                         {"open_localic", info.flags.localic && open}})};
  return out;
}

CheckOutcome check_jt(const InstanceInfo& info) {
  auto r = joyal_tierney(*info.map);
  CheckOutcome out;
  out.counted = true;
  if (!r.all_equal())
    return {true, fail("jt-conditions-disagree", jt_to_json(r, *info.map))};
  return out;
}

CheckOutcome check_lemma_4_1(const InstanceInfo& info) {
  const LatticeMap& f = *info.map;
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  CheckOutcome out;
  out.counted = true;
  for (int a = 0; a < src.size(); ++a)
    for (int b = 0; b < tgt.size(); ++b) {
      ElemSet lhs = raw_image(f, src.open_set[a] & src.open_set[info.adjoint[b]]);
      ElemSet rhs = raw_image(f, src.open_set[a]) & tgt.open_set[b];
      if (lhs != rhs)
        return {true, fail("lemma-4-1", {{"a", src.label(a)}, {"b", tgt.label(b)}})};
    }
  return out;
}

CheckOutcome check_prop_4_4(const InstanceInfo& info) {
  const LatticeMap& f = *info.map;
  const Frame& src = *f.source;
  CheckOutcome out;
  if (!broad_open(f)) return out;  // quantified over open localic maps only
  out.counted = true;
  for (const auto& t : info.tgt->subs->all) {
    ElemSet star_image = 0;
    for_each_elem(t.members, [&](int b) { star_image |= elem_bit(info.adjoint[b]); });
    ElemSet least = least_sublocale_containing(src, star_image).members;
    ElemSet raw = raw_preimage(f, t.members);
    ElemSet loc = localic_preimage_set(f, t.members);
    if (!subset_of(least, raw) || !subset_of(star_image, loc))
      return {true, fail("prop-4-4", {{"T", json(t.members)}})};
  }
  return out;
}

CheckOutcome check_hierarchy(const InstanceInfo& info) {
  auto r = skeletal_hierarchy(*info.map, *info.tgt->subs);
  CheckOutcome out;
  out.counted = true;
  if (!r.chain_ok())
    return {true, fail("hierarchy-chain", hierarchy_to_json(r, *info.map))};
  return out;
}

CheckOutcome check_prop_5_6(const InstanceInfo& info) {
  auto r = skeletal_hierarchy(*info.map, *info.tgt->subs);
  CheckOutcome out;
  out.counted = true;
  if (!r.prop_5_6_agree)
    return {true, fail("prop-5-6-conditions", hierarchy_to_json(r, *info.map))};
  return out;
}

CheckOutcome check_dissolution(const InstanceInfo& info) {
  auto r = dissolution_report(*info.map, *info.src->subs, *info.tgt->subs);
  auto h = skeletal_hierarchy(*info.map, *info.tgt->subs);
  CheckOutcome out;
  out.counted = true;
  if (!r.naturality) return {true, fail("dissolution-naturality")};
  if (!r.inequality) return {true, fail("dissolution-inequality")};
  if (r.equality != h.hereditarily_skeletal)
    return {true, fail("dissolution-equality-vs-hereditarily-skeletal",
                       {{"equality", r.equality},
                        {"hereditarily_skeletal", h.hereditarily_skeletal}})};
  if (r.open_inequality && !*r.open_inequality)
    return {true, fail("dissolution-open-inequality")};
  return out;
}

CheckOutcome check_commutativity(const InstanceInfo& info) {
  auto rep = commutativity_report(*info.map, *info.src->subs, *info.tgt->subs);
  CheckOutcome out;
  out.counted = true;
  for (const auto& law : rep.laws)
    if (law.verdict == LawResult::Verdict::fail)
      return {true, fail("law-" + law.law, {{"witness", law.witness}})};
  return out;
}

CheckOutcome check_prop_5_5(const InstanceInfo& info) {
  bool open_localic = info.flags.localic && broad_open(*info.map);
  CheckOutcome out;
  out.counted = true;
  if (auto w = laws::prop_5_5(*info.map, open_localic, *info.tgt->subs))
    return {true, fail("prop-5-5", {{"witness", *w}})};
  return out;
}

CheckOutcome check_closed_6_1(const InstanceInfo& info) {
  CheckOutcome out;
  if (info.map->src_size() > kSubsetLawCap) return out;
  out.counted = true;
  if (auto w = laws::lemma_6_1(*info.map, info.flags.meet_preserving))
    return {true, fail("lemma-6-1", {{"witness", *w}})};
  if (info.flags.monotone)
    if (auto w = laws::lemma_6_2(*info.map, *info.src->subs))
      return {true, fail("lemma-6-2", {{"witness", *w}})};
  return out;
}

CheckOutcome check_closed_6_3(const InstanceInfo& info) {
  CheckOutcome out;
  if (info.map->src_size() > kSubsetLawCap) return out;
  out.counted = true;
  if (auto w = laws::prop_6_3(*info.map, broad_closed(*info.map), *info.src->subs))
    return {true, fail("prop-6-3", {{"witness", *w}})};
  return out;
}

CheckOutcome check_closed_6_5(const InstanceInfo& info) {
  CheckOutcome out;
  if (info.map->src_size() > kSubsetLawCap) return out;
  out.counted = true;
  bool closed = broad_closed(*info.map);
  if (auto w = laws::cor_6_4(*info.map, closed && info.flags.meet_preserving))
    return {true, fail("cor-6-4", {{"witness", *w}})};
  if (info.flags.meet_preserving)
    if (auto w = laws::cor_6_5(*info.map, closed, *info.src->subs))
      return {true, fail("cor-6-5", {{"witness", *w}})};
  return out;
}

CheckOutcome check_closed_6_6(const InstanceInfo& info) {
  CheckOutcome out;
  out.counted = true;
  if (auto w = laws::prop_6_6(*info.map, broad_open(*info.map), *info.src->subs))
    return {true, fail("prop-6-6", {{"witness", *w}})};
  return out;
}

CheckOutcome check_subfit_open(const InstanceInfo& info) {
  CheckOutcome out;
  if (!info.tgt->subfit) return out;
  out.counted = true;
  LatticeMap star;
  star.source = info.map->target;
  star.target = info.map->source;
  star.values = info.adjoint;
  bool complete_hom = map_preserves_all_meets(star) && map_preserves_all_joins(star);
  bool open = broad_open(*info.map);
  if (open != complete_hom)
    return {true, fail("subfit-open", {{"open", open}, {"complete_hom", complete_hom}})};
  return out;
}

std::vector<TheoremDef> build_registry() {
  std::vector<TheoremDef> defs;
  auto add_frame = [&](std::string id, std::string title, bool subs,
                       std::function<CheckOutcome(const FrameContext&)> fn) {
    TheoremDef d;
    d.id = std::move(id);
    d.title = std::move(title);
    d.frame_level = true;
    d.needs_subs = subs;
    d.frame_fn = std::move(fn);
    defs.push_back(std::move(d));
  };
  auto add_map = [&](std::string id, std::string title, MapClass domain, bool subs,
                     std::function<CheckOutcome(const InstanceInfo&)> fn) {
    TheoremDef d;
    d.id = std::move(id);
    d.title = std::move(title);
    d.domain = domain;
    d.needs_subs = subs;
    d.map_fn = std::move(fn);
    defs.push_back(std::move(d));
  };

  add_frame("heyting", "Heyting rules H1-H4, double negation, arrow adjunction", false,
            check_heyting);
  add_frame("oracle-frame", "arrow brute-force and least-sublocale intersection oracles", true,
            check_oracle_frame);
  add_map("oracle-preimage", "pruning fixpoint equals enumerated sublocale join",
          MapClass::meet_preserving, true, [](const InstanceInfo& info) -> CheckOutcome {
            const LatticeMap& f = *info.map;
            const Frame& src = *f.source;
            for (ElemSet t : info.tgt->meet_subsets) {
              ElemSet fix = localic_preimage_set(f, t);
              ElemSet raw = raw_preimage(f, t);
              ElemSet parts = 0;
              for (const auto& s : info.src->subs->all)
                if (subset_of(s.members, raw)) parts |= s.members;
              if (fix != meet_closure_set(src, parts))
                return {true, fail("oracle-preimage", {{"T", json(t)}})};
            }
            return {true, std::nullopt};
          });
  add_map("type-I", "adjoint pair I iff meet-preserving; Lemma 3.1.2 chain; Thm 3.1.5",
          MapClass::all, false, check_type_i);
  add_map("type-II", "adjoint pair II iff localic; Prop 3.2.5; Lemma 3.2.4",
          MapClass::all, false, check_type_ii);
  add_map("type-III", "adjoint pair III iff open; Lemma 3.3.1 chain; open triple",
          MapClass::monotone, false, check_type_iii);
  add_map("type-IV", "adjoint pair IV iff open localic; phi lemma; closed triple",
          MapClass::all, false, check_type_iv);
  add_map("jt", "Joyal-Tierney conditions (i)-(iv) agree on localic maps",
          MapClass::localic, false, check_jt);
  add_map("lemma-4-1", "f[o(a) n o(f*(b))] = f[o(a)] n o(b)", MapClass::localic, false,
          check_lemma_4_1);
  add_map("prop-4-4", "f*[T] lands inside the localic preimage for open localic maps",
          MapClass::localic, true, check_prop_4_4);
  add_map("hierarchy", "open => sub-open => hereditarily skeletal => nearly open => skeletal",
          MapClass::localic, true, check_hierarchy);
  add_map("prop-5-6", "closure-commutation conditions coincide with the Johnstone identity",
          MapClass::localic, true, check_prop_5_6);
  add_map("dissolution", "dissolution naturality and the hereditarily-skeletal equality",
          MapClass::localic, true, check_dissolution);
  add_map("commutativity", "preimage commutation laws (C1), (C2), 5.1, 5.2, 5.4, 5.5",
          MapClass::meet_preserving, true, check_commutativity);
  add_map("prop-5-5", "interior-complement law iff open localic, over all maps",
          MapClass::all, true, check_prop_5_5);
  add_map("closed-6-1", "image-closure containment iff meet-preserving", MapClass::all, true,
          check_closed_6_1);
  add_map("closed-6-3", "closure-image containment iff closed", MapClass::all, true,
          check_closed_6_3);
  add_map("closed-6-5", "image-closure equalities iff closed (meet-preserving)", MapClass::all,
          true, check_closed_6_5);
  add_map("closed-6-6", "image-interior containment iff open (meet-preserving)",
          MapClass::meet_preserving, true, check_closed_6_6);
  add_map("subfit-open", "open iff complete lattice homomorphism adjoint, subfit targets",
          MapClass::localic, false, check_subfit_open);
  return defs;
}

const std::vector<TheoremDef>& registry() {
  static const std::vector<TheoremDef> defs = build_registry();
  return defs;
}

const TheoremDef& find_theorem(const std::string& id) {
  for (const auto& d : registry())
    if (d.id == id) return d;
  throw UnknownTheorem("unknown theorem: " + id);
}

void build_structures(Catalog& cat) {
  for (auto& ctx : cat.frames) {
    if (!ctx.subs) {
      ctx.subs = std::make_shared<const SublocaleLattice>(enumerate_sublocales(ctx.frame));
      ctx.meet_subsets = enumerate_meet_subsets(ctx.frame);
    }
  }
}

}  // namespace

std::vector<std::string> theorem_ids() {
  std::vector<std::string> out;
  for (const auto& d : registry()) out.push_back(d.id);
  return out;
}

bool theorem_known(const std::string& id) {
  for (const auto& d : registry())
    if (d.id == id) return true;
  return false;
}

std::string theorem_title(const std::string& id) { return find_theorem(id).title; }

VerificationReport verify_theorem(const std::string& theorem_id, const CatalogSpec& spec) {
  const TheoremDef& def = find_theorem(theorem_id);
  auto t0 = std::chrono::steady_clock::now();

  Catalog cat = generate_catalog(spec);
  if (def.needs_subs) build_structures(cat);

  VerificationReport report;
  report.theorem_id = theorem_id;

  if (def.frame_level) {
    for (const auto& ctx : cat.frames) {
      report.instances_checked["frames"]++;
      auto outcome = def.frame_fn(ctx);
      if (outcome.counted) report.instances_checked["checked"]++;
      if (outcome.witness) {
        report.pass = false;
        report.first_counterexample =
            json{{"theorem", theorem_id},
                 {"kind", "frame-instance"},
                 {"frame_raw", frame_to_raw_json(ctx.frame)},
                 {"detail", *outcome.witness}};
        break;
      }
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
  }

  const int fcount = cat.size();
  const int pair_count = fcount * fcount;
  struct Candidate {
    std::uint64_t pair_ord;
    std::uint64_t rank;
    json witness;
  };
  std::mutex merge_mutex;
  std::optional<Candidate> best;
  std::atomic<std::uint64_t> best_pair{static_cast<std::uint64_t>(pair_count)};
  std::atomic<int> next_pair{0};
  std::map<std::string, std::uint64_t> counts;
  bool truncated = false;

  const int jobs = resolve_jobs(spec);
  auto worker = [&]() {
    std::map<std::string, std::uint64_t> local;
    bool local_trunc = false;
    std::optional<Candidate> local_best;
    for (;;) {
      int p = next_pair.fetch_add(1);
      if (p >= pair_count) break;
      if (static_cast<std::uint64_t>(p) > best_pair.load()) continue;
      const auto& src = cat.frames[p / fcount];
      const auto& tgt = cat.frames[p % fcount];
      InstanceInfo info;
      info.src = &src;
      info.tgt = &tgt;
      auto stats = for_each_map(
          src.frame, tgt.frame, def.domain, spec.max_maps_per_pair,
          [&](std::uint64_t rank, const LatticeMap& map) {
            info.map = &map;
            info.flags = quick_classify(map, &info.adjoint);
            local["instances"]++;
            if (info.flags.monotone) local["monotone"]++;
            if (info.flags.meet_preserving) local["meet_preserving"]++;
            if (info.flags.localic) local["localic"]++;
            auto outcome = def.map_fn(info);
            if (outcome.counted) local["checked"]++;
            if (outcome.witness) {
              Candidate c{static_cast<std::uint64_t>(p), rank,
                          json{{"theorem", def.id},
                               {"kind", "map-instance"},
                               {"source_raw", frame_to_raw_json(src.frame)},
                               {"target_raw", frame_to_raw_json(tgt.frame)},
                               {"map_values", map.values},
                               {"rank", rank},
                               {"detail", *outcome.witness}}};
              if (!local_best || c.pair_ord < local_best->pair_ord) local_best = std::move(c);
              std::uint64_t cur = best_pair.load();
              while (cur > static_cast<std::uint64_t>(p) &&
                     !best_pair.compare_exchange_weak(cur, p)) {
              }
              return false;  // first failure in this pair is minimal by rank
            }
            return true;
          });
      local["functions_scanned"] += stats.scanned;
      if (stats.truncated) local_trunc = true;
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    for (const auto& [k, v] : local) counts[k] += v;
    if (local_trunc) truncated = true;
    if (local_best && (!best || local_best->pair_ord < best->pair_ord ||
                       (local_best->pair_ord == best->pair_ord && local_best->rank < best->rank)))
      best = std::move(local_best);
  };

  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  report.instances_checked = std::move(counts);
  report.truncated = truncated;
  if (best) {
    report.pass = false;
    report.first_counterexample = std::move(best->witness);
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

bool replay_witness(const json& witness) {
  const std::string kind = witness.value("kind", "");
  if (kind == "frame-tables") {
    Frame f = frame_from_raw_json(witness.at("frame_raw"));
    return find_table_violation(f).has_value();
  }
  if (kind == "fixture-map") {
    Frame src = frame_from_raw_json(witness.at("source_raw"));
    Frame tgt = frame_from_raw_json(witness.at("target_raw"));
    LatticeMap map;
    map.source = &src;
    map.target = &tgt;
    map.values = witness.at("map_values").get<std::vector<ElemId>>();
    auto expected = witness.at("expected_values").get<std::vector<ElemId>>();
    return map.values != expected;
  }
  if (kind == "frame-instance") {
    const TheoremDef& def = find_theorem(witness.at("theorem").get<std::string>());
    try {
      FrameContext ctx;
      ctx.frame = frame_from_raw_json(witness.at("frame_raw"));
      ctx.subfit = is_subfit(ctx.frame).subfit;
      if (def.needs_subs) {
        ctx.subs = std::make_shared<const SublocaleLattice>(enumerate_sublocales(ctx.frame));
        ctx.meet_subsets = enumerate_meet_subsets(ctx.frame);
      }
      auto outcome = def.frame_fn(ctx);
      return outcome.witness.has_value();
    } catch (const Error&) {
      return true;  // the instance cannot even be rebuilt cleanly
    }
  }
  if (kind == "search-witness") {
    // Re-evaluate the recorded flags from the embedded tables.
    Frame src = frame_from_raw_json(witness.at("source_raw"));
    Frame tgt = frame_from_raw_json(witness.at("target_raw"));
    LatticeMap map;
    map.source = &src;
    map.target = &tgt;
    map.values = witness.at("map_values").get<std::vector<ElemId>>();
    auto flags = quick_classify(map);
    const auto& recorded = witness.at("flags");
    if (recorded.value("localic", false) != flags.localic) return false;
    if (recorded.value("meet_preserving", false) != flags.meet_preserving) return false;
    return true;
  }
  if (kind == "map-instance") {
    const TheoremDef& def = find_theorem(witness.at("theorem").get<std::string>());
    try {
      FrameContext src, tgt;
      src.frame = frame_from_raw_json(witness.at("source_raw"));
      tgt.frame = frame_from_raw_json(witness.at("target_raw"));
      src.subfit = is_subfit(src.frame).subfit;
      tgt.subfit = is_subfit(tgt.frame).subfit;
      if (def.needs_subs) {
        src.subs = std::make_shared<const SublocaleLattice>(enumerate_sublocales(src.frame));
        src.meet_subsets = enumerate_meet_subsets(src.frame);
        tgt.subs = std::make_shared<const SublocaleLattice>(enumerate_sublocales(tgt.frame));
        tgt.meet_subsets = enumerate_meet_subsets(tgt.frame);
      }
      LatticeMap map;
      map.source = &src.frame;
      map.target = &tgt.frame;
      map.values = witness.at("map_values").get<std::vector<ElemId>>();
      InstanceInfo info;
      info.src = &src;
      info.tgt = &tgt;
      info.map = &map;
      info.flags = quick_classify(map, &info.adjoint);
      auto outcome = def.map_fn(info);
      return outcome.witness.has_value();
    } catch (const Error&) {
      return true;
    }
  }
  throw BadInput("unknown witness kind: " + kind);
}

// ---- mutation sensitivity ----

namespace {

Frame chain_frame(const std::vector<std::string>& labels, const std::string& name) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (size_t i = 0; i + 1 < labels.size(); ++i) pairs.emplace_back(labels[i], labels[i + 1]);
  return frame_check(lattice_from_order(labels, pairs, OrderMode::covers), name);
}

struct FixtureMap {
  std::string name;
  LatticeMap map;
  std::vector<ElemId> expected_values;
  std::vector<ElemId> expected_adjoint;
  bool localic, open, closed;
};

struct Fixtures {
  std::deque<Frame> frames;
  std::vector<FixtureMap> maps;
};

Fixtures make_fixtures() {
  Fixtures fx;
  fx.frames.push_back(chain_frame({"0", "1"}, "C2"));
  fx.frames.push_back(chain_frame({"0", "a", "1"}, "C3"));
  fx.frames.push_back(frame_check(
      lattice_from_order({"0", "p", "q", "1"},
                         {{"0", "p"}, {"0", "q"}, {"p", "1"}, {"q", "1"}}, OrderMode::covers),
      "B2"));
  fx.frames.push_back(chain_frame({"0", "a", "b", "1"}, "C4"));
  fx.frames.push_back(chain_frame({"0", "c", "1"}, "C3c"));
  fx.frames.push_back(chain_frame({"a", "1"}, "Sa"));
  Frame& c3 = fx.frames[1];
  Frame& c4 = fx.frames[3];
  Frame& c3c = fx.frames[4];
  Frame& sa = fx.frames[5];

  auto add = [&](std::string name, const Frame& s, const Frame& t, std::vector<ElemId> v,
                 std::vector<ElemId> adj, bool localic, bool open, bool closed) {
    FixtureMap fm;
    fm.name = std::move(name);
    fm.map.source = &s;
    fm.map.target = &t;
    fm.map.values = v;
    fm.expected_values = std::move(v);
    fm.expected_adjoint = std::move(adj);
    fm.localic = localic;
    fm.open = open;
    fm.closed = closed;
    fx.maps.push_back(std::move(fm));
  };
  add("id", c3, c3, {0, 1, 2}, {0, 1, 2}, true, true, true);
  add("g_top", c3, c3, {2, 2, 2}, {0, 0, 0}, false, true, true);
  add("f_surj", c4, c3c, {0, 1, 1, 2}, {0, 1, 3}, true, true, true);
  add("j_closed", sa, c3, {1, 2}, {0, 0, 1}, true, false, true);
  return fx;
}

std::optional<json> run_detection_battery(const Fixtures& fx) {
  for (const auto& f : fx.frames)
    if (auto v = find_table_violation(f))
      return json{{"kind", "frame-tables"},
                  {"suite", "frame-tables"},
                  {"frame_raw", frame_to_raw_json(f)},
                  {"detail", {{"check", v->check}, {"a", v->a}, {"b", v->b}, {"c", v->c}}}};
  for (const auto& fm : fx.maps) {
    json base{{"kind", "fixture-map"},
              {"suite", "fixture-" + fm.name},
              {"source_raw", frame_to_raw_json(*fm.map.source)},
              {"target_raw", frame_to_raw_json(*fm.map.target)},
              {"map_values", fm.map.values},
              {"expected_values", fm.expected_values}};
    if (fm.map.values != fm.expected_values) return base;
    try {
      auto cls = classify_map(fm.map);
      if (cls.localic != fm.localic) return base;
      auto oc = open_closed_report(fm.map);
      if (oc.is_open != fm.open || oc.is_closed != fm.closed) return base;
      if (cls.meet_preserving && left_adjoint(fm.map).values != fm.expected_adjoint) return base;
    } catch (const Error&) {
      return base;  // classification blew up on corrupted tables
    }
  }
  return std::nullopt;
}

}  // namespace

MutationOutcome run_single_mutation(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Fixtures fx = make_fixtures();
  MutationOutcome out;

  if (rng() % 2 == 0) {
    auto& frame = fx.frames[rng() % fx.frames.size()];
    const int n = frame.size();
    int which = static_cast<int>(rng() % 3);
    std::vector<ElemId>& tab =
        which == 0 ? frame.lat.meet_tab : which == 1 ? frame.lat.join_tab : frame.arrow_tab;
    size_t cell = rng() % tab.size();
    ElemId old = tab[cell];
    ElemId neu = static_cast<ElemId>(rng() % n);
    while (n > 1 && neu == old) neu = static_cast<ElemId>(rng() % n);
    tab[cell] = neu;
    const char* tname = which == 0 ? "meet" : which == 1 ? "join" : "arrow";
    out.description = frame.name + " " + tname + "[" + std::to_string(cell / n) + "][" +
                      std::to_string(cell % n) + "] := " + frame.label(neu);
  } else {
    auto& fm = fx.maps[rng() % fx.maps.size()];
    size_t pos = rng() % fm.map.values.size();
    const int m = fm.map.target->size();
    ElemId old = fm.map.values[pos];
    ElemId neu = static_cast<ElemId>(rng() % m);
    while (m > 1 && neu == old) neu = static_cast<ElemId>(rng() % m);
    fm.map.values[pos] = neu;
    out.description = fm.name + "(" + fm.map.source->label(static_cast<ElemId>(pos)) +
                      ") := " + fm.map.target->label(neu);
  }

  if (auto w = run_detection_battery(fx)) {
    out.detected = true;
    out.failing_suite = w->value("suite", "");
    out.witness = *w;
  }
  return out;
}

}  // namespace lolab
