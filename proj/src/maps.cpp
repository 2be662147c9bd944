#include "locale_lab/maps.hpp"

#include <algorithm>

namespace lolab {

LatticeMap identity_map(const Frame& f) {
  LatticeMap m;
  m.source = &f;
  m.target = &f;
  m.values.resize(f.size());
  for (int i = 0; i < f.size(); ++i) m.values[i] = i;
  return m;
}

LatticeMap compose(const LatticeMap& outer, const LatticeMap& inner) {
  if (inner.target != outer.source) throw MixedFrames("composition frames do not match");
  LatticeMap m;
  m.source = inner.source;
  m.target = outer.target;
  m.values.resize(inner.values.size());
  for (size_t i = 0; i < inner.values.size(); ++i) m.values[i] = outer.values[inner.values[i]];
  return m;
}

ElemSet raw_image(const LatticeMap& f, ElemSet s) {
  ElemSet out = 0;
  for_each_elem(s, [&](int a) { out |= elem_bit(f.values[a]); });
  return out;
}

ElemSet raw_preimage(const LatticeMap& f, ElemSet t) {
  ElemSet out = 0;
  for (int a = 0; a < f.src_size(); ++a)
    if (has_elem(t, f.values[a])) out |= elem_bit(a);
  return out;
}

namespace {

// f^-1[c(b)] = c(a) for some a; returns a, or nullopt when the preimage is
// not a closed sublocale. Condition (2.6.1), the second meet-preservation
// route.
std::optional<ElemId> closed_preimage_witness(const LatticeMap& f, ElemId b) {
  const Frame& src = *f.source;
  ElemSet pre = raw_preimage(f, f.target->upset[b]);
  for (int a = 0; a < src.size(); ++a)
    if (src.upset[a] == pre) return a;
  return std::nullopt;
}

bool preserves_all_meets(const LatticeMap& f, std::optional<ElemSet>* witness) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  const int n = src.size();
  if (n <= 16) {
    const ElemSet whole = src.all();
    for (ElemSet m = 0;; ++m) {
      ElemId lhs = f.values[src.meet_all(m)];
      ElemId rhs = tgt.meet_all(raw_image(f, m));
      if (lhs != rhs) {
        if (witness) *witness = m;
        return false;
      }
      if (m == whole) break;
    }
    return true;
  }
  // Binary meets plus the empty meet generate all finite meets.
  if (f.values[src.top()] != tgt.top()) {
    if (witness) *witness = 0;
    return false;
  }
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      if (f.values[src.meet(a, b)] != tgt.meet(f.values[a], f.values[b])) {
        if (witness) *witness = elem_bit(a) | elem_bit(b);
        return false;
      }
  return true;
}

std::vector<ElemId> adjoint_by_meet_formula(const LatticeMap& f) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  std::vector<ElemId> adj(tgt.size());
  for (int b = 0; b < tgt.size(); ++b) {
    ElemSet over = 0;
    for (int a = 0; a < src.size(); ++a)
      if (tgt.leq(b, f.values[a])) over |= elem_bit(a);
    adj[b] = src.meet_all(over);
  }
  return adj;
}

}  // namespace

MapClassification classify_map(const LatticeMap& f) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  const int n = src.size();
  MapClassification c;

  for (int a = 0; a < n && c.monotone; ++a)
    for (int b = 0; b < n; ++b)
      if (src.leq(a, b) && !tgt.leq(f.values[a], f.values[b])) {
        c.monotone = false;
        c.monotone_witness = {a, b};
        break;
      }

  c.meet_preserving = preserves_all_meets(f, &c.meet_witness);
  bool closed_preimages = true;
  for (int b = 0; b < tgt.size(); ++b)
    if (!closed_preimage_witness(f, b)) {
      closed_preimages = false;
      if (!c.preimage_witness) c.preimage_witness = b;
      break;
    }
  if (closed_preimages != c.meet_preserving)
    throw Error("meet-preservation routes disagree");

  for (int a = 0; a < n; ++a)
    if (f.values[a] == tgt.top() && a != src.top()) {
      c.l1 = false;
      c.l1_witness = a;
      break;
    }

  if (!c.meet_preserving) {
    c.l2 = false;  // no left adjoint to bind h to
  } else {
    auto adj = adjoint_by_meet_formula(f);
    for (int a = 0; a < tgt.size() && c.l2; ++a)
      for (int b = 0; b < n; ++b) {
        ElemId lhs = f.values[src.arrow(adj[a], b)];
        ElemId rhs = tgt.arrow(a, f.values[b]);
        if (lhs != rhs) {
          c.l2 = false;
          c.l2_witness = {a, b};
          break;
        }
      }
  }
  c.localic = c.meet_preserving && c.l1 && c.l2;
  return c;
}

LatticeMap left_adjoint(const LatticeMap& f) {
  if (!preserves_all_meets(f, nullptr))
    throw NotMeetPreserving("map does not preserve all meets");
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  LatticeMap adj;
  adj.source = f.target;
  adj.target = f.source;
  adj.values = adjoint_by_meet_formula(f);
  for (int b = 0; b < tgt.size(); ++b) {
    for (int a = 0; a < src.size(); ++a)
      if (src.leq(adj.values[b], a) != tgt.leq(b, f.values[a]))
        throw Error("adjoint verification failed");
    if (!tgt.leq(b, f.values[adj.values[b]])) throw Error("adjunction unit failed");
    if (closed_preimage_witness(f, b) != adj.values[b])
      throw Error("closed-preimage identity failed for the adjoint");
  }
  for (int a = 0; a < src.size(); ++a)
    if (!src.leq(adj.values[f.values[a]], a)) throw Error("adjunction counit failed");
  return adj;
}

Sublocale image_sublocale(const LatticeMap& f, const Sublocale& s) {
  if (s.frame != f.source) throw MixedFrames("sublocale not in the map's source");
  if (!classify_map(f).localic) throw NotLocalic("image of a sublocale needs a localic map");
  ElemSet img = raw_image(f, s.members);
  if (!is_sublocale(*f.target, img).ok) throw Error("image is not a sublocale");
  return make_sublocale(*f.target, img);
}

ElemSet localic_preimage_set(const LatticeMap& f, ElemSet t) {
  const Frame& src = *f.source;
  ElemSet cur = raw_preimage(f, t);
  for (;;) {
    ElemSet next = 0;
    for_each_elem(cur, [&](int s) {
      for (int x = 0; x < src.size(); ++x)
        if (!has_elem(cur, src.arrow(x, s))) return;
      next |= elem_bit(s);
    });
    if (next == cur) return cur;
    cur = next;
  }
}

PreimageResult localic_preimage(const LatticeMap& f, const MeetSubset& t) {
  if (t.frame != f.target) throw MixedFrames("meet-subset not in the map's target");
  if (!preserves_all_meets(f, nullptr))
    throw NotMeetPreserving("localic preimage needs a meet-preserving map");
  PreimageResult r;
  r.raw = raw_preimage(f, t.members);
  r.localic = make_sublocale(*f.source, localic_preimage_set(f, t.members));
  return r;
}

PreimageResult localic_preimage(const LatticeMap& f, const Sublocale& t) {
  return localic_preimage(f, MeetSubset{t.frame, t.members});
}

OpenClosedReport open_closed_report(const LatticeMap& f) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  OpenClosedReport r;
  auto is_principal = [&](ElemSet set, const std::vector<ElemSet>& family) {
    return std::find(family.begin(), family.end(), set) != family.end();
  };
  for (int a = 0; a < src.size(); ++a) {
    if (r.is_open && !is_principal(raw_image(f, src.open_set[a]), tgt.open_set)) {
      r.is_open = false;
      r.open_witness = a;
    }
    if (r.is_closed && !is_principal(raw_image(f, src.upset[a]), tgt.upset)) {
      r.is_closed = false;
      r.closed_witness = a;
    }
  }
  if (!preserves_all_meets(f, nullptr)) return r;

  const auto adj = adjoint_by_meet_formula(f);
  std::array<bool, 4> cond{true, true, true, true};
  auto note = [&](int k, ElemId a, ElemId b) {
    if (cond[k] && !r.closed_cond_witness) r.closed_cond_witness = {a, b};
    cond[k] = false;
  };
  for (int a = 0; a < src.size(); ++a) {
    if (raw_image(f, src.upset[a]) != tgt.upset[f.values[a]]) note(0, a, -1);
    for (int b = 0; b < tgt.size(); ++b) {
      if (f.values[src.join(a, adj[b])] != tgt.join(f.values[a], b)) note(1, a, b);
      for (int cc = 0; cc < tgt.size(); ++cc) {
        bool lhs = tgt.leq(cc, tgt.join(f.values[a], b));
        bool rhs = src.leq(adj[cc], src.join(a, adj[b]));
        if (lhs != rhs) note(2, a, b);
        bool l4 = tgt.join(f.values[a], b) == tgt.join(f.values[a], cc);
        bool r4 = src.join(a, adj[b]) == src.join(a, adj[cc]);
        if (l4 != r4) note(3, a, b);
      }
    }
  }
  r.closed_conditions = cond;
  return r;
}

JTReport joyal_tierney(const LatticeMap& f) {
  auto cls = classify_map(f);
  if (!cls.localic) throw NotLocalic("Joyal-Tierney report needs a localic map");
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  JTReport r;
  r.adjoint = adjoint_by_meet_formula(f);
  const auto& adj = r.adjoint;

  // f_! = left adjoint of f*, via the smallest-b formula; kept only when the
  // adjunction law verifies.
  LatticeMap star;
  star.source = f.target;
  star.target = f.source;
  star.values = adj;
  bool star_meets = preserves_all_meets(star, nullptr);
  if (star_meets) {
    r.shriek = adjoint_by_meet_formula(star);
    r.shriek_exists = true;
    for (int a = 0; a < src.size() && r.shriek_exists; ++a)
      for (int b = 0; b < tgt.size(); ++b)
        if (tgt.leq(r.shriek[a], b) != src.leq(a, adj[b])) {
          r.shriek_exists = false;
          r.shriek.clear();
          break;
        }
  }

  r.open_images = true;
  for (int a = 0; a < src.size() && r.open_images; ++a) {
    ElemSet img = raw_image(f, src.open_set[a]);
    r.open_images = std::find(tgt.open_set.begin(), tgt.open_set.end(), img) !=
                    tgt.open_set.end();
  }

  // (ii): complete Heyting homomorphism = all meets + all joins + arrow.
  LatticeMap star_map = star;
  bool joins = true;
  {
    const int m = tgt.size();
    if (m <= 16) {
      const ElemSet whole = tgt.all();
      for (ElemSet mask = 0; joins; ++mask) {
        if (adj[tgt.join_all(mask)] != src.join_all(raw_image(star_map, mask))) joins = false;
        if (mask == whole) break;
      }
    } else {
      joins = adj[tgt.bottom()] == src.bottom();
      for (int b = 0; b < m && joins; ++b)
        for (int c = b; c < m; ++c)
          if (adj[tgt.join(b, c)] != src.join(adj[b], adj[c])) {
            joins = false;
            break;
          }
    }
  }
  bool heyting = true;
  for (int b = 0; b < tgt.size() && heyting; ++b)
    for (int c = 0; c < tgt.size(); ++c)
      if (adj[tgt.arrow(b, c)] != src.arrow(adj[b], adj[c])) {
        heyting = false;
        r.heyting_witness = {b, c};
        break;
      }
  r.complete_heyting = star_meets && joins && heyting;

  r.frobenius = r.shriek_exists;
  for (int a = 0; a < src.size() && r.frobenius; ++a)
    for (int b = 0; b < tgt.size(); ++b)
      if (r.shriek[src.meet(a, adj[b])] != tgt.meet(r.shriek[a], b)) {
        r.frobenius = false;
        r.frobenius_witness = {a, b};
        break;
      }

  r.arrow_identity = r.shriek_exists;
  for (int a = 0; a < src.size() && r.arrow_identity; ++a)
    for (int b = 0; b < tgt.size(); ++b)
      if (f.values[src.arrow(a, adj[b])] != tgt.arrow(r.shriek[a], b)) {
        r.arrow_identity = false;
        break;
      }

  r.lemma_4_1 = true;
  for (int a = 0; a < src.size() && r.lemma_4_1; ++a)
    for (int b = 0; b < tgt.size(); ++b) {
      ElemSet lhs = raw_image(f, src.open_set[a] & src.open_set[adj[b]]);
      ElemSet rhs = raw_image(f, src.open_set[a]) & tgt.open_set[b];
      if (lhs != rhs) {
        r.lemma_4_1 = false;
        break;
      }
    }
  return r;
}

HierarchyReport skeletal_hierarchy(const LatticeMap& f, const SublocaleLattice& tgt_subs) {
  auto cls = classify_map(f);
  if (!cls.localic) throw NotLocalic("skeletal hierarchy needs a localic map");
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  const auto adj = adjoint_by_meet_formula(f);
  HierarchyReport r;

  r.skeletal = true;
  for (int b = 0; b < tgt.size(); ++b)
    if (src.pseudo(adj[tgt.pseudo(b)]) != src.pseudo(src.pseudo(adj[b]))) {
      r.skeletal = false;
      r.skeletal_witness = b;
      break;
    }
  r.nearly_open = true;
  for (int b = 0; b < tgt.size(); ++b)
    if (adj[tgt.pseudo(b)] != src.pseudo(adj[b])) {
      r.nearly_open = false;
      r.nearly_open_witness = b;
      break;
    }
  r.hereditarily_skeletal = true;
  for (int b = 0; b < tgt.size() && r.hereditarily_skeletal; ++b)
    for (int c = 0; c < tgt.size(); ++c) {
      ElemId lhs = src.arrow(adj[tgt.arrow(b, c)], adj[c]);
      ElemId rhs = src.arrow(src.arrow(adj[b], adj[c]), adj[c]);
      if (lhs != rhs) {
        r.hereditarily_skeletal = false;
        r.hs_witness = {b, c};
        break;
      }
    }
  r.sub_open = true;
  for (int b = 0; b < tgt.size() && r.sub_open; ++b)
    for (int c = 0; c < tgt.size(); ++c)
      if (adj[tgt.arrow(b, c)] != src.arrow(adj[b], adj[c])) {
        r.sub_open = false;
        r.sub_open_witness = {b, c};
        break;
      }
  auto oc = open_closed_report(f);
  r.open = oc.is_open;
  r.open_witness = oc.open_witness;

  // Prop 5.6: (i) closure commutation, (ii) meet bound, (iii) membership.
  bool c1 = true, c2 = true, c3 = true;
  for (const auto& t : tgt_subs.all) {
    ElemSet pre = localic_preimage_set(f, t.members);
    ElemId pre_meet = src.meet_all(pre);
    ElemId t_meet = tgt.meet_all(t.members);
    if (src.upset[pre_meet] != localic_preimage_set(f, tgt.upset[t_meet])) c1 = false;
    if (!src.leq(pre_meet, adj[t_meet])) c2 = false;
    if (!has_elem(pre, adj[t_meet])) c3 = false;
  }
  r.prop_5_6_agree = (c1 == r.hereditarily_skeletal) && (c2 == r.hereditarily_skeletal) &&
                     (c3 == r.hereditarily_skeletal);
  return r;
}

bool map_preserves_all_meets(const LatticeMap& f) { return preserves_all_meets(f, nullptr); }

bool map_preserves_all_joins(const LatticeMap& f) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  const int n = src.size();
  if (n <= 16) {
    const ElemSet whole = src.all();
    for (ElemSet m = 0;; ++m) {
      if (f.values[src.join_all(m)] != tgt.join_all(raw_image(f, m))) return false;
      if (m == whole) break;
    }
    return true;
  }
  if (f.values[src.bottom()] != tgt.bottom()) return false;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      if (f.values[src.join(a, b)] != tgt.join(f.values[a], f.values[b])) return false;
  return true;
}

QuickFlags quick_classify(const LatticeMap& f, std::vector<ElemId>* adjoint_out) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  const int n = src.size();
  QuickFlags q;
  q.monotone = true;
  for (int a = 0; a < n && q.monotone; ++a) {
    bool ok = true;
    for_each_elem(src.upset[a], [&](int b) {
      if (!tgt.leq(f.values[a], f.values[b])) ok = false;
    });
    q.monotone = ok;
  }
  q.meet_preserving = f.values[src.top()] == tgt.top();
  for (int a = 0; a < n && q.meet_preserving; ++a)
    for (int b = a + 1; b < n; ++b)
      if (f.values[src.meet(a, b)] != tgt.meet(f.values[a], f.values[b])) {
        q.meet_preserving = false;
        break;
      }
  if (!q.meet_preserving) return q;

  auto adj = adjoint_by_meet_formula(f);
  bool l1 = true;
  for (int a = 0; a < n && l1; ++a)
    if (f.values[a] == tgt.top() && a != src.top()) l1 = false;
  bool l2 = true;
  for (int a = 0; a < tgt.size() && l2; ++a)
    for (int b = 0; b < n; ++b)
      if (f.values[src.arrow(adj[a], b)] != tgt.arrow(a, f.values[b])) {
        l2 = false;
        break;
      }
  q.localic = l1 && l2;
  if (adjoint_out) *adjoint_out = std::move(adj);
  return q;
}

GaloisReport check_galois(const PosetMap& f, const PosetMap& g) {
  if (f.source != g.target || f.target != g.source)
    throw MixedPosets("candidate adjoint runs between different posets");
  const Poset& x = *f.source;
  const Poset& y = *f.target;
  GaloisReport r;
  for (int a = 0; a < x.size(); ++a)
    for (int b = 0; b < y.size(); ++b) {
      bool lhs = y.leq(f.values[a], b);
      bool rhs = x.leq(a, g.values[b]);
      if (lhs != rhs && r.is_adjunction) {
        r.is_adjunction = false;
        r.failure_witness = {a, b};
      }
    }
  for (int b = 0; b < y.size(); ++b)
    if (!y.leq(f.values[g.values[b]], b)) {
      r.fg_le_id = false;
      if (!r.fg_witness) r.fg_witness = b;
    }
  for (int a = 0; a < x.size(); ++a)
    if (!x.leq(a, g.values[f.values[a]])) {
      r.id_le_gf = false;
      if (!r.gf_witness) r.gf_witness = a;
    }
  return r;
}

}  // namespace lolab
