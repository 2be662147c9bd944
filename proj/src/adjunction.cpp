#include "locale_lab/adjunction.hpp"

#include <algorithm>

namespace lolab {

const char* adjunction_type_name(AdjunctionType t) {
  switch (t) {
    case AdjunctionType::I: return "I";
    case AdjunctionType::II: return "II";
    case AdjunctionType::III: return "III";
    case AdjunctionType::IV: return "IV";
  }
  return "?";
}

namespace {

// cl X = c(/\X) and int X = o(\/{a : o(a) <= X}), as element ids.
ElemId cl_at(const Frame& f, ElemSet x) { return f.meet_all(x); }

ElemId int_at(const Frame& f, ElemSet x) {
  ElemSet under = 0;
  for (int a = 0; a < f.size(); ++a)
    if (subset_of(f.open_set[a], x)) under |= elem_bit(a);
  return f.join_all(under);
}

// The four assignment legs, one element per input element:
//   cm[a]  : cl(f[c(a)]) = c(cm[a])
//   wb[b]  : cl(f^-1[c(b)]) = c(wb[b])
//   ib[b]  : int(f^-1[o(b)]) = o(ib[b])
//   phi[a] : int(f[o(a)]) = o(phi[a])
struct Legs {
  std::vector<ElemId> cm, wb, ib, phi;
};

Legs compute_legs(const LatticeMap& f) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  Legs legs;
  legs.cm.resize(src.size());
  legs.phi.resize(src.size());
  legs.wb.resize(tgt.size());
  legs.ib.resize(tgt.size());
  for (int a = 0; a < src.size(); ++a) {
    legs.cm[a] = cl_at(tgt, raw_image(f, src.upset[a]));
    legs.phi[a] = int_at(tgt, raw_image(f, src.open_set[a]));
  }
  for (int b = 0; b < tgt.size(); ++b) {
    legs.wb[b] = cl_at(src, raw_preimage(f, tgt.upset[b]));
    legs.ib[b] = int_at(src, raw_preimage(f, tgt.open_set[b]));
  }
  return legs;
}

bool scan_pair(const LatticeMap& f, AdjunctionType t, const Legs& legs,
               std::optional<std::pair<ElemId, ElemId>>* witness) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  for (int a = 0; a < src.size(); ++a)
    for (int b = 0; b < tgt.size(); ++b) {
      bool lhs = false, rhs = false;
      switch (t) {
        case AdjunctionType::I:
          lhs = subset_of(tgt.upset[legs.cm[a]], tgt.upset[b]);
          rhs = subset_of(src.upset[a], src.upset[legs.wb[b]]);
          break;
        case AdjunctionType::II:
          lhs = subset_of(src.open_set[legs.ib[b]], src.open_set[a]);
          rhs = subset_of(tgt.open_set[b], tgt.open_set[legs.cm[a]]);
          break;
        case AdjunctionType::III:
          lhs = subset_of(tgt.open_set[legs.phi[a]], tgt.open_set[b]);
          rhs = subset_of(src.open_set[a], src.open_set[legs.ib[b]]);
          break;
        case AdjunctionType::IV:
          lhs = subset_of(src.upset[legs.wb[b]], src.upset[a]);
          rhs = subset_of(tgt.upset[b], tgt.upset[legs.phi[a]]);
          break;
      }
      if (lhs != rhs) {
        if (witness) *witness = {a, b};
        return false;
      }
    }
  return true;
}

}  // namespace

bool adjoint_pair_holds(const LatticeMap& f, AdjunctionType t,
                        std::optional<std::pair<ElemId, ElemId>>* witness,
                        TypeAssignments* out) {
  Legs legs = compute_legs(f);
  if (out) {
    switch (t) {
      case AdjunctionType::I:
        out->forward = legs.cm;
        out->backward = legs.wb;
        break;
      case AdjunctionType::II:
        out->forward = legs.cm;  // as o(cm[a]), the complement of the closure
        out->backward = legs.ib;
        break;
      case AdjunctionType::III:
        out->forward = legs.phi;
        out->backward = legs.ib;
        break;
      case AdjunctionType::IV:
        out->forward = legs.phi;  // as c(phi[a])
        out->backward = legs.wb;
        break;
    }
  }
  return scan_pair(f, t, legs, witness);
}

AdjunctionTypeReport adjunction_type(const LatticeMap& f, AdjunctionType t) {
  auto cls = classify_map(f);
  if (t == AdjunctionType::II && !cls.monotone)
    throw PreconditionViolated("type II needs an order-preserving map");
  if ((t == AdjunctionType::III || t == AdjunctionType::IV) && !cls.meet_preserving)
    throw PreconditionViolated("type " + std::string(adjunction_type_name(t)) +
                               " needs a meet-preserving map");

  AdjunctionTypeReport r;
  r.type = t;
  r.is_adjoint_pair = adjoint_pair_holds(f, t, &r.pair_witness, &r.assignments);
  switch (t) {
    case AdjunctionType::I:
      r.theorem_predicate = cls.meet_preserving;
      break;
    case AdjunctionType::II:
      r.theorem_predicate = cls.localic;
      break;
    case AdjunctionType::III:
      r.theorem_predicate = open_closed_report(f).is_open;
      break;
    case AdjunctionType::IV:
      r.theorem_predicate = cls.localic && open_closed_report(f).is_open;
      break;
  }
  r.agreement = r.is_adjoint_pair == r.theorem_predicate;
  if (t == AdjunctionType::IV) {
    const auto adj = left_adjoint(f).values;
    Legs legs = compute_legs(f);
    bool phi_adj = true;
    for (int a = 0; a < f.src_size() && phi_adj; ++a)
      for (int b = 0; b < f.tgt_size(); ++b)
        if (f.source->leq(a, adj[b]) != f.target->leq(legs.phi[a], b)) {
          phi_adj = false;
          break;
        }
    r.phi_adjunction = phi_adj;
  }
  return r;
}

std::vector<bool> lemma_type_i_chain(const LatticeMap& f) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  Legs legs = compute_legs(f);
  bool monotone = classify_map(f).monotone;
  std::vector<bool> out(monotone ? 8 : 4, true);
  for (int a = 0; a < src.size(); ++a)
    for (int b = 0; b < tgt.size(); ++b) {
      ElemSet cl_img = tgt.upset[legs.cm[a]];
      ElemSet img = raw_image(f, src.upset[a]);
      ElemSet pre = raw_preimage(f, tgt.upset[b]);
      ElemSet cl_pre = src.upset[legs.wb[b]];
      bool in_cl = subset_of(src.upset[a], cl_pre);
      if ((subset_of(cl_img, tgt.upset[b])) != in_cl) out[0] = out[1] = false;
      if ((subset_of(img, tgt.upset[b])) != in_cl) out[2] = false;
      if (subset_of(src.upset[a], pre) != in_cl) out[3] = false;
      if (monotone) {
        bool ge = tgt.leq(b, f.values[a]);
        if (ge != in_cl) out[4] = false;
        if (ge != has_elem(cl_pre, a)) out[5] = false;
        if (has_elem(pre, a) != has_elem(cl_pre, a)) out[6] = false;
        if (has_elem(cl_pre, a) && !has_elem(pre, a)) out[7] = false;
      }
    }
  return out;
}

std::vector<bool> lemma_type_iii_chain(const LatticeMap& f) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  Legs legs = compute_legs(f);
  std::vector<bool> out(4, true);
  for (int a = 0; a < src.size(); ++a)
    for (int b = 0; b < tgt.size(); ++b) {
      bool int_img_le = subset_of(tgt.open_set[legs.phi[a]], tgt.open_set[b]);
      ElemSet pre = raw_preimage(f, tgt.open_set[b]);
      ElemSet img = raw_image(f, src.open_set[a]);
      if (int_img_le != subset_of(src.open_set[a], src.open_set[legs.ib[b]])) out[0] = out[1] = false;
      if (int_img_le != subset_of(src.open_set[a], pre)) out[2] = false;
      if (int_img_le != subset_of(img, tgt.open_set[b])) out[3] = false;
    }
  return out;
}

bool lemma_3_2_4_holds(const LatticeMap& f) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  Legs legs = compute_legs(f);
  bool void_pre = raw_preimage(f, elem_bit(tgt.top())) == elem_bit(src.top());
  bool contained = true;
  for (int b = 0; b < tgt.size() && contained; ++b)
    if (!subset_of(raw_preimage(f, tgt.upset[b]), src.upset[legs.ib[b]]))
      contained = false;
  return void_pre == contained;
}

bool localic_by_interior_test(const LatticeMap& f) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  Legs legs = compute_legs(f);
  for (int b = 0; b < tgt.size(); ++b)
    if (src.upset[legs.ib[b]] != raw_preimage(f, tgt.upset[b])) return false;
  return true;
}

bool localic_by_type_i_theorem(const LatticeMap& f) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  if (!adjoint_pair_holds(f, AdjunctionType::I)) return false;
  Legs legs = compute_legs(f);
  if (legs.wb[tgt.top()] != src.top()) return false;  // backward leg keeps O
  for (int b = 0; b < tgt.size(); ++b)
    if (!subset_of(src.open_set[legs.wb[b]], raw_preimage(f, tgt.open_set[b])))
      return false;
  return true;
}

// ---- commutativity laws ----

namespace laws {

namespace {

std::string elem_name(const Frame& f, ElemId a) { return f.label(a); }

std::string set_name(const Frame& f, ElemSet s) {
  std::string out = "{";
  bool first = true;
  for_each_elem(s, [&](int i) {
    if (!first) out += ",";
    out += f.label(i);
    first = false;
  });
  return out + "}";
}

// All subsets of the source, ascending mask order; caller caps the size.
template <typename Fn>
Outcome scan_subsets(const Frame& f, Fn&& check) {
  const ElemSet whole = f.all();
  for (ElemSet x = 0;; ++x) {
    if (auto w = check(x)) return w;
    if (x == whole) break;
  }
  return std::nullopt;
}

}  // namespace

Outcome c1(const LatticeMap& f, const std::vector<ElemSet>& tgt_meet_subsets) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  for (ElemSet t : tgt_meet_subsets) {
    ElemSet lhs = localic_preimage_set(f, tgt.open_set[int_at(tgt, t)]);
    ElemSet rhs = src.open_set[int_at(src, localic_preimage_set(f, t))];
    if (!subset_of(lhs, rhs)) return "T=" + set_name(tgt, t);
  }
  return std::nullopt;
}

Outcome c2(const LatticeMap& f, const std::vector<ElemSet>& tgt_meet_subsets) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  for (ElemSet t : tgt_meet_subsets) {
    ElemSet pre = localic_preimage_set(f, t);
    ElemSet lhs = src.upset[cl_at(src, pre)];
    ElemSet rhs = localic_preimage_set(f, tgt.upset[cl_at(tgt, t)]);
    if (!subset_of(lhs, rhs)) return "T=" + set_name(tgt, t);
  }
  return std::nullopt;
}

Outcome prop_5_1(const LatticeMap& f, bool open, const std::vector<ElemSet>& tgt_meet_subsets) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  std::optional<ElemSet> failing;
  for (ElemSet t : tgt_meet_subsets) {
    ElemSet pre = localic_preimage_set(f, t);
    ElemSet lhs = src.open_set[int_at(src, pre)];
    ElemSet rhs = localic_preimage_set(f, tgt.open_set[int_at(tgt, t)]);
    if (!subset_of(lhs, rhs)) {
      failing = t;
      break;
    }
  }
  if (open && failing) return "open map, containment fails at T=" + set_name(tgt, *failing);
  if (!open && !failing) return std::string("containment holds on all meet-subsets of a non-open map");
  return std::nullopt;
}

Outcome cor_5_2(const LatticeMap& f, bool open, const SublocaleLattice& tgt_subs) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  bool b_holds = true, c_holds = true;
  ElemSet b_wit = 0, c_wit = 0;
  for (const auto& t : tgt_subs.all) {
    ElemSet pre = localic_preimage_set(f, t.members);
    if (src.open_set[int_at(src, pre)] !=
        localic_preimage_set(f, tgt.open_set[int_at(tgt, t.members)])) {
      if (b_holds) b_wit = t.members;
      b_holds = false;
    }
    if (src.upset[cl_at(src, pre)] !=
        localic_preimage_set(f, tgt.upset[cl_at(tgt, t.members)])) {
      if (c_holds) c_wit = t.members;
      c_holds = false;
    }
  }
  if (b_holds != open)
    return b_holds ? "interior commutes but map is not open"
                   : "open map, interior fails at T=" + set_name(tgt, b_wit);
  if (open && !c_holds) return "open map, closure fails at T=" + set_name(tgt, c_wit);
  return std::nullopt;
}

Outcome lemma_5_4(const LatticeMap& f, const std::vector<ElemSet>& tgt_meet_subsets) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  for (ElemSet t : tgt_meet_subsets) {
    ElemId raw_int = int_at(src, raw_preimage(f, t));
    ElemId loc_int = int_at(src, localic_preimage_set(f, t));
    if (raw_int != loc_int) return "T=" + set_name(tgt, t);
  }
  return std::nullopt;
}

Outcome prop_5_5(const LatticeMap& f, bool open_localic, const SublocaleLattice& tgt_subs) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  auto law_at = [&](ElemSet t) {
    ElemSet lhs = src.upset[int_at(src, raw_preimage(f, t))];
    ElemSet rhs = raw_preimage(f, tgt.upset[int_at(tgt, t)]);
    return lhs == rhs;
  };
  // Open sublocales first: a non-localic map always fails on one of them,
  // which keeps the scan cheap over the bulk of the instance space.
  for (int b = 0; b < tgt.size(); ++b)
    if (!law_at(tgt.open_set[b])) {
      if (open_localic) return "law fails at T=o(" + elem_name(tgt, b) + ")";
      return std::nullopt;
    }
  for (const auto& t : tgt_subs.all)
    if (!law_at(t.members)) {
      if (open_localic) return "law fails at T=" + set_name(tgt, t.members);
      return std::nullopt;
    }
  if (!open_localic) return std::string("law holds on all sublocales of a non-open-localic map");
  return std::nullopt;
}

Outcome open_join_identity(const LatticeMap& f, bool open, const SublocaleLattice& tgt_subs) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  const auto adj = left_adjoint(f).values;
  std::optional<ElemSet> unequal;
  for (const auto& t : tgt_subs.all) {
    ElemSet lhs_parts = 0, rhs_parts = 0;
    for (int b = 0; b < tgt.size(); ++b)
      if (subset_of(tgt.open_set[b], t.members)) lhs_parts |= elem_bit(adj[b]);
    for (int a = 0; a < src.size(); ++a)
      if (subset_of(raw_image(f, src.open_set[a]), t.members)) rhs_parts |= elem_bit(a);
    if (src.join_all(lhs_parts) != src.join_all(rhs_parts)) {
      unequal = t.members;
      break;
    }
  }
  if (open && unequal) return "open map, join identity fails at T=" + set_name(tgt, *unequal);
  if (!open && !unequal) return std::string("join identity holds on all sublocales of a non-open map");
  return std::nullopt;
}

Outcome lemma_6_1(const LatticeMap& f, bool meet_preserving) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  auto holds_at = [&](ElemSet x) {
    ElemSet img_cl = raw_image(f, src.upset[cl_at(src, x)]);
    return subset_of(img_cl, tgt.upset[cl_at(tgt, raw_image(f, x))]);
  };
  if (!meet_preserving) {
    // The proof pins the failure to some X = f^-1[c(b)].
    for (int b = 0; b < tgt.size(); ++b)
      if (!holds_at(raw_preimage(f, tgt.upset[b]))) return std::nullopt;
  }
  auto w = scan_subsets(src, [&](ElemSet x) -> Outcome {
    if (!holds_at(x)) return "X=" + set_name(src, x);
    return std::nullopt;
  });
  if (meet_preserving && w) return "meet-preserving map, containment fails at " + *w;
  if (!meet_preserving && !w)
    return std::string("containment holds on all subsets of a non-meet-preserving map");
  return std::nullopt;
}

Outcome lemma_6_2(const LatticeMap& f, const SublocaleLattice& src_subs) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  bool contain = true, preserves = true;
  ElemSet cw = 0, pw = 0;
  for (const auto& s : src_subs.all) {
    ElemSet img_cl = raw_image(f, src.upset[cl_at(src, s.members)]);
    if (contain && !subset_of(img_cl, tgt.upset[cl_at(tgt, raw_image(f, s.members))])) {
      contain = false;
      cw = s.members;
    }
    if (preserves && f.values[src.meet_all(s.members)] != tgt.meet_all(raw_image(f, s.members))) {
      preserves = false;
      pw = s.members;
    }
  }
  if (contain != preserves)
    return contain ? "containment holds but meets of sublocales differ at S=" + set_name(src, pw)
                   : "meets of sublocales preserved but containment fails at S=" + set_name(src, cw);
  return std::nullopt;
}

Outcome prop_6_3(const LatticeMap& f, bool closed, const SublocaleLattice& src_subs) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  auto holds_at = [&](ElemSet x) {
    ElemSet img = raw_image(f, x);
    return subset_of(tgt.upset[cl_at(tgt, img)], raw_image(f, src.upset[cl_at(src, x)]));
  };
  bool cond_i = true;
  for (const auto& s : src_subs.all)
    if (!holds_at(s.members)) {
      cond_i = false;
      break;
    }
  bool cond_ii;
  if (!cond_i) {
    cond_ii = false;  // (ii) quantifies over a superset of (i)'s domain
  } else {
    cond_ii = !scan_subsets(src, [&](ElemSet x) -> Outcome {
                 if (!holds_at(x)) return std::string("x");
                 return std::nullopt;
               }).has_value();
  }
  if (cond_i != closed || cond_ii != closed)
    return "conditions disagree: (i)=" + std::to_string(cond_i) +
           " (ii)=" + std::to_string(cond_ii) + " closed=" + std::to_string(closed);
  return std::nullopt;
}

Outcome cor_6_4(const LatticeMap& f, bool closed_and_mp) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  auto equal_at = [&](ElemSet x) {
    ElemSet lhs = raw_image(f, src.upset[cl_at(src, x)]);
    ElemSet rhs = tgt.upset[cl_at(tgt, raw_image(f, x))];
    return lhs == rhs;
  };
  if (!closed_and_mp) {
    // Failure is already pinned to a principal up-set or a closed preimage.
    for (int a = 0; a < src.size(); ++a)
      if (!equal_at(src.upset[a])) return std::nullopt;
    for (int b = 0; b < tgt.size(); ++b)
      if (!equal_at(raw_preimage(f, tgt.upset[b]))) return std::nullopt;
  }
  auto w = scan_subsets(src, [&](ElemSet x) -> Outcome {
    if (!equal_at(x)) return "X=" + set_name(src, x);
    return std::nullopt;
  });
  if (closed_and_mp && w) return "closed meet-preserving map, equality fails at " + *w;
  if (!closed_and_mp && !w)
    return std::string("equality holds on all subsets without closed+meet-preserving");
  return std::nullopt;
}

Outcome cor_6_5(const LatticeMap& f, bool closed, const SublocaleLattice& src_subs) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  auto equal_at = [&](ElemSet x) {
    return raw_image(f, src.upset[cl_at(src, x)]) == tgt.upset[cl_at(tgt, raw_image(f, x))];
  };
  bool cond_i = true;
  for (const auto& s : src_subs.all)
    if (!equal_at(s.members)) {
      cond_i = false;
      break;
    }
  bool cond_ii;
  if (!cond_i) {
    cond_ii = false;
  } else {
    cond_ii = !scan_subsets(src, [&](ElemSet x) -> Outcome {
                 if (!equal_at(x)) return std::string("x");
                 return std::nullopt;
               }).has_value();
  }
  if (cond_i != closed || cond_ii != closed)
    return "conditions disagree: (i)=" + std::to_string(cond_i) +
           " (ii)=" + std::to_string(cond_ii) + " closed=" + std::to_string(closed);
  return std::nullopt;
}

Outcome prop_6_6(const LatticeMap& f, bool open, const SublocaleLattice& src_subs) {
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  std::optional<ElemSet> failing;
  for (const auto& s : src_subs.all) {
    ElemSet img_int = raw_image(f, src.open_set[int_at(src, s.members)]);
    if (!subset_of(img_int, tgt.open_set[int_at(tgt, raw_image(f, s.members))])) {
      failing = s.members;
      break;
    }
  }
  if (open && failing) return "open map, containment fails at S=" + set_name(src, *failing);
  if (!open && !failing) return std::string("containment holds on all sublocales of a non-open map");
  return std::nullopt;
}

}  // namespace laws

const LawResult* CommutativityReport::find(const std::string& id) const {
  for (const auto& l : laws)
    if (l.law == id) return &l;
  return nullptr;
}

CommutativityReport commutativity_report(const LatticeMap& f,
                                         const SublocaleLattice& src_subs,
                                         const SublocaleLattice& tgt_subs) {
  auto cls = classify_map(f);
  if (!cls.meet_preserving)
    throw NotMeetPreserving("commutativity report needs a meet-preserving map");
  auto oc = open_closed_report(f);
  auto msubs = enumerate_meet_subsets(*f.target);
  const bool open_localic = cls.localic && oc.is_open;

  CommutativityReport rep;
  auto add = [&](const std::string& id, laws::Outcome out, std::uint64_t instances) {
    LawResult r;
    r.law = id;
    r.instances = instances;
    if (out) {
      r.verdict = LawResult::Verdict::fail;
      r.witness = *out;
    }
    rep.laws.push_back(std::move(r));
  };
  auto skip = [&](const std::string& id, const std::string& why) {
    LawResult r;
    r.law = id;
    r.verdict = LawResult::Verdict::skipped;
    r.reason = why;
    rep.laws.push_back(std::move(r));
  };

  const auto m = static_cast<std::uint64_t>(msubs.size());
  const auto sm = static_cast<std::uint64_t>(tgt_subs.size());
  const auto sl = static_cast<std::uint64_t>(src_subs.size());
  if (cls.localic) {
    add("C1", laws::c1(f, msubs), m);
    add("C2", laws::c2(f, msubs), m);
    add("cor-5-2", laws::cor_5_2(f, oc.is_open, tgt_subs), sm);
    add("open-join-identity", laws::open_join_identity(f, oc.is_open, tgt_subs), sm);
  } else {
    skip("C1", "map is not localic");
    skip("C2", "map is not localic");
    skip("cor-5-2", "map is not localic");
    skip("open-join-identity", "map is not localic");
  }
  add("prop-5-1", laws::prop_5_1(f, oc.is_open, msubs), m);
  add("lemma-5-4", laws::lemma_5_4(f, msubs), m);
  add("prop-5-5", laws::prop_5_5(f, open_localic, tgt_subs), sm);
  if (f.src_size() <= kSubsetLawCap) {
    const std::uint64_t subsets = std::uint64_t{1} << f.src_size();
    add("lemma-6-1", laws::lemma_6_1(f, true), subsets);
    add("prop-6-3", laws::prop_6_3(f, oc.is_closed, src_subs), subsets + sl);
    add("cor-6-4", laws::cor_6_4(f, oc.is_closed), subsets);
    add("cor-6-5", laws::cor_6_5(f, oc.is_closed, src_subs), subsets + sl);
  } else {
    skip("lemma-6-1", "source exceeds subset-quantifier cap");
    skip("prop-6-3", "source exceeds subset-quantifier cap");
    skip("cor-6-4", "source exceeds subset-quantifier cap");
    skip("cor-6-5", "source exceeds subset-quantifier cap");
  }
  add("lemma-6-2", laws::lemma_6_2(f, src_subs), sl);
  add("prop-6-6", laws::prop_6_6(f, oc.is_open, src_subs), sl);
  return rep;
}

DissolutionReport dissolution_report(const LatticeMap& f,
                                     const SublocaleLattice& src_subs,
                                     const SublocaleLattice& tgt_subs) {
  auto cls = classify_map(f);
  if (!cls.localic) throw NotLocalic("dissolution report needs a localic map");
  const Frame& src = *f.source;
  const Frame& tgt = *f.target;
  const auto adj = left_adjoint(f).values;
  auto oc = open_closed_report(f);

  DissolutionReport r;
  r.naturality = true;
  for (const auto& s : src_subs.all)
    if (f.values[src.meet_all(s.members)] != tgt.meet_all(raw_image(f, s.members))) {
      r.naturality = false;
      break;
    }

  r.inequality = true;
  r.equality = true;
  std::optional<std::vector<ElemId>> shriek;
  if (oc.is_open) {
    auto jt = joyal_tierney(f);
    if (jt.shriek_exists) shriek = jt.shriek;
    r.open_inequality = true;
  }
  for (int ti = 0; ti < tgt_subs.size(); ++ti) {
    const auto& t = tgt_subs.all[ti];
    ElemId pre_meet = src.meet_all(localic_preimage_set(f, t.members));
    ElemId t_meet = tgt.meet_all(t.members);
    if (!src.leq(adj[t_meet], pre_meet)) r.inequality = false;
    if (pre_meet != adj[t_meet]) {
      if (r.equality) r.equality_witness = ti;
      r.equality = false;
    }
    if (shriek && !tgt.leq((*shriek)[pre_meet], t_meet)) r.open_inequality = false;
  }
  return r;
}

}  // namespace lolab
