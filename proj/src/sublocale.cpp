#include "locale_lab/sublocale.hpp"

#include <algorithm>
#include <unordered_map>

namespace lolab {

SublocaleCheck is_sublocale(const Frame& f, ElemSet subset) {
  SublocaleCheck r;
  if (!has_elem(subset, f.top())) {
    r.ok = false;
    r.kind = SublocaleCheck::Violation::missing_top;
    return r;
  }
  // Binary meets suffice for S1 on a finite lattice; the empty meet is the
  // top check above.
  const int n = f.size();
  for (int s = 0; s < n; ++s) {
    if (!has_elem(subset, s)) continue;
    for (int t = s; t < n; ++t) {
      if (!has_elem(subset, t)) continue;
      if (!has_elem(subset, f.meet(s, t))) {
        r.ok = false;
        r.kind = SublocaleCheck::Violation::meet_escape;
        r.x = s;
        r.s = t;
        return r;
      }
    }
  }
  for (int x = 0; x < n; ++x)
    for (int s = 0; s < n; ++s) {
      if (!has_elem(subset, s)) continue;
      if (!has_elem(subset, f.arrow(x, s))) {
        r.ok = false;
        r.kind = SublocaleCheck::Violation::arrow_escape;
        r.x = x;
        r.s = s;
        return r;
      }
    }
  return r;
}

Sublocale make_sublocale(const Frame& f, ElemSet members) {
  Sublocale s;
  s.frame = &f;
  s.members = members;
  for (int a = 0; a < f.size(); ++a) {
    if (!s.open_at && f.open_set[a] == members) s.open_at = a;
    if (!s.closed_at && f.upset[a] == members) s.closed_at = a;
  }
  return s;
}

std::string sublocale_literal(const Sublocale& s) {
  std::string out = "{";
  bool first = true;
  for_each_elem(s.members, [&](int i) {
    if (!first) out += ",";
    out += s.frame->label(i);
    first = false;
  });
  out += "} [";
  if (s.open_at) out += "open:" + s.frame->label(*s.open_at);
  if (s.closed_at) out += std::string(s.open_at ? " " : "") + "closed:" + s.frame->label(*s.closed_at);
  if (!s.open_at && !s.closed_at) out += "other";
  return out + "]";
}

std::pair<Sublocale, Sublocale> principal_sublocales(const Frame& f, ElemId a) {
  if (a < 0 || a >= f.size()) throw UnknownElement("element id out of range");
  return {make_sublocale(f, f.open_set[a]), make_sublocale(f, f.upset[a])};
}

ElemSet meet_closure_set(const Frame& f, ElemSet subset) {
  ElemSet acc = subset | elem_bit(f.top());
  bool grew = true;
  while (grew) {
    grew = false;
    ElemSet next = acc;
    for_each_elem(acc, [&](int s) {
      for_each_elem(acc, [&](int t) { next |= elem_bit(f.meet(s, t)); });
    });
    if (next != acc) {
      acc = next;
      grew = true;
    }
  }
  return acc;
}

MeetSubset meet_closure(const Frame& f, ElemSet subset) {
  return MeetSubset{&f, meet_closure_set(f, subset)};
}

Sublocale least_sublocale_containing(const Frame& f, ElemSet subset) {
  ElemSet arrows = 0;
  for (int a = 0; a < f.size(); ++a)
    for_each_elem(subset, [&](int x) { arrows |= elem_bit(f.arrow(a, x)); });
  return make_sublocale(f, meet_closure_set(f, arrows));
}

Sublocale closure_of_subset(const Frame& f, ElemSet subset) {
  return make_sublocale(f, f.upset[f.meet_all(subset)]);
}

Sublocale interior_of_subset(const Frame& f, ElemSet subset) {
  ElemSet under = 0;
  for (int a = 0; a < f.size(); ++a)
    if (subset_of(f.open_set[a], subset)) under |= elem_bit(a);
  return make_sublocale(f, f.open_set[f.join_all(under)]);
}

Sublocale booleanization(const Frame& f) {
  ElemSet regular = 0;
  for (int b = 0; b < f.size(); ++b)
    if (f.pseudo(f.pseudo(b)) == b) regular |= elem_bit(b);
  return make_sublocale(f, regular);
}

SubfitReport is_subfit(const Frame& f) {
  const int n = f.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (f.leq(a, b)) continue;
      bool separated = false;
      for (int c = 0; c < n && !separated; ++c)
        if (f.join(a, c) == f.top() && f.join(b, c) != f.top()) separated = true;
      if (!separated) return SubfitReport{false, a, b};
    }
  return SubfitReport{};
}

// ---- S(L) ----

int SublocaleLattice::index_of(ElemSet members) const {
  auto it = std::lower_bound(all.begin(), all.end(), members,
                             [](const Sublocale& s, ElemSet m) { return s.members < m; });
  if (it == all.end() || it->members != members) return -1;
  return static_cast<int>(it - all.begin());
}

int SublocaleLattice::difference_idx(int r, int s) const {
  // Smallest t with r <= s v t, as the intersection of all such t.
  ElemSet acc = all[whole_idx].members;
  for (int t = 0; t < size(); ++t)
    if (contains_idx(r, join_idx(s, t))) acc &= all[t].members;
  int idx = index_of(acc);
  if (idx < 0) throw Error("difference escaped S(L)");
  return idx;
}

int SublocaleLattice::supplement_idx(int s) const { return difference_idx(whole_idx, s); }

std::optional<int> SublocaleLattice::complement_idx(int s) const {
  for (int t = 0; t < size(); ++t)
    if (meet_idx(s, t) == void_idx && join_idx(s, t) == whole_idx) return t;
  return std::nullopt;
}

std::optional<std::array<int, 3>> SublocaleLattice::coframe_violation() const {
  const int m = size();
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < m; ++t)
      for (int u = 0; u < m; ++u)
        if (join_idx(s, meet_idx(t, u)) != meet_idx(join_idx(s, t), join_idx(s, u)))
          return std::array<int, 3>{s, t, u};
  return std::nullopt;
}

SublocaleLattice enumerate_sublocales(const Frame& f, int cap) {
  const int n = f.size();
  if (n > cap) throw FrameTooLarge("frame exceeds sublocale enumeration cap");

  SublocaleLattice sl;
  sl.frame = &f;
  const ElemSet top_bit = elem_bit(f.top());
  const ElemSet rest = f.all() & ~top_bit;
  // Scan subsets containing top in ascending mask order.
  for (ElemSet sub = rest;; sub = (sub - 1) & rest) {
    ElemSet mask = (rest ^ sub) | top_bit;  // iterate complements ascending
    if (is_sublocale(f, mask).ok) sl.all.push_back(make_sublocale(f, mask));
    if (sub == 0) break;
  }
  std::sort(sl.all.begin(), sl.all.end(),
            [](const Sublocale& a, const Sublocale& b) { return a.members < b.members; });

  const int m = sl.size();
  if (m > 1024) throw FrameTooLarge("sublocale lattice too large for tables");
  sl.void_idx = sl.index_of(top_bit);
  sl.whole_idx = sl.index_of(f.all());

  sl.meet_tab.assign(static_cast<size_t>(m) * m, 0);
  sl.join_tab.assign(static_cast<size_t>(m) * m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int mi = sl.index_of(sl.all[i].members & sl.all[j].members);
      if (mi < 0) throw Error("intersection escaped S(L)");
      sl.meet_tab[i * m + j] = mi;
      int ji = sl.index_of(meet_closure_set(f, sl.all[i].members | sl.all[j].members));
      if (ji < 0) throw Error("join formula escaped S(L)");
      // Cross-check the formula against the least upper bound in the order.
      if (!sl.contains_idx(i, ji) || !sl.contains_idx(j, ji))
        throw Error("join formula is not an upper bound");
      for (int k = 0; k < m; ++k) {
        bool ub = sl.contains_idx(i, k) && sl.contains_idx(j, k);
        if (ub && !sl.contains_idx(ji, k))
          throw Error("join formula disagrees with containment order");
      }
      sl.join_tab[i * m + j] = ji;
    }
  return sl;
}

std::vector<ElemSet> enumerate_meet_subsets(const Frame& f) {
  const int n = f.size();
  std::vector<ElemSet> out;
  const ElemSet top_bit = elem_bit(f.top());
  const ElemSet rest = f.all() & ~top_bit;
  for (ElemSet sub = rest;; sub = (sub - 1) & rest) {
    ElemSet mask = (rest ^ sub) | top_bit;
    bool closed = true;
    for (int s = 0; s < n && closed; ++s) {
      if (!has_elem(mask, s)) continue;
      for (int t = s; t < n; ++t)
        if (has_elem(mask, t) && !has_elem(mask, f.meet(s, t))) {
          closed = false;
          break;
        }
    }
    if (closed) out.push_back(mask);
    if (sub == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Sublocale sub_join(const Sublocale& a, const Sublocale& b) {
  if (a.frame != b.frame) throw MixedFrames("join of sublocales of different frames");
  return make_sublocale(*a.frame, meet_closure_set(*a.frame, a.members | b.members));
}

Sublocale sub_meet(const Sublocale& a, const Sublocale& b) {
  if (a.frame != b.frame) throw MixedFrames("meet of sublocales of different frames");
  return make_sublocale(*a.frame, a.members & b.members);
}

Sublocale sub_difference(const SublocaleLattice& sl, const Sublocale& r, const Sublocale& s) {
  if (r.frame != sl.frame || s.frame != sl.frame)
    throw MixedFrames("difference arguments not in the enumerated frame");
  int ri = sl.index_of(r.members), si = sl.index_of(s.members);
  if (ri < 0 || si < 0) throw Error("difference argument is not a sublocale");
  return sl.all[sl.difference_idx(ri, si)];
}

Sublocale sub_supplement(const SublocaleLattice& sl, const Sublocale& s) {
  return sub_difference(sl, sl.all[sl.whole_idx], s);
}

Frame sublocale_to_frame(const Sublocale& s, std::string name) {
  const Frame& host = *s.frame;
  std::vector<int> ids;
  for_each_elem(s.members, [&](int i) { ids.push_back(i); });
  Poset p;
  p.labels.reserve(ids.size());
  for (int i : ids) p.labels.push_back(host.label(i));
  p.up.assign(ids.size(), 0);
  for (size_t a = 0; a < ids.size(); ++a)
    for (size_t b = 0; b < ids.size(); ++b)
      if (host.leq(ids[a], ids[b])) p.up[a] |= elem_bit(static_cast<int>(b));
  return frame_check(lattice_from_poset(std::move(p)), std::move(name));
}

}  // namespace lolab
