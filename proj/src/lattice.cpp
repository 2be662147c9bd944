#include "locale_lab/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace lolab {

std::optional<ElemId> Poset::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (labels[i] == label) return i;
  return std::nullopt;
}

Poset poset_from_pairs(std::vector<std::string> labels,
                       const std::vector<std::pair<std::string, std::string>>& pairs,
                       OrderMode mode) {
  const int n = static_cast<int>(labels.size());
  if (n > kMaxElems) throw FrameTooLarge("more than 64 elements");
  {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels)
      if (!seen.insert(l).second) throw DuplicateLabel("duplicate label: " + l);
  }
  std::unordered_map<std::string, int> idx;
  for (int i = 0; i < n; ++i) idx.emplace(labels[i], i);

  std::vector<ElemSet> up(n, 0);
  for (int i = 0; i < n; ++i) up[i] = elem_bit(i);
  for (const auto& [lo, hi] : pairs) {
    auto a = idx.find(lo), b = idx.find(hi);
    if (a == idx.end()) throw UnknownElement("unknown label: " + lo);
    if (b == idx.end()) throw UnknownElement("unknown label: " + hi);
    up[a->second] |= elem_bit(b->second);
  }
  // Reflexive-transitive closure; covers and leq inputs normalize the same
  // way, leq just arrives (mostly) closed already.
  (void)mode;
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      if (has_elem(up[a], k)) up[a] |= up[k];
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (has_elem(up[a], b) && has_elem(up[b], a))
        throw CycleDetected("cycle through " + labels[a] + " and " + labels[b]);

  Poset p;
  p.labels = std::move(labels);
  p.up = std::move(up);
  return p;
}

ElemId CompleteLattice::meet_all(ElemSet s) const {
  ElemId acc = top;
  for_each_elem(s, [&](int i) { acc = meet(acc, i); });
  return acc;
}

ElemId CompleteLattice::join_all(ElemSet s) const {
  ElemId acc = bottom;
  for_each_elem(s, [&](int i) { acc = join(acc, i); });
  return acc;
}

namespace {

std::vector<ElemSet> down_rows(const Poset& p) {
  const int n = p.size();
  std::vector<ElemSet> down(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (p.leq(b, a)) down[a] |= elem_bit(b);
  return down;
}

// Unique least element of the candidate mask w.r.t. the order, if any.
std::optional<ElemId> least_of(const Poset& p, ElemSet candidates) {
  std::optional<ElemId> found;
  for_each_elem(candidates, [&](int u) {
    if (subset_of(candidates, p.up[u])) {
      if (!found) found = u;
    }
  });
  return found;
}

std::optional<ElemId> greatest_of(const std::vector<ElemSet>& down, ElemSet candidates) {
  std::optional<ElemId> found;
  for_each_elem(candidates, [&](int u) {
    if (subset_of(candidates, down[u])) {
      if (!found) found = u;
    }
  });
  return found;
}

}  // namespace

CompleteLattice lattice_from_poset(Poset order) {
  const int n = order.size();
  if (n == 0) throw MissingMeet("empty carrier has no empty meet");
  const auto down = down_rows(order);

  CompleteLattice lat;
  lat.join_tab.assign(static_cast<size_t>(n) * n, 0);
  lat.meet_tab.assign(static_cast<size_t>(n) * n, 0);
  // Exhaustive bound search; joins first so an antichain reports MissingJoin.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto j = least_of(order, order.up[a] & order.up[b]);
      if (!j)
        throw MissingJoin("no least upper bound for " + order.labels[a] + ", " +
                          order.labels[b]);
      lat.join_tab[a * n + b] = *j;
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto m = greatest_of(down, down[a] & down[b]);
      if (!m)
        throw MissingMeet("no greatest lower bound for " + order.labels[a] + ", " +
                          order.labels[b]);
      lat.meet_tab[a * n + b] = *m;
    }
  lat.order = std::move(order);
  lat.bottom = 0;
  lat.top = 0;
  for (int a = 1; a < n; ++a) {
    lat.bottom = lat.meet(lat.bottom, a);
    lat.top = lat.join(lat.top, a);
  }
  return lat;
}

CompleteLattice lattice_from_order(std::vector<std::string> labels,
                                   const std::vector<std::pair<std::string, std::string>>& pairs,
                                   OrderMode mode) {
  return lattice_from_poset(poset_from_pairs(std::move(labels), pairs, mode));
}

Frame frame_check(CompleteLattice lat, std::string name) {
  const int n = lat.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        ElemId lhs = lat.meet(lat.join(a, b), c);
        ElemId rhs = lat.join(lat.meet(a, c), lat.meet(b, c));
        if (lhs != rhs)
          throw FrameViolation("distributivity fails at (" + lat.order.labels[a] +
                                   ", " + lat.order.labels[b] + ", " +
                                   lat.order.labels[c] + ")",
                               a, b, c);
      }

  Frame f;
  f.arrow_tab.assign(static_cast<size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      ElemSet below = 0;
      for (int c = 0; c < n; ++c)
        if (lat.leq(lat.meet(c, a), b)) below |= elem_bit(c);
      f.arrow_tab[a * n + b] = lat.join_all(below);
    }
  // Heyting adjunction: a ^ b <= c iff a <= b -> c.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        bool lhs = lat.leq(lat.meet(a, b), c);
        bool rhs = lat.leq(a, f.arrow_tab[b * n + c]);
        if (lhs != rhs)
          throw FrameViolation("Heyting adjunction fails at (" + lat.order.labels[a] +
                                   ", " + lat.order.labels[b] + ", " +
                                   lat.order.labels[c] + ")",
                               a, b, c);
      }

  f.upset = lat.order.up;
  f.downset = down_rows(lat.order);
  f.open_set.assign(n, 0);
  for (int a = 0; a < n; ++a) {
    ElemSet o = 0;
    for (int x = 0; x < n; ++x) o |= elem_bit(f.arrow_tab[a * n + x]);
    f.open_set[a] = o;
  }
  f.lat = std::move(lat);
  f.name = std::move(name);
  return f;
}

ElemId heyting_arrow(const Frame& f, ElemId a, ElemId b) {
  if (a < 0 || a >= f.size() || b < 0 || b >= f.size())
    throw UnknownElement("element id out of range");
  return f.arrow(a, b);
}

std::optional<TableViolation> find_table_violation(const Frame& f) {
  const int n = f.size();
  const auto& p = f.lat.order;
  const auto down = down_rows(p);
  for (int a = 0; a < n; ++a) {
    if (!p.leq(f.bottom(), a)) return TableViolation{"bottom", a};
    if (!p.leq(a, f.top())) return TableViolation{"top", a};
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      ElemId j = f.join(a, b);
      ElemSet ub = p.up[a] & p.up[b];
      if (!has_elem(ub, j) || !subset_of(ub, p.up[j]))
        return TableViolation{"join", a, b, j};
      ElemId m = f.meet(a, b);
      ElemSet lb = down[a] & down[b];
      if (!has_elem(lb, m) || !subset_of(lb, down[m]))
        return TableViolation{"meet", a, b, m};
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (f.meet(f.join(a, b), c) != f.join(f.meet(a, c), f.meet(b, c)))
          return TableViolation{"distributivity", a, b, c};
        bool lhs = f.leq(f.meet(a, b), c);
        bool rhs = f.leq(a, f.arrow(b, c));
        if (lhs != rhs) return TableViolation{"heyting", a, b, c};
      }
  return std::nullopt;
}

// ---- finite spaces ----

FiniteSpace make_space(std::vector<std::string> points,
                       const std::vector<std::vector<std::string>>& opens) {
  const int np = static_cast<int>(points.size());
  if (np > kMaxElems) throw FrameTooLarge("more than 64 points");
  std::unordered_map<std::string, int> idx;
  for (int i = 0; i < np; ++i)
    if (!idx.emplace(points[i], i).second)
      throw DuplicateLabel("duplicate point: " + points[i]);

  FiniteSpace sp;
  sp.points = std::move(points);
  std::unordered_set<ElemSet> seen;
  for (const auto& open : opens) {
    ElemSet mask = 0;
    for (const auto& pt : open) {
      auto it = idx.find(pt);
      if (it == idx.end()) throw UnknownElement("unknown point: " + pt);
      mask |= elem_bit(it->second);
    }
    if (!seen.insert(mask).second) throw NotATopology("duplicate open set");
    sp.opens.push_back(mask);
  }
  const ElemSet whole = full_set(np);
  if (!seen.count(0)) throw NotATopology("empty set is not open");
  if (!seen.count(whole)) throw NotATopology("whole space is not open");
  for (ElemSet u : sp.opens)
    for (ElemSet v : sp.opens) {
      if (!seen.count(u | v)) throw NotATopology("opens not closed under union");
      if (!seen.count(u & v)) throw NotATopology("opens not closed under intersection");
    }
  return sp;
}

namespace {

std::string point_set_label(const FiniteSpace& sp, ElemSet mask) {
  std::string out = "{";
  bool first = true;
  for_each_elem(mask, [&](int i) {
    if (!first) out += ",";
    out += sp.points[i];
    first = false;
  });
  return out + "}";
}

// Lattice of a family of sets closed under union/intersection, ordered by
// inclusion. Input masks must be distinct.
CompleteLattice lattice_of_sets(std::vector<ElemSet> sets, std::vector<std::string> labels) {
  std::vector<int> order(sets.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    int pi = set_size(sets[i]), pj = set_size(sets[j]);
    return pi != pj ? pi < pj : sets[i] < sets[j];
  });
  const int n = static_cast<int>(sets.size());
  std::vector<ElemSet> sorted(n);
  Poset p;
  p.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    sorted[i] = sets[order[i]];
    p.labels[i] = labels[order[i]];
  }
  std::unordered_map<ElemSet, int> at;
  for (int i = 0; i < n; ++i) at.emplace(sorted[i], i);
  p.up.assign(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (subset_of(sorted[a], sorted[b])) p.up[a] |= elem_bit(b);

  CompleteLattice lat;
  lat.meet_tab.assign(static_cast<size_t>(n) * n, 0);
  lat.join_tab.assign(static_cast<size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      lat.meet_tab[a * n + b] = at.at(sorted[a] & sorted[b]);
      lat.join_tab[a * n + b] = at.at(sorted[a] | sorted[b]);
    }
  lat.order = std::move(p);
  lat.bottom = 0;
  lat.top = n - 1;
  return lat;
}

}  // namespace

Frame frame_from_topology(const FiniteSpace& space) {
  std::vector<ElemSet> sets = space.opens;
  std::vector<std::string> labels;
  labels.reserve(sets.size());
  for (ElemSet s : sets) labels.push_back(point_set_label(space, s));
  return frame_check(lattice_of_sets(std::move(sets), std::move(labels)), "Omega");
}

Poset specialization_poset(const FiniteSpace& space) {
  const int np = space.point_count();
  Poset p;
  p.labels = space.points;
  p.up.assign(np, 0);
  for (int x = 0; x < np; ++x)
    for (int y = 0; y < np; ++y) {
      bool le = true;  // x <= y iff every open containing y contains x
      for (ElemSet u : space.opens)
        if (has_elem(u, y) && !has_elem(u, x)) {
          le = false;
          break;
        }
      if (le) p.up[x] |= elem_bit(y);
    }
  for (int x = 0; x < np; ++x)
    for (int y = x + 1; y < np; ++y)
      if (p.leq(x, y) && p.leq(y, x))
        throw CycleDetected("space is not T0: " + space.points[x] + ", " + space.points[y]);
  return p;
}

Frame downset_frame(const Poset& p, std::string name) {
  const int n = p.size();
  const auto down = down_rows(p);
  std::vector<ElemSet> downsets;
  for (ElemSet mask = 0;; ++mask) {
    bool closed = true;
    for_each_elem(mask, [&](int i) {
      if (!subset_of(down[i], mask)) closed = false;
    });
    if (closed) {
      downsets.push_back(mask);
      if (downsets.size() > static_cast<size_t>(kMaxElems))
        throw FrameTooLarge("more than 64 downsets");
    }
    if (mask == full_set(n)) break;
  }
  std::vector<std::string> labels;
  labels.reserve(downsets.size());
  for (ElemSet s : downsets) {
    std::string out = "{";
    bool first = true;
    for_each_elem(s, [&](int i) {
      if (!first) out += ",";
      out += p.labels[i];
      first = false;
    });
    labels.push_back(out + "}");
  }
  return frame_check(lattice_of_sets(std::move(downsets), std::move(labels)),
                     std::move(name));
}

// ---- isomorphism (test/fixture scale) ----

namespace {

bool extend_iso(const CompleteLattice& a, const CompleteLattice& b,
                std::vector<int>& img, std::vector<bool>& used, int next) {
  const int n = a.size();
  if (next == n) return true;
  for (int cand = 0; cand < n; ++cand) {
    if (used[cand]) continue;
    bool ok = true;
    for (int prev = 0; prev < next && ok; ++prev) {
      if (a.leq(prev, next) != b.leq(img[prev], cand)) ok = false;
      if (a.leq(next, prev) != b.leq(cand, img[prev])) ok = false;
    }
    if (!ok) continue;
    img[next] = cand;
    used[cand] = true;
    if (extend_iso(a, b, img, used, next + 1)) return true;
    used[cand] = false;
  }
  return false;
}

}  // namespace

bool lattices_isomorphic(const CompleteLattice& a, const CompleteLattice& b) {
  if (a.size() != b.size()) return false;
  std::vector<int> img(a.size(), -1);
  std::vector<bool> used(a.size(), false);
  return extend_iso(a, b, img, used, 0);
}

std::vector<ElemId> linear_extension(const Poset& p) {
  const auto down = down_rows(p);
  std::vector<ElemId> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return set_size(down[i]) < set_size(down[j]);
  });
  return order;
}

}  // namespace lolab
