#include "locale_lab/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <thread>

namespace lolab {

namespace {

// Strict-order adjacency packed row-major into one word (n <= 7).
using OrderBits = std::uint64_t;

OrderBits canonical_form(int n, const std::vector<ElemSet>& strict_up) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  OrderBits best = ~OrderBits{0};
  do {
    OrderBits bits = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (has_elem(strict_up[perm[a]], perm[b])) bits |= OrderBits{1} << (a * n + b);
    best = std::min(best, bits);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Poset poset_from_bits(int n, OrderBits bits, const std::string& name_prefix, int idx) {
  Poset p;
  p.labels.resize(n);
  for (int i = 0; i < n; ++i) p.labels[i] = "p" + std::to_string(i);
  (void)name_prefix;
  (void)idx;
  p.up.assign(n, 0);
  for (int a = 0; a < n; ++a) {
    p.up[a] |= elem_bit(a);
    for (int b = 0; b < n; ++b)
      if (bits >> (a * n + b) & 1) p.up[a] |= elem_bit(b);
  }
  return p;
}

}  // namespace

std::vector<Poset> generate_posets(int n) {
  if (n < 0) throw CapExceeded("negative element count");
  if (n > 6) throw CapExceeded("poset generation supports at most 6 elements");
  if (n == 0) return {Poset{}};

  // Strict pairs compatible with the identity linear extension.
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  const int k = static_cast<int>(slots.size());

  std::set<OrderBits> canon;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<ElemSet> up(n, 0);
    for (int s = 0; s < k; ++s)
      if (mask >> s & 1) up[slots[s].first] |= elem_bit(slots[s].second);
    bool transitive = true;
    for (int a = 0; a < n && transitive; ++a)
      for (int b = a + 1; b < n && transitive; ++b) {
        if (!has_elem(up[a], b)) continue;
        if ((up[b] & ~up[a]) != 0) transitive = false;
      }
    if (!transitive) continue;
    canon.insert(canonical_form(n, up));
  }

  std::vector<Poset> out;
  int idx = 0;
  for (OrderBits bits : canon) out.push_back(poset_from_bits(n, bits, "P", idx++));
  return out;
}

Catalog generate_catalog(const CatalogSpec& spec) {
  if (spec.max_join_irreducibles < 0 || spec.max_maps_per_pair == 0 || spec.max_frame_size <= 0)
    throw BadInput("catalog spec out of range");
  Catalog cat;
  cat.spec = spec;
  for (int n = spec.include_degenerate ? 0 : 1; n <= spec.max_join_irreducibles; ++n) {
    auto posets = generate_posets(n);
    for (size_t k = 0; k < posets.size(); ++k) {
      std::string name = "D(P" + std::to_string(n) + "." + std::to_string(k) + ")";
      Frame f = downset_frame(posets[k], name);
      if (f.size() > spec.max_frame_size)
        throw CapExceeded("frame " + name + " exceeds max_frame_size");
      FrameContext ctx;
      ctx.frame = std::move(f);
      ctx.subfit = is_subfit(ctx.frame).subfit;
      cat.frames.push_back(std::move(ctx));
    }
  }
  return cat;
}

std::vector<Frame> catalog_frames(const CatalogSpec& spec) {
  auto cat = generate_catalog(spec);
  std::vector<Frame> out;
  out.reserve(cat.frames.size());
  for (auto& ctx : cat.frames) out.push_back(std::move(ctx.frame));
  return out;
}

MapClass map_class_from_name(const std::string& name) {
  if (name == "all") return MapClass::all;
  if (name == "monotone") return MapClass::monotone;
  if (name == "meet_preserving") return MapClass::meet_preserving;
  if (name == "localic") return MapClass::localic;
  throw BadInput("unknown map class: " + name);
}

const char* map_class_name(MapClass c) {
  switch (c) {
    case MapClass::all: return "all";
    case MapClass::monotone: return "monotone";
    case MapClass::meet_preserving: return "meet_preserving";
    case MapClass::localic: return "localic";
  }
  return "?";
}

namespace {

bool quick_monotone(const Frame& src, const Frame& tgt, const std::vector<ElemId>& v) {
  for (int a = 0; a < src.size(); ++a) {
    bool ok = true;
    for_each_elem(src.upset[a], [&](int b) {
      if (!tgt.leq(v[a], v[b])) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

bool quick_meet_preserving(const Frame& src, const Frame& tgt, const std::vector<ElemId>& v) {
  if (v[src.top()] != tgt.top()) return false;
  for (int a = 0; a < src.size(); ++a)
    for (int b = a + 1; b < src.size(); ++b)
      if (v[src.meet(a, b)] != tgt.meet(v[a], v[b])) return false;
  return true;
}

bool quick_localic(const Frame& src, const Frame& tgt, const std::vector<ElemId>& v,
                   std::vector<ElemId>& adj_scratch) {
  if (!quick_meet_preserving(src, tgt, v)) return false;
  for (int a = 0; a < src.size(); ++a)
    if (v[a] == tgt.top() && a != src.top()) return false;
  adj_scratch.assign(tgt.size(), 0);
  for (int b = 0; b < tgt.size(); ++b) {
    ElemId acc = src.top();
    for (int a = 0; a < src.size(); ++a)
      if (tgt.leq(b, v[a])) acc = src.meet(acc, a);
    adj_scratch[b] = acc;
  }
  for (int a = 0; a < tgt.size(); ++a)
    for (int b = 0; b < src.size(); ++b)
      if (v[src.arrow(adj_scratch[a], b)] != tgt.arrow(a, v[b])) return false;
  return true;
}

}  // namespace

MapEnumStats for_each_map(const Frame& source, const Frame& target, MapClass cls,
                          std::uint64_t cap,
                          const std::function<bool(std::uint64_t, const LatticeMap&)>& fn) {
  MapEnumStats stats;
  const int n = source.size();
  const int m = target.size();
  LatticeMap map;
  map.source = &source;
  map.target = &target;
  map.values.assign(n, 0);
  std::vector<ElemId> adj_scratch;

  // Filtered streams have to scan the whole function space to find their
  // class; bound that scan so a sparse class over a huge pair terminates.
  // Covers the full space of every default-catalog pair (8^8 < 20M).
  const std::uint64_t scan_budget =
      std::max<std::uint64_t>(cap > (~std::uint64_t{0}) / 100 ? ~std::uint64_t{0} : cap * 100,
                              20000000);

  std::uint64_t rank = 0;
  for (;;) {
    if (stats.scanned == scan_budget) {
      stats.truncated = true;
      break;
    }
    ++stats.scanned;
    bool pass = true;
    switch (cls) {
      case MapClass::all:
        break;
      case MapClass::monotone:
        pass = quick_monotone(source, target, map.values);
        break;
      case MapClass::meet_preserving:
        pass = quick_meet_preserving(source, target, map.values);
        break;
      case MapClass::localic:
        pass = quick_localic(source, target, map.values, adj_scratch);
        break;
    }
    if (pass) {
      if (stats.emitted == cap) {
        stats.truncated = true;
        break;
      }
      ++stats.emitted;
      if (!fn(rank, map)) break;
    }
    // Odometer step, last position least significant.
    int pos = n - 1;
    while (pos >= 0 && map.values[pos] == m - 1) map.values[pos--] = 0;
    if (pos < 0) break;
    ++map.values[pos];
    ++rank;
  }
  return stats;
}

std::vector<LatticeMap> enumerate_maps(const Frame& source, const Frame& target,
                                       MapClass cls, std::uint64_t cap,
                                       MapEnumStats* stats) {
  std::vector<LatticeMap> out;
  auto s = for_each_map(source, target, cls, cap,
                        [&](std::uint64_t, const LatticeMap& f) {
                          out.push_back(f);
                          return true;
                        });
  if (stats) *stats = s;
  return out;
}

int resolve_jobs(const CatalogSpec& spec) {
  if (const char* env = std::getenv("LOCALE_LAB_JOBS")) {
    int j = std::atoi(env);
    if (j > 0) return std::min(j, 64);
  }
  if (spec.jobs > 0) return std::min(spec.jobs, 64);
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

}  // namespace lolab
