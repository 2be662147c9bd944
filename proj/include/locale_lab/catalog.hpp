#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "locale_lab/adjunction.hpp"

namespace lolab {

struct CatalogSpec {
  int max_join_irreducibles = 3;
  bool include_degenerate = true;
  std::uint64_t max_maps_per_pair = 200000;
  int max_frame_size = kMaxElems;
  int jobs = 0;  // 0 = resolve from LOCALE_LAB_JOBS, else hardware default
};

// All posets on n elements up to isomorphism, in canonical order. Enumerates
// strict orders compatible with the identity linear extension and keeps the
// minimal adjacency bit-string over all permutations.
std::vector<Poset> generate_posets(int n);

// Frames ready for suite work: the frame plus its cached sublocale coframe
// and meet-subset list (immutable, shared across threads).
struct FrameContext {
  Frame frame;
  std::shared_ptr<const SublocaleLattice> subs;  // set by suites that need S(L)
  std::vector<ElemSet> meet_subsets;
  bool subfit = false;
};

struct Catalog {
  CatalogSpec spec;
  std::deque<FrameContext> frames;  // deque: stable addresses for Frame*

  int size() const { return static_cast<int>(frames.size()); }
};

// Downset frames of all posets with at most max_join_irreducibles elements,
// deterministic order. Throws CapExceeded when a frame would exceed
// max_frame_size.
Catalog generate_catalog(const CatalogSpec& spec);
std::vector<Frame> catalog_frames(const CatalogSpec& spec);

enum class MapClass { all, monotone, meet_preserving, localic };

MapClass map_class_from_name(const std::string& name);
const char* map_class_name(MapClass c);

struct MapEnumStats {
  std::uint64_t scanned = 0;
  std::uint64_t emitted = 0;
  bool truncated = false;
};

// Streams all total functions source -> target in lexicographic value order,
// filtered to the class, stopping after cap emissions (flagged). The callback
// receives the lex rank; returning false stops the stream.
MapEnumStats for_each_map(const Frame& source, const Frame& target, MapClass cls,
                          std::uint64_t cap,
                          const std::function<bool(std::uint64_t rank, const LatticeMap&)>& fn);

std::vector<LatticeMap> enumerate_maps(const Frame& source, const Frame& target,
                                       MapClass cls, std::uint64_t cap,
                                       MapEnumStats* stats = nullptr);

int resolve_jobs(const CatalogSpec& spec);

}  // namespace lolab
