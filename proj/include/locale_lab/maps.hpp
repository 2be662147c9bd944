#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "locale_lab/sublocale.hpp"

namespace lolab {

// Total function between two frames' element sets.
struct LatticeMap {
  const Frame* source = nullptr;
  const Frame* target = nullptr;
  std::vector<ElemId> values;

  ElemId operator()(ElemId a) const { return values[a]; }
  int src_size() const { return source->size(); }
  int tgt_size() const { return target->size(); }
};

LatticeMap identity_map(const Frame& f);
LatticeMap compose(const LatticeMap& outer, const LatticeMap& inner);

// Pointwise image / preimage as raw element sets.
ElemSet raw_image(const LatticeMap& f, ElemSet s);
ElemSet raw_preimage(const LatticeMap& f, ElemSet t);

struct MapClassification {
  bool monotone = true;
  bool meet_preserving = true;
  bool l1 = true;
  bool l2 = true;
  bool localic = false;  // meet_preserving && l1 && l2

  // Failure evidence, lexicographically first in element-id / subset-rank order.
  std::optional<std::pair<ElemId, ElemId>> monotone_witness;  // a <= b, f(a) not<= f(b)
  std::optional<ElemSet> meet_witness;      // M with f(/\M) != /\f[M]
  std::optional<ElemId> preimage_witness;   // b with f^-1[c(b)] not closed
  std::optional<ElemId> l1_witness;         // a != 1 with f(a) = 1
  std::optional<std::pair<ElemId, ElemId>> l2_witness;  // (a in M, b in L)
};

// Meet preservation is established twice: by the subset-meet scan and by the
// closed-preimage condition; the routes agree on finite lattices and the
// implementation asserts it. L2 is evaluated with h = f*, so a map without a
// left adjoint fails L2 at the meet witness.
MapClassification classify_map(const LatticeMap& f);

// f*(b) = /\ {a : b <= f(a)} for meet-preserving f; the adjunction, its
// unit/counit and f^-1[c(b)] = c(f*(b)) are verified before returning.
// Throws NotMeetPreserving.
LatticeMap left_adjoint(const LatticeMap& f);

// Pointwise image of a sublocale under a localic map. Throws NotLocalic,
// MixedFrames.
Sublocale image_sublocale(const LatticeMap& f, const Sublocale& s);

struct PreimageResult {
  Sublocale localic;  // largest sublocale inside the raw preimage
  ElemSet raw = 0;
};

// Iterated pruning S' = {s in S : all x -> s stay in S} from the raw
// preimage; requires a meet-preserving map and a meet-closed T.
PreimageResult localic_preimage(const LatticeMap& f, const MeetSubset& t);
PreimageResult localic_preimage(const LatticeMap& f, const Sublocale& t);
ElemSet localic_preimage_set(const LatticeMap& f, ElemSet t);

struct OpenClosedReport {
  bool is_open = true;    // every f[o(a)] is open in the target
  bool is_closed = true;  // every f[c(a)] is closed
  std::optional<ElemId> open_witness;
  std::optional<ElemId> closed_witness;

  // The four equivalent closed-map conditions for meet-preserving maps;
  // unset when the map does not preserve meets.
  std::optional<std::array<bool, 4>> closed_conditions;
  std::optional<std::pair<ElemId, ElemId>> closed_cond_witness;
};

OpenClosedReport open_closed_report(const LatticeMap& f);

struct JTReport {
  bool open_images = false;        // (i)
  bool complete_heyting = false;   // (ii) f* preserves all meets, joins and ->
  bool frobenius = false;          // (iii)
  bool arrow_identity = false;     // (iv) f(a -> f*(b)) = f_!(a) -> b
  bool shriek_exists = false;
  std::vector<ElemId> shriek;      // f_! table when it exists
  std::vector<ElemId> adjoint;     // f*
  std::optional<std::pair<ElemId, ElemId>> heyting_witness;    // f*(b->c) mismatch
  std::optional<std::pair<ElemId, ElemId>> frobenius_witness;  // (a, b)
  bool lemma_4_1 = false;  // f[o(a) n o(f*(b))] = f[o(a)] n o(b) on all pairs
  bool all_equal() const {
    return open_images == complete_heyting && complete_heyting == frobenius &&
           frobenius == arrow_identity;
  }
};

// Throws NotLocalic.
JTReport joyal_tierney(const LatticeMap& f);

struct HierarchyReport {
  bool skeletal = false;             // f*(b*)* = f*(b)**
  bool nearly_open = false;          // f*(b*) = f*(b)*
  bool hereditarily_skeletal = false;// f*(b->c)->f*(c) = (f*(b)->f*(c))->f*(c)
  bool sub_open = false;             // f*(b->c) = f*(b)->f*(c)
  bool open = false;
  std::optional<ElemId> skeletal_witness;
  std::optional<ElemId> nearly_open_witness;
  std::optional<std::pair<ElemId, ElemId>> hs_witness;
  std::optional<std::pair<ElemId, ElemId>> sub_open_witness;
  std::optional<ElemId> open_witness;

  // Prop 5.6 conditions (i)-(iii), each quantified over all sublocales of the
  // target, must coincide with the Johnstone identity above.
  bool prop_5_6_agree = true;

  bool chain_ok() const {
    return (!open || sub_open) && (!sub_open || hereditarily_skeletal) &&
           (!hereditarily_skeletal || nearly_open) && (!nearly_open || skeletal);
  }
};

// The hereditarily-skeletal verdict is cross-checked against the three
// closure-commutation conditions quantified over all sublocales of the
// target; the four must coincide. Throws NotLocalic.
HierarchyReport skeletal_hierarchy(const LatticeMap& f, const SublocaleLattice& target_subs);

// ---- generic Galois connections between posets ----

struct PosetMap {
  const Poset* source = nullptr;
  const Poset* target = nullptr;
  std::vector<ElemId> values;
};

struct GaloisReport {
  bool is_adjunction = true;
  std::optional<std::pair<ElemId, ElemId>> failure_witness;  // (x, y)
  bool fg_le_id = true;  // f(g(y)) <= y
  bool id_le_gf = true;  // x <= g(f(x))
  std::optional<ElemId> fg_witness;
  std::optional<ElemId> gf_witness;
};

// Scans f(x) <= y iff x <= g(y) over all pairs; f : X -> Y, g : Y -> X.
// Throws MixedPosets when the posets do not match up.
GaloisReport check_galois(const PosetMap& f, const PosetMap& g);

// Full subset scans (binary-fold route past 16 elements, equivalent on
// finite lattices).
bool map_preserves_all_meets(const LatticeMap& f);
bool map_preserves_all_joins(const LatticeMap& f);

// Light-weight flags for enumeration-heavy paths; agrees with classify_map.
struct QuickFlags {
  bool monotone = false, meet_preserving = false, localic = false;
};
QuickFlags quick_classify(const LatticeMap& f, std::vector<ElemId>* adjoint_out = nullptr);

}  // namespace lolab
