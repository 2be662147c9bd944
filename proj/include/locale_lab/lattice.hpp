#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "locale_lab/core.hpp"

namespace lolab {

// Finite poset: labels plus a reflexive-transitive leq relation stored as
// up-set bit rows (up[a] = {b : a <= b}).
struct Poset {
  std::vector<std::string> labels;
  std::vector<ElemSet> up;

  int size() const { return static_cast<int>(labels.size()); }
  bool leq(ElemId a, ElemId b) const { return has_elem(up[a], b); }
  std::optional<ElemId> index_of(const std::string& label) const;
};

enum class OrderMode { covers, leq };

// Builds a poset from labelled pairs. Covers input is closed transitively;
// a full leq relation is closed as well and then validated. Throws
// DuplicateLabel, UnknownElement or CycleDetected.
Poset poset_from_pairs(std::vector<std::string> labels,
                       const std::vector<std::pair<std::string, std::string>>& pairs,
                       OrderMode mode);

struct CompleteLattice {
  Poset order;
  std::vector<ElemId> meet_tab;  // n*n row-major
  std::vector<ElemId> join_tab;
  ElemId bottom = 0;
  ElemId top = 0;

  int size() const { return order.size(); }
  bool leq(ElemId a, ElemId b) const { return order.leq(a, b); }
  ElemId meet(ElemId a, ElemId b) const { return meet_tab[a * size() + b]; }
  ElemId join(ElemId a, ElemId b) const { return join_tab[a * size() + b]; }

  // Finite folds; the empty meet is top, the empty join bottom.
  ElemId meet_all(ElemSet s) const;
  ElemId join_all(ElemSet s) const;
};

// Computes meet/join tables by exhaustive bound search over the order.
// Throws MissingMeet/MissingJoin when a pair lacks a unique bound.
CompleteLattice lattice_from_order(std::vector<std::string> labels,
                                   const std::vector<std::pair<std::string, std::string>>& pairs,
                                   OrderMode mode);
CompleteLattice lattice_from_poset(Poset order);

// A finite frame: complete distributive lattice with its Heyting arrow table
// precomputed, plus the principal up-set / open-sublocale masks every
// downstream module keeps asking for.
struct Frame {
  CompleteLattice lat;
  std::vector<ElemId> arrow_tab;
  std::string name;
  std::vector<ElemSet> upset;     // c(a) = {x : x >= a}
  std::vector<ElemSet> downset;   // {x : x <= a}
  std::vector<ElemSet> open_set;  // o(a) = {a -> x : x in L}

  int size() const { return lat.size(); }
  ElemSet all() const { return full_set(size()); }
  bool leq(ElemId a, ElemId b) const { return lat.leq(a, b); }
  ElemId meet(ElemId a, ElemId b) const { return lat.meet(a, b); }
  ElemId join(ElemId a, ElemId b) const { return lat.join(a, b); }
  ElemId arrow(ElemId a, ElemId b) const { return arrow_tab[a * size() + b]; }
  ElemId pseudo(ElemId a) const { return arrow(a, lat.bottom); }  // a*
  ElemId meet_all(ElemSet s) const { return lat.meet_all(s); }
  ElemId join_all(ElemSet s) const { return lat.join_all(s); }
  ElemId bottom() const { return lat.bottom; }
  ElemId top() const { return lat.top; }
  const std::string& label(ElemId i) const { return lat.order.labels[i]; }
  std::optional<ElemId> index_of(const std::string& label) const {
    return lat.order.index_of(label);
  }
};

// Checks binary distributivity on all triples (equivalent to the frame law on
// finite lattices), computes the arrow table and verifies the Heyting
// adjunction before returning. Throws FrameViolation with a witness triple.
Frame frame_check(CompleteLattice lat, std::string name = "");

// Heyting arrow with label-level validation (UnknownElement).
ElemId heyting_arrow(const Frame& f, ElemId a, ElemId b);

// First internally inconsistent table entry, if any. Used to detect
// corruption of a frame that was valid on construction.
struct TableViolation {
  std::string check;  // "meet", "join", "bottom", "top", "distributivity", "heyting"
  ElemId a = -1, b = -1, c = -1;
};
std::optional<TableViolation> find_table_violation(const Frame& f);

// ---- finite topological spaces ----

struct FiniteSpace {
  std::vector<std::string> points;
  std::vector<ElemSet> opens;  // point-set masks, validated as a topology

  int point_count() const { return static_cast<int>(points.size()); }
};

// Validates that opens include {} and the full point set and are closed under
// union and intersection. Throws NotATopology / DuplicateLabel.
FiniteSpace make_space(std::vector<std::string> points,
                       const std::vector<std::vector<std::string>>& opens);

// Frame of open sets ordered by inclusion; meet = intersection, join = union.
Frame frame_from_topology(const FiniteSpace& space);

// Specialization order of the points: x <= y iff every open containing y
// contains x, so the opens are exactly the down-sets. Only a partial order
// when the space is T0.
Poset specialization_poset(const FiniteSpace& space);

// Frame of down-closed subsets of a poset ordered by inclusion (every finite
// frame arises this way). Throws FrameTooLarge past the 64-element mask limit.
Frame downset_frame(const Poset& p, std::string name = "");

// Order isomorphism test by backtracking permutation search; intended for
// small fixtures and tests.
bool lattices_isomorphic(const CompleteLattice& a, const CompleteLattice& b);
inline bool frames_isomorphic(const Frame& a, const Frame& b) {
  return lattices_isomorphic(a.lat, b.lat);
}

// Stable linear extension of the order (sorted by down-set size, then id);
// canonical presentation order for exports.
std::vector<ElemId> linear_extension(const Poset& p);

}  // namespace lolab
