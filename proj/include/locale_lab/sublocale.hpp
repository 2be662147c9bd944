#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "locale_lab/lattice.hpp"

namespace lolab {

// A sublocale of a frame L, kept as the member bit-mask. Kind witnesses are
// tagged eagerly: open_at/closed_at hold the least a with S = o(a) / c(a).
struct Sublocale {
  const Frame* frame = nullptr;
  ElemSet members = 0;
  std::optional<ElemId> open_at;
  std::optional<ElemId> closed_at;

  bool is_open() const { return open_at.has_value(); }
  bool is_closed() const { return closed_at.has_value(); }
  bool operator==(const Sublocale& o) const {
    return frame == o.frame && members == o.members;
  }
};

// Subset closed under all meets, including the empty meet (top is a member).
struct MeetSubset {
  const Frame* frame = nullptr;
  ElemSet members = 0;
};

struct SublocaleCheck {
  enum class Violation { none, missing_top, meet_escape, arrow_escape };
  bool ok = true;
  Violation kind = Violation::none;
  // meet_escape: members x, s with x ^ s outside; arrow_escape: x in L and
  // member s with x -> s outside. First failure in element-id order.
  ElemId x = -1, s = -1;
};

SublocaleCheck is_sublocale(const Frame& f, ElemSet subset);

// Tags kind witnesses; does not validate. Use after is_sublocale or for sets
// produced by the operations below (sublocales by construction).
Sublocale make_sublocale(const Frame& f, ElemSet members);

std::string sublocale_literal(const Sublocale& s);  // "{a,1} [closed:a]"

// o(a) = {a -> x : x in L} and c(a) = {x : x >= a}.
std::pair<Sublocale, Sublocale> principal_sublocales(const Frame& f, ElemId a);

// Smallest meet-closed superset (adds the empty meet).
MeetSubset meet_closure(const Frame& f, ElemSet subset);
ElemSet meet_closure_set(const Frame& f, ElemSet subset);

// Meet-closure of {a -> x : a in L, x in X}; equals the intersection of all
// sublocales containing X.
Sublocale least_sublocale_containing(const Frame& f, ElemSet subset);

// cl X = c(/\ X); defined for arbitrary subsets.
Sublocale closure_of_subset(const Frame& f, ElemSet subset);

// int X = o(\/ {a : o(a) <= X}); defined for arbitrary subsets, and contained
// in X only when X is a meet-subset.
Sublocale interior_of_subset(const Frame& f, ElemSet subset);

// {b : b** = b}.
Sublocale booleanization(const Frame& f);

struct SubfitReport {
  bool subfit = true;
  ElemId a = -1, b = -1;  // witness pair with a not<= b and no separating c
};

// For all a not<= b there is c with a v c = 1 and b v c != 1.
SubfitReport is_subfit(const Frame& f);

// The enumerated coframe S(L): containment order plus join/meet tables. Joins
// are computed by meet-closure of unions and cross-checked against the least
// upper bound in the containment order on construction.
struct SublocaleLattice {
  const Frame* frame = nullptr;
  std::vector<Sublocale> all;          // ascending mask order
  std::vector<int> join_tab, meet_tab; // m*m index tables
  int void_idx = 0;                    // O = {1}
  int whole_idx = 0;                   // L

  int size() const { return static_cast<int>(all.size()); }
  bool contains_idx(int i, int j) const {  // all[i] <= all[j]
    return subset_of(all[i].members, all[j].members);
  }
  int index_of(ElemSet members) const;  // -1 when not a sublocale
  int join_idx(int i, int j) const { return join_tab[i * size() + j]; }
  int meet_idx(int i, int j) const { return meet_tab[i * size() + j]; }

  // Co-Heyting structure, by intersection over the enumeration:
  // difference(r, s) = smallest t with r <= s v t; supplement = L \ s.
  int difference_idx(int r, int s) const;
  int supplement_idx(int s) const;
  // Complement when it exists: meet = O and join = L.
  std::optional<int> complement_idx(int s) const;

  // Dual distributive law s v (t ^ u) = (s v t) ^ (s v u) on all triples.
  std::optional<std::array<int, 3>> coframe_violation() const;
};

// Scans all subsets containing top (cap applies to frame size, default 20).
SublocaleLattice enumerate_sublocales(const Frame& f, int cap = 20);

// All meet-closed subsets containing top, ascending mask order.
std::vector<ElemSet> enumerate_meet_subsets(const Frame& f);

// Join per formula: meet-closure of the union. Meet is intersection.
Sublocale sub_join(const Sublocale& a, const Sublocale& b);
Sublocale sub_meet(const Sublocale& a, const Sublocale& b);
Sublocale sub_difference(const SublocaleLattice& sl, const Sublocale& r, const Sublocale& s);
Sublocale sub_supplement(const SublocaleLattice& sl, const Sublocale& s);

// A sublocale as a frame of its own: meets and arrow restrict, joins are
// recomputed. Elements keep their host labels; returned ids follow ascending
// host id order.
Frame sublocale_to_frame(const Sublocale& s, std::string name = "");

}  // namespace lolab
