#pragma once

#include <optional>
#include <string>
#include <vector>

#include "locale_lab/maps.hpp"

namespace lolab {

enum class AdjunctionType { I, II, III, IV };

const char* adjunction_type_name(AdjunctionType t);

// One leg of an adjunction-type diagram. Assignments land in principal
// sublocales, so each image is recorded by its defining element:
// closed legs store m with value c(m), open legs store u with value o(u).
struct TypeAssignments {
  std::vector<ElemId> forward;   // indexed by source elements a
  std::vector<ElemId> backward;  // indexed by target elements b
};

struct AdjunctionTypeReport {
  AdjunctionType type;
  TypeAssignments assignments;
  bool is_adjoint_pair = true;
  std::optional<std::pair<ElemId, ElemId>> pair_witness;  // (a, b)
  bool theorem_predicate = false;  // I: meet-preserving, II: localic,
                                   // III: open, IV: open localic
  bool agreement = false;          // is_adjoint_pair == theorem_predicate
  // Type IV only: "a <= f*(b) iff phi(a) <= b" must match the pair verdict.
  std::optional<bool> phi_adjunction;
};

// Raw Galois scan of the diagram for any map; no precondition.
bool adjoint_pair_holds(const LatticeMap& f, AdjunctionType t,
                        std::optional<std::pair<ElemId, ElemId>>* witness = nullptr,
                        TypeAssignments* out = nullptr);

// Enforces the per-type preconditions (I: any map; II: order-preserving;
// III/IV: meet-preserving); throws PreconditionViolated.
AdjunctionTypeReport adjunction_type(const LatticeMap& f, AdjunctionType t);

// Equivalence chains around the type theorems; each entry is one condition's
// verdict, scanned over all (a, b). All entries must coincide (the trailing
// ones only under the stated map property).
std::vector<bool> lemma_type_i_chain(const LatticeMap& f);    // (i)-(iv), +(v)-(viii) when monotone
std::vector<bool> lemma_type_iii_chain(const LatticeMap& f);  // (i)-(iv), meet-preserving maps
bool lemma_3_2_4_holds(const LatticeMap& f);                  // meet-preserving maps
bool localic_by_interior_test(const LatticeMap& f);           // (int f^-1[o(b)])^c = f^-1[c(b)]
bool localic_by_type_i_theorem(const LatticeMap& f);          // pair I + O-preimage + complement condition

struct LawResult {
  std::string law;
  enum class Verdict { pass, fail, skipped } verdict = Verdict::pass;
  std::string reason;           // skip reason
  std::string witness;          // printable witness, empty when none
  std::uint64_t instances = 0;  // quantifier instances evaluated
};

struct CommutativityReport {
  std::vector<LawResult> laws;
  const LawResult* find(const std::string& id) const;
};

// Per-law verdicts for one meet-preserving map; laws whose preconditions the
// map does not meet are reported as skipped. Sublocale enumerations of both
// frames are taken from the caller so suites can share them.
// Throws NotMeetPreserving.
CommutativityReport commutativity_report(const LatticeMap& f,
                                         const SublocaleLattice& src_subs,
                                         const SublocaleLattice& tgt_subs);

struct DissolutionReport {
  bool naturality = false;       // f(/\S) = /\f[S] for all S in S(L)
  bool inequality = false;       // /\f_{-1}[T] >= f*(/\T) for all T
  bool equality = false;         // equality above; iff hereditarily skeletal
  std::optional<bool> open_inequality;  // f_!(/\f_{-1}[T]) <= /\T, open maps only
  std::optional<int> equality_witness;  // index into S(M)
};

// Throws NotLocalic; FrameTooLarge propagates from enumeration.
DissolutionReport dissolution_report(const LatticeMap& f,
                                     const SublocaleLattice& src_subs,
                                     const SublocaleLattice& tgt_subs);

// ---- individual law evaluators (shared by reports and theorem suites) ----

namespace laws {

// Optional witness is the first failing quantifier instance, as a printable
// string; std::nullopt means the law holds.
using Outcome = std::optional<std::string>;

Outcome c1(const LatticeMap& f, const std::vector<ElemSet>& tgt_meet_subsets);
Outcome c2(const LatticeMap& f, const std::vector<ElemSet>& tgt_meet_subsets);
Outcome prop_5_1(const LatticeMap& f, bool open, const std::vector<ElemSet>& tgt_meet_subsets);
Outcome cor_5_2(const LatticeMap& f, bool open, const SublocaleLattice& tgt_subs);
Outcome lemma_5_4(const LatticeMap& f, const std::vector<ElemSet>& tgt_meet_subsets);
Outcome prop_5_5(const LatticeMap& f, bool open_localic, const SublocaleLattice& tgt_subs);
Outcome open_join_identity(const LatticeMap& f, bool open, const SublocaleLattice& tgt_subs);
// The subset-quantified laws below scan all 2^|L| subsets of the source;
// callers gate them behind the 12-element source cap.
Outcome lemma_6_1(const LatticeMap& f, bool meet_preserving);
Outcome lemma_6_2(const LatticeMap& f, const SublocaleLattice& src_subs);
Outcome prop_6_3(const LatticeMap& f, bool closed, const SublocaleLattice& src_subs);
Outcome cor_6_4(const LatticeMap& f, bool closed_and_mp);
Outcome cor_6_5(const LatticeMap& f, bool closed, const SublocaleLattice& src_subs);
Outcome prop_6_6(const LatticeMap& f, bool open, const SublocaleLattice& src_subs);

}  // namespace laws

inline constexpr int kSubsetLawCap = 12;

}  // namespace lolab
