#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lolab {

// Elements of a finite lattice are dense integer ids assigned in input order.
using ElemId = int;

// Subset of a frame's elements as a bit-mask. Hard limit of 64 elements per
// frame; enumeration-heavy operations apply their own smaller caps.
using ElemSet = std::uint64_t;

inline constexpr int kMaxElems = 64;

constexpr ElemSet elem_bit(int i) { return ElemSet{1} << i; }

constexpr ElemSet full_set(int n) {
  return n >= kMaxElems ? ~ElemSet{0} : (ElemSet{1} << n) - 1;
}

constexpr bool has_elem(ElemSet s, int i) { return (s >> i) & 1; }

constexpr bool subset_of(ElemSet a, ElemSet b) { return (a & ~b) == 0; }

inline int set_size(ElemSet s) { return std::popcount(s); }

// Applies fn(i) to every element of s in increasing id order.
template <typename Fn>
void for_each_elem(ElemSet s, Fn&& fn) {
  while (s) {
    int i = std::countr_zero(s);
    fn(i);
    s &= s - 1;
  }
}

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DuplicateLabel : Error { using Error::Error; };
struct UnknownElement : Error { using Error::Error; };
struct CycleDetected : Error { using Error::Error; };
struct MissingMeet : Error { using Error::Error; };
struct MissingJoin : Error { using Error::Error; };
struct NotATopology : Error { using Error::Error; };
struct FrameTooLarge : Error { using Error::Error; };
struct MixedFrames : Error { using Error::Error; };
struct MixedPosets : Error { using Error::Error; };
struct NotMeetPreserving : Error { using Error::Error; };
struct NotLocalic : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };
struct CapExceeded : Error { using Error::Error; };
struct UnknownTheorem : Error { using Error::Error; };
struct BadPredicate : Error { using Error::Error; };
struct BadInput : Error { using Error::Error; };

// Distributivity failure, with the witness triple that breaks
// (a v b) ^ c = (a ^ c) v (b ^ c).
struct FrameViolation : Error {
  FrameViolation(std::string msg, ElemId a, ElemId b, ElemId c)
      : Error(std::move(msg)), a(a), b(b), c(c) {}
  ElemId a, b, c;
};

}  // namespace lolab
