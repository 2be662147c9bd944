#pragma once

#include <string>
#include <vector>

#include "locale_lab/maps.hpp"

namespace fixtures {

inline lolab::Frame chain(const std::vector<std::string>& labels, const std::string& name) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (size_t i = 0; i + 1 < labels.size(); ++i) pairs.emplace_back(labels[i], labels[i + 1]);
  return lolab::frame_check(lolab::lattice_from_order(labels, pairs, lolab::OrderMode::covers),
                            name);
}

inline lolab::Frame c2() { return chain({"0", "1"}, "C2"); }
inline lolab::Frame c3() { return chain({"0", "a", "1"}, "C3"); }
inline lolab::Frame c3c() { return chain({"0", "c", "1"}, "C3c"); }
inline lolab::Frame c4() { return chain({"0", "a", "b", "1"}, "C4"); }

inline lolab::Frame b2() {
  return lolab::frame_check(
      lolab::lattice_from_order({"0", "p", "q", "1"},
                                {{"0", "p"}, {"0", "q"}, {"p", "1"}, {"q", "1"}},
                                lolab::OrderMode::covers),
      "B2");
}

// Non-distributive diamond M3: three incomparable atoms.
inline lolab::CompleteLattice m3() {
  return lolab::lattice_from_order(
      {"0", "x", "y", "z", "1"},
      {{"0", "x"}, {"0", "y"}, {"0", "z"}, {"x", "1"}, {"y", "1"}, {"z", "1"}},
      lolab::OrderMode::covers);
}

// B2 with an extra top: 0 < p,q < s < 1, p ^ q = 0.
inline lolab::Frame m5() {
  return lolab::frame_check(
      lolab::lattice_from_order({"0", "p", "q", "s", "1"},
                                {{"0", "p"}, {"0", "q"}, {"p", "s"}, {"q", "s"}, {"s", "1"}},
                                lolab::OrderMode::covers),
      "M5");
}

// Two-element frame {a, 1}, the closed sublocale c(a) of C3 as a frame.
inline lolab::Frame sa() { return chain({"a", "1"}, "Sa"); }

inline lolab::LatticeMap make_map(const lolab::Frame& src, const lolab::Frame& tgt,
                                  std::vector<lolab::ElemId> values) {
  lolab::LatticeMap m;
  m.source = &src;
  m.target = &tgt;
  m.values = std::move(values);
  return m;
}

// C4 -> C3c: 0->0, a->c, b->c, 1->1.
inline lolab::LatticeMap f_surj(const lolab::Frame& c4f, const lolab::Frame& c3cf) {
  return make_map(c4f, c3cf, {0, 1, 1, 2});
}

// Constant-top endomap of C3.
inline lolab::LatticeMap g_top(const lolab::Frame& c3f) { return make_map(c3f, c3f, {2, 2, 2}); }

// Inclusion {a,1} -> C3.
inline lolab::LatticeMap j_closed(const lolab::Frame& saf, const lolab::Frame& c3f) {
  return make_map(saf, c3f, {1, 2});
}

}  // namespace fixtures
