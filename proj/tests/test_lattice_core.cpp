#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "locale_lab/json_io.hpp"

using namespace lolab;

TEST_CASE("3-chain from covers has min/max tables") {
  auto lat = lattice_from_order({"0", "a", "1"}, {{"0", "a"}, {"a", "1"}}, OrderMode::covers);
  CHECK(lat.size() == 3);
  CHECK(lat.bottom == 0);
  CHECK(lat.top == 2);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      CHECK(lat.meet(a, b) == std::min(a, b));
      CHECK(lat.join(a, b) == std::max(a, b));
    }
}

TEST_CASE("diamond order gives B2 bounds") {
  auto lat = lattice_from_order({"0", "p", "q", "1"},
                                {{"0", "p"}, {"0", "q"}, {"p", "1"}, {"q", "1"}},
                                OrderMode::covers);
  auto p = *lat.order.index_of("p");
  auto q = *lat.order.index_of("q");
  CHECK(lat.meet(p, q) == *lat.order.index_of("0"));
  CHECK(lat.join(p, q) == *lat.order.index_of("1"));
}

TEST_CASE("antichain has no join") {
  CHECK_THROWS_AS(lattice_from_order({"x", "y"}, {}, OrderMode::covers), MissingJoin);
}

TEST_CASE("leq mode accepts a full relation and rejects cycles") {
  auto lat = lattice_from_order(
      {"0", "a", "1"},
      {{"0", "0"}, {"a", "a"}, {"1", "1"}, {"0", "a"}, {"a", "1"}, {"0", "1"}}, OrderMode::leq);
  CHECK(lat.leq(0, 2));
  CHECK_THROWS_AS(
      lattice_from_order({"x", "y"}, {{"x", "y"}, {"y", "x"}}, OrderMode::covers), CycleDetected);
  CHECK_THROWS_AS(lattice_from_order({"x", "x"}, {}, OrderMode::covers), DuplicateLabel);
  CHECK_THROWS_AS(lattice_from_order({"x"}, {{"x", "zz"}}, OrderMode::covers), UnknownElement);
}

TEST_CASE("frame_check accepts B2 and rejects M3 with an atom triple") {
  CHECK_NOTHROW(fixtures::b2());
  try {
    frame_check(fixtures::m3());
    FAIL("M3 accepted");
  } catch (const FrameViolation& e) {
    // Distinct incomparable atoms.
    auto m3 = fixtures::m3();
    CHECK(e.a != e.b);
    CHECK(!m3.leq(e.a, e.b));
  }
}

TEST_CASE("one-element lattice is a frame") {
  auto f = frame_check(lattice_from_order({"*"}, {}, OrderMode::covers), "C1");
  CHECK(f.size() == 1);
  CHECK(f.bottom() == f.top());
}

TEST_CASE("heyting arrow on C3 matches H1 and brute force") {
  auto f = fixtures::c3();
  ElemId a = 1, one = 2, zero = 0;
  CHECK(heyting_arrow(f, one, a) == a);     // 1 -> a = a
  CHECK(heyting_arrow(f, a, a) == one);     // a -> a = 1
  CHECK(heyting_arrow(f, a, zero) == zero); // brute-force max of {c : c ^ a <= 0}
  CHECK_THROWS_AS(heyting_arrow(f, 5, 0), UnknownElement);

  // Adjunction on all triples.
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      for (int z = 0; z < 3; ++z)
        CHECK(f.leq(f.meet(x, y), z) == f.leq(x, f.arrow(y, z)));
}

TEST_CASE("topologies: Sierpinski, discrete, indiscrete") {
  auto sier = make_space({"x", "y"}, {{}, {"x"}, {"x", "y"}});
  CHECK(frames_isomorphic(frame_from_topology(sier), fixtures::c3()));

  auto discrete = make_space({"x", "y"}, {{}, {"x"}, {"y"}, {"x", "y"}});
  CHECK(frames_isomorphic(frame_from_topology(discrete), fixtures::b2()));

  auto indiscrete = make_space({"x", "y"}, {{}, {"x", "y"}});
  CHECK(frames_isomorphic(frame_from_topology(indiscrete), fixtures::c2()));

  CHECK_THROWS_AS(make_space({"x", "y"}, {{}, {"x"}, {"y"}}), NotATopology);
  CHECK_THROWS_AS(make_space({"x", "y"}, {{"x"}, {"x", "y"}}), NotATopology);
}

TEST_CASE("downset frames: chain, antichain, empty poset") {
  auto chain3 = poset_from_pairs({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}, OrderMode::covers);
  CHECK(frames_isomorphic(downset_frame(chain3), fixtures::c4()));

  auto anti2 = poset_from_pairs({"x", "y"}, {}, OrderMode::covers);
  CHECK(frames_isomorphic(downset_frame(anti2), fixtures::b2()));

  auto empty = poset_from_pairs({}, {}, OrderMode::covers);
  CHECK(downset_frame(empty).size() == 1);
}

TEST_CASE("specialization poset of a T0 space recovers the open-set frame") {
  auto sier = make_space({"x", "y"}, {{}, {"x"}, {"x", "y"}});
  CHECK(frames_isomorphic(downset_frame(specialization_poset(sier)), frame_from_topology(sier)));

  auto three = make_space({"x", "y", "z"}, {{}, {"x"}, {"x", "y"}, {"x", "y", "z"}});
  CHECK(frames_isomorphic(downset_frame(specialization_poset(three)), frame_from_topology(three)));
}

TEST_CASE("lattice JSON round trip") {
  auto f = fixtures::b2();
  auto j = frame_to_json(f);
  auto g = frame_from_json(j);
  CHECK(frames_isomorphic(f, g));
  CHECK(g.name == "B2");
}

TEST_CASE("find_table_violation spots a corrupted entry") {
  auto f = fixtures::c3();
  CHECK(!find_table_violation(f));
  f.lat.meet_tab[1 * 3 + 2] = 2;  // a ^ 1 := 1
  auto v = find_table_violation(f);
  REQUIRE(v);
  CHECK(v->check == "meet");
}
