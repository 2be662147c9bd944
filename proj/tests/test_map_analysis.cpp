#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "locale_lab/catalog.hpp"

using namespace lolab;

namespace {

ElemSet mask_of(const Frame& f, std::initializer_list<const char*> labels) {
  ElemSet m = 0;
  for (const char* l : labels) m |= elem_bit(*f.index_of(l));
  return m;
}

}  // namespace

TEST_CASE("classify the identity") {
  auto c3 = fixtures::c3();
  auto id = identity_map(c3);
  auto cls = classify_map(id);
  CHECK(cls.monotone);
  CHECK(cls.meet_preserving);
  CHECK(cls.l1);
  CHECK(cls.l2);
  CHECK(cls.localic);
}

TEST_CASE("classify the constant-top map") {
  auto c3 = fixtures::c3();
  auto g = fixtures::g_top(c3);
  auto cls = classify_map(g);
  CHECK(cls.monotone);
  CHECK(cls.meet_preserving);
  CHECK(!cls.l1);
  CHECK(cls.l1_witness == 0);  // first a with g(a) = 1, a != 1
  CHECK(!cls.localic);
}

TEST_CASE("classify a non-meet-preserving map") {
  auto b2 = fixtures::b2();
  auto c3 = fixtures::c3();
  // p, q -> a; 0 -> 0; 1 -> 1.
  auto h = fixtures::make_map(b2, c3, {0, 1, 1, 2});
  auto cls = classify_map(h);
  CHECK(cls.monotone);
  CHECK(!cls.meet_preserving);
  // First failing subset in rank order is {p, q}: h(p ^ q) = 0 != a.
  CHECK(cls.meet_witness == mask_of(b2, {"p", "q"}));
  CHECK(!cls.l2);
  CHECK(!cls.localic);
}

TEST_CASE("left adjoint of f_surj and friends") {
  auto c4 = fixtures::c4();
  auto c3c = fixtures::c3c();
  auto f = fixtures::f_surj(c4, c3c);
  auto adj = left_adjoint(f);
  CHECK(adj.values == std::vector<ElemId>{0, 1, 3});  // f*(0)=0, f*(c)=a, f*(1)=1

  auto c3 = fixtures::c3();
  auto id = identity_map(c3);
  CHECK(left_adjoint(id).values == std::vector<ElemId>{0, 1, 2});

  auto b2 = fixtures::b2();
  auto h = fixtures::make_map(b2, c3, {0, 1, 1, 2});
  CHECK_THROWS_AS(left_adjoint(h), NotMeetPreserving);

  // g_top's left adjoint is constant bottom.
  CHECK(left_adjoint(fixtures::g_top(c3)).values == std::vector<ElemId>{0, 0, 0});
}

TEST_CASE("images of sublocales") {
  auto c4 = fixtures::c4();
  auto c3c = fixtures::c3c();
  auto f = fixtures::f_surj(c4, c3c);

  // o(b) = {0,a,1} in C4 maps onto the whole of C3c.
  auto ob = make_sublocale(c4, c4.open_set[*c4.index_of("b")]);
  CHECK(ob.members == mask_of(c4, {"0", "a", "1"}));
  CHECK(image_sublocale(f, ob).members == c3c.all());

  auto c3 = fixtures::c3();
  auto id = identity_map(c3);
  auto ca = make_sublocale(c3, mask_of(c3, {"a", "1"}));
  CHECK(image_sublocale(id, ca).members == ca.members);

  auto sa = fixtures::sa();
  auto j = fixtures::j_closed(sa, c3);
  CHECK(image_sublocale(j, make_sublocale(sa, sa.all())).members == mask_of(c3, {"a", "1"}));

  auto b2 = fixtures::b2();
  auto h = fixtures::make_map(b2, c3, {0, 1, 1, 2});
  CHECK_THROWS_AS(image_sublocale(h, make_sublocale(b2, b2.all())), NotLocalic);
  CHECK_THROWS_AS(image_sublocale(f, ca), MixedFrames);
}

TEST_CASE("localic preimages via the pruning fixpoint") {
  auto c4 = fixtures::c4();
  auto c3c = fixtures::c3c();
  auto f = fixtures::f_surj(c4, c3c);

  // f_{-1}[c(c)] = c(f*(c)) = c(a) and f_{-1}[o(c)] = o(a).
  auto cc = make_sublocale(c3c, c3c.upset[*c3c.index_of("c")]);
  auto r1 = localic_preimage(f, cc);
  CHECK(r1.localic.members == mask_of(c4, {"a", "b", "1"}));
  CHECK(r1.localic.closed_at == *c4.index_of("a"));
  CHECK(r1.raw == mask_of(c4, {"a", "b", "1"}));

  auto ocm = make_sublocale(c3c, c3c.open_set[*c3c.index_of("c")]);
  auto r2 = localic_preimage(f, ocm);
  CHECK(r2.localic.members == c4.open_set[*c4.index_of("a")]);
  CHECK(r2.localic.open_at == *c4.index_of("a"));

  auto c3 = fixtures::c3();
  auto id = identity_map(c3);
  for (ElemSet t : enumerate_meet_subsets(c3))
    CHECK(localic_preimage(id, MeetSubset{&c3, t}).localic.members == t);

  auto b2 = fixtures::b2();
  auto h = fixtures::make_map(b2, c3, {0, 1, 1, 2});
  CHECK_THROWS_AS(localic_preimage(h, MeetSubset{&c3, c3.all()}), NotMeetPreserving);
}

TEST_CASE("preimage identities over the catalog") {
  CatalogSpec spec;
  spec.max_join_irreducibles = 2;
  auto frames = catalog_frames(spec);
  for (const auto& src : frames)
    for (const auto& tgt : frames) {
      for (const auto& f : enumerate_maps(src, tgt, MapClass::meet_preserving, 100000)) {
        auto adj = left_adjoint(f).values;
        // f^-1[c(b)] = c(f*(b)) for meet-preserving maps.
        for (int b = 0; b < tgt.size(); ++b)
          CHECK(raw_preimage(f, tgt.upset[b]) == src.upset[adj[b]]);
        if (!classify_map(f).localic) continue;
        // Localic: preimages of principal sublocales, O-preservation, and the
        // image/preimage adjunction over all sublocale pairs.
        for (int b = 0; b < tgt.size(); ++b) {
          CHECK(localic_preimage_set(f, tgt.upset[b]) == src.upset[adj[b]]);
          CHECK(localic_preimage_set(f, tgt.open_set[b]) == src.open_set[adj[b]]);
        }
        CHECK(localic_preimage_set(f, elem_bit(tgt.top())) == elem_bit(src.top()));
        auto src_subs = enumerate_sublocales(src);
        auto tgt_subs = enumerate_sublocales(tgt);
        for (const auto& s : src_subs.all)
          for (const auto& t : tgt_subs.all) {
            bool lhs = subset_of(raw_image(f, s.members), t.members);
            bool rhs = subset_of(s.members, localic_preimage_set(f, t.members));
            CHECK(lhs == rhs);
          }
      }
    }
}

TEST_CASE("open/closed reports") {
  auto c3 = fixtures::c3();
  auto sa = fixtures::sa();
  auto j = fixtures::j_closed(sa, c3);
  auto rj = open_closed_report(j);
  CHECK(!rj.is_open);
  CHECK(rj.open_witness == 1);  // image of the domain top-open is c(a)
  CHECK(rj.is_closed);
  REQUIRE(rj.closed_conditions);
  for (bool c : *rj.closed_conditions) CHECK(c);

  auto c4 = fixtures::c4();
  auto c3c = fixtures::c3c();
  auto rf = open_closed_report(fixtures::f_surj(c4, c3c));
  CHECK(rf.is_open);
  CHECK(rf.is_closed);

  auto rid = open_closed_report(identity_map(c3));
  CHECK(rid.is_open);
  CHECK(rid.is_closed);
}

TEST_CASE("closed-map conditions agree for meet-preserving catalog maps") {
  CatalogSpec spec;
  spec.max_join_irreducibles = 2;
  auto frames = catalog_frames(spec);
  for (const auto& src : frames)
    for (const auto& tgt : frames)
      for (const auto& f : enumerate_maps(src, tgt, MapClass::meet_preserving, 100000)) {
        auto r = open_closed_report(f);
        REQUIRE(r.closed_conditions);
        auto& c = *r.closed_conditions;
        CHECK(c[0] == r.is_closed);
        CHECK(c[0] == c[1]);
        CHECK(c[1] == c[2]);
        CHECK(c[2] == c[3]);
      }
}

TEST_CASE("joyal-tierney report values") {
  auto c4 = fixtures::c4();
  auto c3c = fixtures::c3c();
  auto f = fixtures::f_surj(c4, c3c);
  auto r = joyal_tierney(f);
  CHECK(r.open_images);
  CHECK(r.complete_heyting);
  CHECK(r.frobenius);
  CHECK(r.arrow_identity);
  CHECK(r.lemma_4_1);
  REQUIRE(r.shriek_exists);
  CHECK(r.shriek == std::vector<ElemId>{0, 1, 2, 2});  // 0->0, a->c, b->1, 1->1
  // Frobenius spot value: f_!(b ^ f*(c)) = c = f_!(b) ^ c.
  ElemId b = *c4.index_of("b"), cc = *c3c.index_of("c");
  CHECK(r.shriek[c4.meet(b, r.adjoint[cc])] == cc);
  CHECK(c3c.meet(r.shriek[b], cc) == cc);

  auto c3 = fixtures::c3();
  auto sa = fixtures::sa();
  auto rj = joyal_tierney(fixtures::j_closed(sa, c3));
  CHECK(!rj.open_images);
  CHECK(!rj.complete_heyting);
  CHECK(!rj.frobenius);
  CHECK(!rj.arrow_identity);
  CHECK(rj.all_equal());
  // Heyting witness: j*(a -> 0) = a while j*(a) -> j*(0) = 1.
  CHECK(rj.heyting_witness == std::pair<ElemId, ElemId>{1, 0});

  auto rid = joyal_tierney(identity_map(c3));
  CHECK(rid.all_equal());
  CHECK(rid.open_images);
  CHECK(rid.shriek == std::vector<ElemId>{0, 1, 2});

  auto b2 = fixtures::b2();
  CHECK_THROWS_AS(joyal_tierney(fixtures::make_map(b2, c3, {0, 1, 1, 2})), NotLocalic);
}

TEST_CASE("skeletal hierarchy") {
  auto c4 = fixtures::c4();
  auto c3c = fixtures::c3c();
  auto subs_c3c = enumerate_sublocales(c3c);
  auto rf = skeletal_hierarchy(fixtures::f_surj(c4, c3c), subs_c3c);
  CHECK(rf.skeletal);
  CHECK(rf.nearly_open);
  CHECK(rf.hereditarily_skeletal);
  CHECK(rf.sub_open);
  CHECK(rf.open);
  CHECK(rf.chain_ok());
  CHECK(rf.prop_5_6_agree);

  auto c3 = fixtures::c3();
  auto sa = fixtures::sa();
  auto subs_c3 = enumerate_sublocales(c3);
  auto rj = skeletal_hierarchy(fixtures::j_closed(sa, c3), subs_c3);
  CHECK(!rj.skeletal);
  CHECK(rj.skeletal_witness == 1);  // b = a: j*(a*)* = 1_S != 0_S = j*(a)**
  CHECK(!rj.nearly_open);
  CHECK(!rj.hereditarily_skeletal);
  CHECK(!rj.sub_open);
  CHECK(!rj.open);
  CHECK(rj.chain_ok());
  CHECK(rj.prop_5_6_agree);

  auto rid = skeletal_hierarchy(identity_map(c3), subs_c3);
  CHECK(rid.skeletal);
  CHECK(rid.open);
  CHECK(rid.chain_ok());
}

TEST_CASE("galois connection checks") {
  auto c4 = fixtures::c4();
  auto c3c = fixtures::c3c();
  auto f = fixtures::f_surj(c4, c3c);
  auto fstar = left_adjoint(f);

  PosetMap left{&c3c.lat.order, &c4.lat.order, fstar.values};
  PosetMap right{&c4.lat.order, &c3c.lat.order, f.values};
  auto r = check_galois(left, right);  // 12-pair scan
  CHECK(r.is_adjunction);
  CHECK(r.fg_le_id);
  CHECK(r.id_le_gf);

  auto c3 = fixtures::c3();
  PosetMap const0{&c3.lat.order, &c3.lat.order, {0, 0, 0}};
  PosetMap gtop{&c3.lat.order, &c3.lat.order, {2, 2, 2}};
  CHECK(check_galois(const0, gtop).is_adjunction);

  PosetMap idm{&c3.lat.order, &c3.lat.order, {0, 1, 2}};
  auto bad = check_galois(idm, gtop);
  CHECK(!bad.is_adjunction);
  // First violation in id order: id(a) = a not<= 0 while a <= g(0) = 1.
  CHECK(bad.failure_witness == std::pair<ElemId, ElemId>{1, 0});

  PosetMap wrong{&c4.lat.order, &c3.lat.order, {0, 0, 0, 0}};
  CHECK_THROWS_AS(check_galois(wrong, gtop), MixedPosets);
}

TEST_CASE("quick_classify agrees with classify_map") {
  CatalogSpec spec;
  spec.max_join_irreducibles = 2;
  auto frames = catalog_frames(spec);
  for (const auto& src : frames)
    for (const auto& tgt : frames)
      for_each_map(src, tgt, MapClass::all, 100000,
                   [&](std::uint64_t, const LatticeMap& f) {
                     auto q = quick_classify(f);
                     auto c = classify_map(f);
                     CHECK(q.monotone == c.monotone);
                     CHECK(q.meet_preserving == c.meet_preserving);
                     CHECK(q.localic == c.localic);
                     return true;
                   });
}

TEST_CASE("map composition and identity plumbing") {
  auto c4 = fixtures::c4();
  auto c3c = fixtures::c3c();
  auto f = fixtures::f_surj(c4, c3c);
  auto id4 = identity_map(c4);
  CHECK(compose(f, id4).values == f.values);
  CHECK_THROWS_AS(compose(id4, f), MixedFrames);
  CHECK(map_preserves_all_meets(f));
  CHECK(!map_preserves_all_joins(fixtures::g_top(fixtures::c3())));
}
