#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <set>

#include "fixtures.hpp"
#include "locale_lab/json_io.hpp"
#include "locale_lab/search.hpp"
#include "locale_lab/theorems.hpp"

using namespace lolab;

namespace {

void report(int criterion, bool pass, const std::string& what) {
  std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, what.c_str());
  CHECK_MESSAGE(pass, "criterion ", criterion, ": ", what);
}

bool suite_passes(const std::string& id, double* seconds = nullptr) {
  CatalogSpec spec;  // defaults: max_ji = 3, 200000 maps per pair
  auto r = verify_theorem(id, spec);
  if (seconds) *seconds = r.wall_seconds;
  // A pass over zero instances would be vacuous.
  auto it = r.instances_checked.find("checked");
  bool nonvacuous = it != r.instances_checked.end() && it->second > 0;
  return r.pass && nonvacuous;
}

// Independent oracles for the frozen fixture values of criterion 2.

bool brute_is_sublocale(const Frame& f, ElemSet subset) {
  std::vector<int> members;
  for_each_elem(subset, [&](int i) { members.push_back(i); });
  for (ElemSet pick = 0; pick < (ElemSet{1} << members.size()); ++pick) {
    ElemSet chosen = 0;
    for (size_t i = 0; i < members.size(); ++i)
      if (pick >> i & 1) chosen |= elem_bit(members[i]);
    if (!has_elem(subset, f.meet_all(chosen))) return false;
  }
  for (int x = 0; x < f.size(); ++x)
    for (int s : members)
      if (!has_elem(subset, f.arrow(x, s))) return false;
  return true;
}

std::vector<ElemSet> brute_sublocales(const Frame& f) {
  std::vector<ElemSet> out;
  for (ElemSet s = 0; s <= f.all(); ++s)
    if (brute_is_sublocale(f, s)) out.push_back(s);
  return out;
}

int brute_poset_count(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) slots.emplace_back(i, j);
  const int k = static_cast<int>(slots.size());
  std::vector<int> perm(n);
  std::set<std::uint64_t> canon;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
    for (int s = 0; s < k; ++s)
      if (mask >> s & 1) rel[slots[s].first][slots[s].second] = true;
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b) {
        if (rel[a][b] && rel[b][a]) ok = false;
        for (int c = 0; c < n && ok; ++c)
          if (rel[a][b] && rel[b][c] && !rel[a][c]) ok = false;
      }
    if (!ok) continue;
    std::uint64_t best = ~std::uint64_t{0};
    for (int i = 0; i < n; ++i) perm[i] = i;
    do {
      std::uint64_t bits = 0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (rel[perm[a]][perm[b]]) bits |= std::uint64_t{1} << (a * n + b);
      best = std::min(best, bits);
    } while (std::next_permutation(perm.begin(), perm.end()));
    canon.insert(best);
  }
  return static_cast<int>(canon.size());
}

ElemId brute_pseudo(const Frame& f, ElemId b) {
  ElemSet zeros = 0;
  for (int c = 0; c < f.size(); ++c)
    if (f.meet(c, b) == f.bottom()) zeros |= elem_bit(c);
  ElemId best = f.bottom();
  for_each_elem(zeros, [&](int c) {
    if (subset_of(zeros, f.downset[c])) best = c;
  });
  return best;
}

}  // namespace

TEST_CASE("acceptance criteria") {
  // 1. Heyting core over the whole catalog, under 10 seconds.
  {
    double secs = 0;
    bool pass = suite_passes("heyting", &secs);
    report(1, pass && secs < 10.0,
           "H1-H4 and a <= a** on all catalog frames (" + std::to_string(secs) + "s)");
  }

  // 2. Exact fixture counts, each value recomputed by its brute-force oracle.
  {
    auto c2 = fixtures::c2();
    auto c3 = fixtures::c3();
    auto b2 = fixtures::b2();
    bool pass = true;

    pass &= brute_sublocales(c2).size() == 2 && enumerate_sublocales(c2).size() == 2;
    pass &= brute_sublocales(c3).size() == 4 && enumerate_sublocales(c3).size() == 4;
    auto slb = enumerate_sublocales(b2);
    pass &= brute_sublocales(b2).size() == 4 && slb.size() == 4;
    for (const auto& s : slb.all) pass &= s.closed_at.has_value();

    ElemSet expect_bool = 0;
    for (int b = 0; b < c3.size(); ++b)
      if (brute_pseudo(c3, brute_pseudo(c3, b)) == b) expect_bool |= elem_bit(b);
    pass &= expect_bool == (elem_bit(0) | elem_bit(2));
    pass &= booleanization(c3).members == expect_bool;

    const int expected[] = {1, 2, 5, 16};
    for (int n = 1; n <= 4; ++n) {
      if (n <= 3) pass &= brute_poset_count(n) == expected[n - 1];
      pass &= static_cast<int>(generate_posets(n).size()) == expected[n - 1];
    }
    report(2, pass, "|S(C2)|=2 |S(C3)|=4 |S(B2)|=4 all closed; B(C3)={0,1}; posets 1,2,5,16");
  }

  // 3. Type I over every function between every ordered catalog pair (caps
  // permitting), both iff directions, under 5 minutes. Both sides of the iff
  // must have been exercised: meet-preserving and non-meet-preserving
  // instances each appear.
  {
    auto r = verify_theorem("type-I", CatalogSpec{});
    bool pass = r.pass && r.wall_seconds < 300.0;
    std::uint64_t checked = r.instances_checked.at("checked");
    std::uint64_t mp = r.instances_checked.at("meet_preserving");
    pass = pass && mp > 0 && checked > mp;
    report(3, pass, "adjoint pair I iff meet-preservation (" +
                        std::to_string(r.wall_seconds) + "s, " + std::to_string(checked) +
                        " maps, " + std::to_string(mp) + " meet-preserving)");
  }

  // 4. Type II plus the independent Prop 3.2.5 localic test.
  report(4, suite_passes("type-II"), "adjoint pair II iff localic; Prop 3.2.5 agrees with L1/L2");

  // 5. Types III and IV with both triple-adjunction corollaries.
  report(5, suite_passes("type-III") && suite_passes("type-IV"),
         "adjoint pairs III/IV iff open (localic); triple adjunctions exact");

  // 6. Joyal-Tierney (i)-(iv), Lemma 4.1, Prop 4.4.
  report(6, suite_passes("jt") && suite_passes("lemma-4-1") && suite_passes("prop-4-4"),
         "Joyal-Tierney conditions agree; Lemma 4.1; Prop 4.4 containments");

  // 7. Hierarchy chain, Prop 5.6 coincidence, dissolution equality.
  report(7,
         suite_passes("hierarchy") && suite_passes("prop-5-6") && suite_passes("dissolution"),
         "skeletal hierarchy; Prop 5.6 conditions; dissolution equality");

  // 8. Commutativity laws of sections 5 and 6.
  report(8,
         suite_passes("commutativity") && suite_passes("prop-5-5") &&
             suite_passes("closed-6-1") && suite_passes("closed-6-3") &&
             suite_passes("closed-6-5") && suite_passes("closed-6-6"),
         "(C1)/(C2), Prop 5.1, Cor 5.2, Lemma 5.4, Prop 5.5, section-6 laws");

  // 9. Oracle equivalence: pruning fixpoint, least-sublocale intersection,
  // brute-force arrow.
  report(9, suite_passes("oracle-frame") && suite_passes("oracle-preimage"),
         "implementation paths agree with their independent oracles");

  // 10. Twenty randomized single-entry corruptions, each detected with a
  // replayable witness file.
  {
    bool pass = true;
    auto dir = std::filesystem::temp_directory_path();
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      auto outcome = run_single_mutation(seed);
      if (!outcome.detected) {
        std::printf("  undetected mutation (seed %llu): %s\n",
                    static_cast<unsigned long long>(seed), outcome.description.c_str());
        pass = false;
        continue;
      }
      auto path = dir / ("locale_lab_witness_" + std::to_string(seed) + ".json");
      write_json_file(path.string(), outcome.witness);
      pass &= replay_witness(load_json_file(path.string()));
      std::filesystem::remove(path);
    }
    report(10, pass, "20/20 seeded table corruptions detected and replayed from file");
  }

  // 11. Subfit targets: open iff the adjoint is a complete lattice hom.
  report(11, suite_passes("subfit-open"),
         "open iff complete-lattice-homomorphism adjoint on subfit targets");
}
