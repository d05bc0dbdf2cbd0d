#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "sf/counting.hpp"
#include "sf/family.hpp"
#include "sf/matching.hpp"
#include "sf/search.hpp"

using namespace sf;

namespace {

// Exhaustive oracle: scan every subfamily of the complete k-uniform family
// and keep the largest with nu <= s.  Only viable for tiny C(n,k).
int brute_max_family(int n, int k, int t, int s) {
    std::vector<Mask> base;
    for_each_ksubset(n, k, [&](const Mask& m) { base.push_back(m); });
    const int b = static_cast<int>(base.size());
    REQUIRE(b <= 16);
    int best = 0;
    for (unsigned long sub = 0; sub < (1UL << b); ++sub) {
        int sz = __builtin_popcountl(sub);
        if (sz <= best) continue;
        std::vector<Mask> mem;
        for (int i = 0; i < b; ++i)
            if (sub >> i & 1) mem.push_back(base[i]);
        if (nu_at_most(make_family(n, std::move(mem)), t, s)) best = sz;
    }
    return best;
}

ExtremalResult manual_result(const SetFamily& w, int t, int s) {
    ExtremalResult r;
    r.n = w.n;
    r.k = w.members.empty() ? 0 : w.members.front().count();
    r.t = t;
    r.s = s;
    r.max_size = static_cast<int>(w.size());
    r.witness = w;
    r.exhaustive = true;
    return r;
}

}  // namespace

TEST_CASE("search agrees with full subfamily enumeration on tiny grids") {
    struct P {
        int n, k, t, smax;
    };
    const P grid[] = {{4, 2, 1, 2}, {5, 2, 1, 3}, {5, 3, 2, 2}, {6, 4, 3, 2},
                      {5, 4, 2, 2}, {6, 5, 3, 2}};
    for (const P& p : grid) {
        for (int s = 1; s <= p.smax; ++s) {
            ExtremalResult r = max_family_exhaustive(p.n, p.k, p.t, s);
            CHECK(r.exhaustive);
            CHECK(r.max_size == brute_max_family(p.n, p.k, p.t, s));
            CHECK(static_cast<int>(r.witness.size()) == r.max_size);
            CHECK(nu_at_most(r.witness, p.t, s));
        }
    }
}

TEST_CASE("one-clique regime: the search value is the full-star count") {
    ExtremalResult r = max_family_exhaustive(9, 3, 2, 1);
    CHECK(r.exhaustive);
    CHECK(BigCount(r.max_size) == binom(7, 1));
    StructureClassification cl = verify_extremal_structure(r);
    CHECK(cl.is_full_t_star);
    CHECK(cl.is_clique_union_shadow);
    REQUIRE(cl.profile.has_value());
    CHECK(cl.profile->x == std::vector<int>{0});
    CHECK(!cl.exceeds_h);
}

TEST_CASE("bounded-matching pair regime: the search value is the two-arm bound") {
    ExtremalResult r = max_family_exhaustive(8, 2, 1, 2);
    CHECK(r.exhaustive);
    CHECK(BigCount(r.max_size) == emc_bound(8, 2, 2));
    CHECK(r.max_size == 13);
}

TEST_CASE("enumeration and closed form agree for clique-union shadows") {
    CHECK(brute_size_AK(12, 4, CliqueProfile{2, {1, 0}}) ==
          size_AK_exact(12, 4, CliqueProfile{2, {1, 0}}));
    CHECK(brute_size_AK(10, 3, CliqueProfile{1, {2}}) ==
          size_AK_exact(10, 3, CliqueProfile{1, {2}}));
    CHECK(brute_size_AK(14, 4, CliqueProfile{3, {0, 0}}) ==
          size_AK_exact(14, 4, CliqueProfile{3, {0, 0}}));
}

TEST_CASE("near-kernel bound verifies exhaustively at the smallest hypothesis point") {
    Kk1Report rep = verify_kk1(9, 3, 1);
    CHECK(rep.hypothesis_ok);  // 9 >= 2k+2s-4+max{2s,k} = 7
    CHECK(rep.bound == 7);
    CHECK(rep.construction_size_ok);
    CHECK(rep.construction_nu_ok);
    CHECK(rep.search.exhaustive);
    CHECK(rep.agrees);
}

TEST_CASE("near-kernel bound holds under a budgeted search at a larger point") {
    Kk1Report rep = verify_kk1(12, 3, 2, 2'000'000);
    CHECK(rep.hypothesis_ok);  // 12 >= 6+4-4+4 = 10
    CHECK(rep.bound == 20);
    CHECK(rep.construction_size_ok);
    CHECK(rep.construction_nu_ok);
    CHECK(rep.agrees);  // the seeded incumbent is never beaten

    Kk1Report again = verify_kk1(12, 3, 2, 2'000'000);
    CHECK(again.search.nodes == rep.search.nodes);
    CHECK(again.search.max_size == rep.search.max_size);
    CHECK(again.search.witness.members == rep.search.witness.members);
}

TEST_CASE("near-kernel verifier rejects degenerate uniformities") {
    CHECK_THROWS_AS(verify_kk1(8, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(verify_kk1(3, 3, 2), std::invalid_argument);  // n too small
}

TEST_CASE("a two-kernel upper shadow classifies as a clique-union shadow") {
    SetFamily m = make_family(8, {Mask::of({1, 2}), Mask::of({3, 4})});
    SetFamily w = generated_family(m, 3);
    REQUIRE(w.size() == 12);
    StructureClassification cl = verify_extremal_structure(manual_result(w, 2, 2));
    CHECK(cl.is_clique_union_shadow);
    REQUIRE(cl.profile.has_value());
    CHECK(cl.profile->x == std::vector<int>{0, 0});
    CHECK(!cl.is_full_t_star);
    CHECK(!cl.exceeds_h);  // h(8,3,2,2) is attained by exactly this shape
}

TEST_CASE("the dense small-ground optimum is certified to beat every shadow") {
    std::vector<Mask> mem;
    for_each_ksubset(5, 3, [&](const Mask& m) { mem.push_back(m); });
    SetFamily w = make_family(6, mem);  // all triples inside {1..5}, n = 6
    REQUIRE(w.size() == 10);
    REQUIRE(nu_at_most(w, 2, 2));
    StructureClassification cl = verify_extremal_structure(manual_result(w, 2, 2));
    CHECK(!cl.is_clique_union_shadow);
    CHECK(!cl.is_full_t_star);
    CHECK(cl.h_value == 8);
    CHECK(cl.exceeds_h);
}

TEST_CASE("an empty witness is classified without work") {
    ExtremalResult r;
    r.n = 6;
    r.k = 3;
    r.t = 2;
    r.s = 0;
    StructureClassification cl = verify_extremal_structure(r);
    CHECK(!cl.is_clique_union_shadow);
    CHECK(cl.note == "empty witness");
}

TEST_CASE("search validates its inputs") {
    CHECK_THROWS_AS(max_family_exhaustive(0, 1, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(max_family_exhaustive(5, 6, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(max_family_exhaustive(5, 2, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(max_family_exhaustive(5, 2, 1, -1), std::invalid_argument);
}

TEST_CASE("zero matching budget forces the empty family") {
    ExtremalResult r = max_family_exhaustive(5, 2, 1, 0);
    CHECK(r.exhaustive);
    CHECK(r.max_size == 0);
    CHECK(r.witness.empty());
}
