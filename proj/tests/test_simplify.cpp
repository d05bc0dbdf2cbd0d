#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "sf/family.hpp"
#include "sf/matching.hpp"
#include "sf/rng.hpp"
#include "sf/simplify.hpp"

using namespace sf;

namespace {

SetFamily random_small_family(Rng& rng, int n, int max_members, int max_size) {
    int cnt = 1 + rng.below_int(max_members);
    std::vector<Mask> mem;
    for (int i = 0; i < cnt; ++i) {
        int sz = 1 + rng.below_int(max_size);
        mem.push_back(Mask::of(rng.sample_kset(n, sz)));
    }
    return make_family(n, std::move(mem));
}

bool antichain_oracle(const SetFamily& f) {
    for (const Mask& a : f.members)
        for (const Mask& b : f.members)
            if (!(a == b) && a.subset_of(b)) return false;
    return true;
}

}  // namespace

TEST_CASE("worked example: a triangle of triples collapses to two pairs") {
    SetFamily g = make_family(6, {Mask::of({1, 2, 3}), Mask::of({1, 2, 4}),
                                  Mask::of({3, 4})});
    // nu(G,2) = 2: {123,124} pairwise meet in 2, {34} conflicts with both.
    REQUIRE(nu(g, 2).value == 2);
    SetFamily out = simplify(g, 2, 2);
    CHECK(out.members == std::vector<Mask>{Mask::of({1, 2}), Mask::of({3, 4})});
    CHECK(is_maximal_simplified(out, 2, 2));
    CHECK(!is_maximal_simplified(g, 2, 2));
}

TEST_CASE("simplification preserves the matching-number budget and shrinks pointwise") {
    Rng rng(404040);
    for (int trial = 0; trial < 120; ++trial) {
        SetFamily g = random_small_family(rng, 8, 6, 4);
        for (int t = 1; t <= 3; ++t) {
            NuResult before = nu(g, t);
            if (before.value == kNuInfinite) continue;
            for (int s = before.value; s <= before.value + 1; ++s) {
                SetFamily out = simplify(g, t, s);
                NuResult after = nu(out, t);
                CHECK(after.value <= s);
                CHECK(antichain_oracle(out));
                CHECK(is_maximal_simplified(out, t, s));
                // Every original member contains some simplified member:
                // replacements only ever shrink sets.
                for (const Mask& a : g.members) {
                    bool covered = false;
                    for (const Mask& b : out.members)
                        if (b.subset_of(a)) covered = true;
                    CHECK(covered);
                }
                // Idempotent.
                SetFamily again = simplify(out, t, s);
                CHECK(again.members == out.members);
            }
        }
    }
}

TEST_CASE("a family already at the fixed point is returned unchanged") {
    SetFamily f = make_family(6, {Mask::of({1, 2}), Mask::of({3, 4})});
    REQUIRE(is_maximal_simplified(f, 2, 2));
    CHECK(simplify(f, 2, 2).members == f.members);
}

TEST_CASE("rejects input whose matching number already exceeds the budget") {
    SetFamily f = make_family(6, {Mask::of({1, 2}), Mask::of({3, 4}),
                                  Mask::of({5, 6})});
    REQUIRE(nu(f, 1).value == 3);
    CHECK_THROWS_AS(simplify(f, 1, 2), std::invalid_argument);
}

TEST_CASE("sub-threshold members make the matching number infinite and are rejected") {
    SetFamily f = make_family(5, {Mask::of({1})});
    REQUIRE(nu(f, 2).value == kNuInfinite);
    CHECK_THROWS_AS(simplify(f, 2, 1), std::invalid_argument);
}
