#pragma once
// The t-matching number nu(F,t): the largest multiset of members with all
// pairwise intersections below t.  Repetition matters exactly once: a member
// smaller than t pairs with itself, making nu infinite; otherwise nu is the
// clique number of the conflict graph (edge iff |F_u inter F_v| <= t-1).
// Also: hitting sets, sunflowers, the sum-class partition, Turan's bound and
// the dense-pair extractor.

#include <climits>
#include <cstdint>
#include <optional>
#include <vector>

#include "sf/counting.hpp"
#include "sf/family.hpp"

namespace sf {

inline constexpr int kNuInfinite = INT_MAX;

struct NuResult {
    int value = 0;              // nu, or cap+1 when capped, or kNuInfinite
    bool exact = true;          // false iff search stopped at cap
    std::vector<int> witness;   // member indices; repeated index encodes the
                                // self-pairing of a member smaller than t
};

// cap < 0 means uncapped.  With a cap the search may stop at cap+1, which
// is enough to decide nu <= cap.
NuResult nu(const SetFamily& f, int t, int cap = -1);

// Convenience for the dominant query.
bool nu_at_most(const SetFamily& f, int t, int s);

struct CoverResult {
    int tau = 0;
    Mask cover;
};

// Exact minimum hitting set.  Rejects families containing the empty set.
CoverResult covering_number(const SetFamily& f);

struct Sunflower {
    Mask core;                  // size k-1
    std::vector<int> petals;    // m member indices, pairwise meeting in core
};

// First (lex-smallest core) collection of m members of a k-uniform family
// whose common intersection has size exactly k-1.  Requires m >= 2.
std::optional<Sunflower> find_sunflower(const SetFamily& f, int m);

// Classes V_0..V_{r-1} of C([r],k) by element-sum mod r, embedded in ground
// set [n].  Any two sets in a class intersect in <= k-2 elements.
std::vector<SetFamily> vi_partition(int r, int k, int n);

// s*C(m/s,2) with C(x,2) = x(x-1)/2 for x > 1 and 0 otherwise: a lower
// bound on the number of >=t-intersecting pairs in any m-member family
// with nu <= s.
Frac turan_lower_bound(long long m, int s);

struct DensePair {
    int a = -1, b = -1;             // member indices, a < b
    std::vector<int> common;        // indices c != a,b with
                                    // |F_c inter F_a|, |F_c inter F_b| >= |F_a inter F_b|
};

// Over all pairs with |F_a inter F_b| >= t, maximises |common|; ties go to
// the lexicographically smallest (a,b).  Throws when no pair t-intersects.
// When |F| >= 8 s^2 and nu(F,t) <= s, |common| >= |F| / (4 s^2).
DensePair dense_pair(const SetFamily& f, int t, int s);

}  // namespace sf
