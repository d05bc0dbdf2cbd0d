#pragma once
// Exhaustive and budgeted extremal searches, plus the brute-force counting
// and structure oracles that anchor the closed-form modules: maximum-family
// search under a matching-number cap, enumeration counts for clique-union
// shadows, the s(n-k+1) bound verifier, and the witness classifier.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sf/counting.hpp"
#include "sf/family.hpp"

namespace sf {

struct ExtremalResult {
    int n = 0, k = 0, t = 0, s = 0;
    int max_size = 0;
    SetFamily witness;
    bool exhaustive = false;
    std::uint64_t nodes = 0;  // branch-and-bound nodes visited
};

// Maximum |F| over F inside the complete k-uniform family on [n] with
// nu(F,t) <= s.  For s = 1 the search runs over left-compressed families
// (element-swap compressions preserve the pairwise t-intersection, so the
// maximum is attained on one): sets are scanned in colex order, excluding a
// set kills everything dominating it, including a set kills everything
// conflicting with it.  For s >= 2 the search scans lex order, may fix the
// lex-least k-set as a member at the root (any nonempty family has an
// isomorphic copy containing it), prunes any (s+1)-clique of pairwise
// <t-intersecting members incrementally, and bounds the tail by a greedy
// partition into pairwise-conflicting cliques (each contributes at most s).
// A seed family, when given, serves as the initial incumbent.
// Budget counts nodes; on exhaustion the best found so far is returned with
// exhaustive = false.  Requires n >= 1, 1 <= k <= n, t >= 1, s >= 0 and an
// enumerable base family.
ExtremalResult max_family_exhaustive(int n, int k, int t, int s,
                                     std::uint64_t budget = 50'000'000ULL,
                                     const SetFamily* seed = nullptr);

// Direct enumeration of the k-sets meeting some clique of the profile
// (disjoint supports laid out consecutively from element 1) in at least
// t + x_i elements.  The independent oracle for the closed-form count.
// Requires support_total() <= n and C(n,k) enumerable.
BigCount brute_size_AK(int n, int k, const CliqueProfile& profile);

struct Kk1Report {
    int n = 0, k = 0, s = 0;
    bool hypothesis_ok = false;     // n >= 2k + 2s - 4 + max{2s, k}
    BigCount bound;                 // s (n - k + 1)
    SetFamily construction;        // the upper shadow of the s near-kernels
    bool construction_nu_ok = false;  // nu(construction, k-1) <= s
    bool construction_size_ok = false;
    ExtremalResult search;          // max family with nu(.,k-1) <= s
    bool agrees = false;            // search.max_size == bound
};

// Checks the s(n-k+1) bound for nu(F,k-1) <= s at one parameter point:
// builds the tight construction (k-sets containing one of s fixed
// (k-1)-sets that pairwise share k-3 elements), validates its size and
// matching number, and runs the (possibly budgeted) search seeded with it.
// Out-of-hypothesis parameters are allowed; the report then merely records
// what the search found.  Requires k >= 3 (two (k-1)-subsets of a k-set
// cannot share k-3 >= 0 elements below that) and n >= k - 3 + 2s.
Kk1Report verify_kk1(int n, int k, int s,
                     std::uint64_t budget = 50'000'000ULL);

struct StructureClassification {
    bool is_clique_union_shadow = false;  // witness is exactly the k-upper-
                                          // shadow of a union of t-cliques
    std::optional<CliqueProfile> profile;  // the recovered x_i when it is
    bool is_full_t_star = false;     // witness = all k-sets over a t-core
    BigCount h_value;                // best clique-union shadow size
    bool exceeds_h = false;          // |witness| > h_value: certainly not a
                                     // clique-union shadow
    std::string note;
};

// Classifies an extremal witness: simplifies it, tries the greedy clique
// extraction on the generator, and accepts clique-union-shadow shape only
// when the recovered profile regenerates the witness verbatim.  The h-value
// comparison supplies a certificate when the witness is strictly larger
// than every clique-union shadow.
StructureClassification verify_extremal_structure(const ExtremalResult& result);

}  // namespace sf
