#pragma once
// Exact counting for the extremal constructions: binomials, sizes of the
// threshold families D_i, matching-generated and clique-generated upper
// shadows, and the optimisation h over clique profiles.  Everything is
// arbitrary-precision integer or rational; no floating point.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sf {

using BigCount = boost::multiprecision::cpp_int;
using Frac = boost::multiprecision::cpp_rational;

// C(n,k); zero for k < 0 or k > n.  Values are memoised.
const BigCount& binom(long long n, long long k);

BigCount bigpow(const BigCount& base, unsigned exp);

// A clique on support Y of size t+2x consists of all (t+x)-subsets of Y.
// A profile lists the x_i; supports are pairwise disjoint.
struct CliqueProfile {
    int t = 0;
    std::vector<int> x;
    int support_total() const {
        int s = 0;
        for (int xi : x) s += t + 2 * xi;
        return s;
    }
};

// |D_i|: k-sets meeting a fixed (t+2i)-set in at least t+i elements.
// Requires 0 <= i <= k-t and n >= t+2i.
BigCount size_D_i(int n, int k, int t, int i);

// Upper shadow of s pairwise disjoint t-sets, by inclusion-exclusion.
// Requires n >= s*t.
BigCount size_AM(int n, int k, int t, int s);

// Upper shadow of the clique union for a profile with disjoint supports.
// Requires support_total() <= n and each t+x_i <= k.
BigCount size_AK_exact(int n, int k, const CliqueProfile& profile);

struct HOptResult {
    BigCount value;
    CliqueProfile argmax;
    std::uint64_t profiles_scanned = 0;
    bool exhaustive = true;
};

// max |A[K]| over profiles with s cliques, 0 <= x_i <= k-t, sorted
// descending, supports fitting in [n].  Scans every profile (the count is
// tiny at any reasonable s and k-t); cap aborts pathological requests.
HOptResult h_opt(int n, int k, int t, int s, std::uint64_t cap = 50'000'000ULL);

// max{ C(ks+k-1,k), C(n,k) - C(n-s,k) }: the two-regime bound for s+1
// pairwise disjoint k-sets.  Requires n >= k(s+1).
BigCount emc_bound(int n, int k, int s);

// f_beta(i) = C(t-beta, t-i) * C(m+beta, i)^2 * (s(l+1))^(m-i).
BigCount f_beta(int i, int t, int m, int beta, int s, int ell);

// A well-known inclusion-exclusion display for the event count over s
// aligned cliques with all x_i = i; its terms undercount the per-block
// events, so it is kept only for numeric comparison with the exact count.
BigCount size_E_i_paper_formula(int n, int k, int t, int s, int i);

// Exact count of k-sets meeting at least one of s disjoint (t+2i)-supports
// in >= t+i elements (profile with all x_i = i).
BigCount size_E_i_exact(int n, int k, int t, int s, int i);

struct SandwichReport {
    BigCount exact;          // |A(E_i)|, exact
    BigCount d_i;            // |D_i|
    BigCount bound;          // C(t+2i, i) * C(n-t-i, k-t-i)
    bool lower_ok = false;   // 98 * s * bound <= 100 * exact    (needs hypotheses)
    bool mid_ok = false;     // exact <= s * d_i                 (always)
    bool d_upper_ok = false; // d_i <= bound                     (always)
    bool d_lower_ok = false; // 99 * bound <= 100 * d_i          (needs hypotheses)
    bool hypotheses_met = false;
    std::string note;
};

// The two-sided bound chain on |A(E_i)| and |D_i| with the 0.98/0.99
// constants, exact cross-multiplied arithmetic.  Hypotheses (stand-in
// constant bigc): ell >= 1, i <= ell, t >= 400*ell^3*s,
// n > k + bigc*sqrt(s*t)*(k-t), n >= bigc*s*ell^4*(k-t).
SandwichReport size_E_sandwich(int n, int k, int t, int s, int i, int ell,
                               int bigc = 1000);

struct MonotonicityReport {
    BigCount h_s, h_s_minus_1, h_1;
    bool holds = false;          // 10 s^3 h_s >= 10 s^3 h_{s-1} + (10 s^3 - 1) h_1
    bool hypotheses_met = false; // t >= 8 and n >= k + bigc*sqrt(s*t)*(k-t)
};

// Superadditivity-with-loss of h in s, checked exactly.
MonotonicityReport h_monotonicity_check(int n, int k, int t, int s, int bigc = 1);

std::string to_string(const BigCount& v);
std::string to_string(const Frac& v);

// Parses "p" or "p/q" into an exact rational; q > 0 required.
Frac parse_frac(const std::string& text);

}  // namespace sf
