#pragma once
// The decomposition machinery.  peel() runs the layered shrink-and-peel
// chain on a generator family; spread_approximate() splits a k-uniform
// family into spread pieces plus a remainder, guided by a dense-piece
// oracle; dense_piece() finds the dense restriction set inside a generator
// with bounded matching number; extract_cliques() greedily recovers a
// union-of-cliques profile; iterative_driver() schedules the whole
// alternating pipeline.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sf/counting.hpp"
#include "sf/family.hpp"

namespace sf {

// ---------------------------------------------------------------- peeling

struct TstarEntry {
    Mask u;      // a size-t set from the terminal family
    int f = 0;   // the largest chain index i with u in T_i
};

struct PeelingTrace {
    int n = 0, t = 0, s = 0, q = 0;
    bool input_was_maximal = false;   // input already a simplification fixed point
    std::map<int, SetFamily> chain;   // i -> T_i for i = t..q
    std::map<int, SetFamily> layers;  // i -> W_i (size-i members of T_i), i = t+1..q
    int phi = 0;                      // largest i with T_i consisting of t-sets only
    std::vector<TstarEntry> tstar;    // the t-sets U_j of T_phi; the first `ell`
                                      // entries are exactly those with f = q
    int ell = 0;
    bool decomposition_ok = false;    // every member of T_q contains one of:
                                      // a U_j with f(j)=q, a peeled layer set,
                                      // or a member of T_{f(j)+1}[U_j]
    bool layer_bound_checked = false; // the (s-ell)(2esq)^{i-t} bound applies
    bool layer_bound_ok = false;
};

// Simplifies the input (recording whether that was a no-op), then peels:
// W_i collects the size-i members of T_i and T_{i-1} = simplify(T_i \ W_i).
// The decomposition inclusion and the layer growth bound are re-verified on
// the result.  Requires 1 <= t <= q, s >= 0, members of size <= q, and
// nu(S,t) <= s.
PeelingTrace peel(const SetFamily& s_in, int t, int s, int q);

// --------------------------------------------------- spread approximation

struct ApproxPiece {
    Mask s;           // the split set S_i
    Mask x;           // the oracle's X_i (a subset of S_i)
    SetFamily piece;  // the members of the input split off with S_i
};

struct ApproxDecomposition {
    SetFamily s_family;   // the S_i, as a family
    SetFamily r_family;   // the remainder
    std::vector<ApproxPiece> pieces;
    Frac r;
    Frac theta_used;      // the promise constant: given, or observed maximum
    Frac remainder_bound; // max{eta, theta r^{q+1-l2} C(n-q-1,k-q-1)/C(n-l2,k-l2)}
    bool remainder_ok = false;
    int steps = 0;
};

// Given a subfamily P (|P| >= eta), yields an X with l1 <= |X| <= l2 that
// P is dense on; nullopt means the oracle gives up and the run aborts.
using DenseOracle = std::function<std::optional<Mask>(const SetFamily&)>;

// X = {} always works; its honest promise constant is C(n,k).
DenseOracle trivial_oracle();
Frac trivial_oracle_theta(int n, int k);

// The removal loop: stop when |F^i| < eta (or nothing is left); get X_i
// from the oracle; grow a maximum S_i >= X_i with
// |F^i(S_i)| >= r^{|X_i|-|S_i|} |F^i(X_i)| (the maximal-restriction
// search, which certifies F^i(S_i) r-spread); stop when |S_i| > q, else
// split off the members containing S_i and continue.  The partition, the
// per-piece spread certificates and the remainder bound are all re-checked
// before returning.  When theta is supplied every oracle reply must honour
// |P| <= theta |P(X)| / C(n-|X|,k-|X|); when absent, the observed maximum
// of |P| C(n-|X|,k-|X|) / |P(X)| is used in the remainder bound.
// Requires a k-uniform family, 0 <= l1 <= l2 <= q, r > 0 and
// r <= (n-l1)/(k-l1).
ApproxDecomposition spread_approximate(const SetFamily& f, const Frac& eta,
                                       const std::optional<Frac>& theta,
                                       int l1, int l2, int q, const Frac& r,
                                       const DenseOracle& oracle);

// -------------------------------------------------------------- dense piece

struct DensePieceResult {
    Mask x;
    Frac beta;              // |F_on_G[X]| / C(n-|X|, k-|X|)
    int i = 0;              // |X| - t1
    BigCount g_count;       // |G[X]|
    bool pigeonhole_ok = false;  // |G[X]| 4s^2(t1+1) C(t1,t1-i) C(ell-t1,i)^2 >= |G|
    double window_hi = 0.0; // t1 + 4((k-t1)t1(ell-t1)^2/(n-t1))^(1/3) + log2(s^2 t1/lambda)
    bool window_ok = false; // t1 <= |X| <= window_hi
    double size_factor_log2 = 0.0;  // log2 of 8s^2 t1 e^{3(...)^(1/3)} beta C(n-t1,k-t1)
    bool size_ok = false;           // |F_on_G| <= that factor
};

// The constructive dense-restriction search: pick the pair A,B maximising
// the number of members intersecting both in >= |A inter B| elements, fix
// the t1 lowest elements I of A inter B, and scan the candidates
// X = U + V + W (U = C inter I, V,W inside C's overlaps with A\B and B\A)
// over every such C plus A and B themselves.  Candidates failing the
// counting filter are dropped (at least one always passes); the winner
// maximises |G[X]|, ties to the lexicographically smallest X.  The size
// window and the size inequality are evaluated and reported, not asserted.
// Requires t1 >= 1, s >= 1, members of G of size <= ell, nu(G,t1) <= s,
// F_on_G k-uniform with |F_on_G| > lambda C(n-t1,k-t1); throws when G has
// no t1-intersecting pair.
DensePieceResult dense_piece(const SetFamily& f_on_g, const SetFamily& g,
                             int t1, int s, int ell, const Frac& lambda);

// --------------------------------------------------------- clique extraction

struct ExtractedClique {
    Mask support;  // Y_i, of size t + 2 x_i
    int x = 0;
};

// Greedy recovery of a union-of-cliques generator: pick the layer m
// maximising |W_m| C(n-t-m, ell-m) (ties to larger m); for m = 0 remove the
// star of the t-set with the largest star, else find the pair A,B in W_m
// with |A inter B| = t maximising the common-neighbour count, put
// Y = A + B and remove every member meeting Y in >= t+m elements; recurse
// with s-1.  Succeeds iff the recursion empties S, every removal step keeps
// nu <= s-1, and the final clique union K confirms nu(K,t) <= s.  Absence
// of structure returns nullopt -- a result, not an error.
// Requires members of size in [t, t+ell] and nu(S,t) <= s.
std::optional<std::vector<ExtractedClique>> extract_cliques(
    const SetFamily& s_in, int t, int s, int ell);

// ------------------------------------------------------------------ driver

struct DriverConfig {
    double cprime = 1.0;    // the schedule constant C'
    double alpha = 0.5;     // exponents of the ambient-size hypothesis; they
    double beta = 0.5;      // only shape the logged target uniformity
    bool force_loop = false;            // skip the small-k shortcut
    std::optional<int> max_steps;       // overrides the 15 log2(st+sigma) cap
};

struct DriverStep {
    int i = 0;
    std::string stage;      // "shortcut", "initial", "initial-skip", "loop"
    int l1 = 0;
    double l2_raw = 0.0;
    int l2_eff = 0;
    double q_raw = 0.0;
    int q_eff = 0;
    double tprime_raw = 0.0;
    int tprime_eff = 0;
    Frac r_sched;
    Frac r_eff;
    Frac eta;
    double theta_sched_log2 = 0.0;
    Frac theta_observed;
    Frac lambda;
    BigCount removed;       // |R_i|
    std::size_t s_size = 0; // |S_i|
    std::size_t f_left = 0;
    std::vector<std::string> deviations;
};

struct DriverResult {
    ApproxDecomposition decomp;   // final S, accumulated R, last pieces
    std::vector<DriverStep> log;
    bool shortcut = false;
    bool aborted = false;
    std::string abort_reason;
    int t_prime = 0;              // final t' with nu(S,t') <= s verified
    int step_cap = 0;
    double target_q = 0.0;        // the aimed-for final uniformity (logged only)
    Frac remainder_bound_sum;     // sum of the per-step remainder bounds
    bool remainder_sum_ok = false;
};

// The alternating schedule: a small-k shortcut (S = F); an initial plain
// spread approximation when k is large enough, else S^(0) = F; then loop
// steps pairing the dense-piece oracle with a fresh approximation and a
// direct nu(S,t') <= s check (retrying with smaller t' when it fails at
// desk scale, logging every deviation).  Stops when q stabilises, the step
// cap is reached, or a schedule degenerates (q < t aborts with diagnostic).
// Requires a k-uniform family with nu(F,t) <= s, t >= 1, s >= 1, sigma >= 0.
DriverResult iterative_driver(const SetFamily& f, int t, int s, int sigma,
                              const DriverConfig& config = {});

}  // namespace sf
