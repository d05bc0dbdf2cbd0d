#pragma once
// r-spreadness: |F(X)| <= r^{-|X|} |F| for every X.  Exact certification,
// the maximal-restriction search that always yields an r-spread restriction,
// the (r,f)-spread variant, and a seeded Monte-Carlo check of the random-
// subset containment bound for spread families.

#include <cstdint>
#include <optional>
#include <string>

#include "sf/counting.hpp"
#include "sf/family.hpp"

namespace sf {

struct SpreadCertificate {
    Frac r;
    bool verdict = false;
    std::optional<Mask> violator;    // X with |F(X)| > r^{-|X|} |F|
    std::optional<Mask> violator_t;  // for the (r,f) check: the failing T
};

// Exact verdict via cross-multiplication: p^|X| |F(X)| <= q^|X| |F| for
// r = p/q.  Only X inside some member matter; the reported violator is the
// smallest (by size, then lex) one.  Requires F nonempty and r > 0.
SpreadCertificate is_spread(const SetFamily& f, const Frac& r);

struct SpreadRestriction {
    Mask x;
    SetFamily fx;                    // restrict_family(f, x), r-spread
};

// A maximum-size X with |F(X)| >= r^{-|X|} |F| (ties: larger |F(X)|, then
// lex).  Such an X is inclusion-maximal among qualifying sets, so F(X) is
// r-spread; that certificate is re-checked before returning.
SpreadRestriction find_spread_restriction(const SetFamily& f, const Frac& r);

// F is (r,f)-spread: restrict_family(F,T) is r-spread for every T, |T| <= f,
// lying inside some member (other T give empty restrictions, vacuously fine).
SpreadCertificate is_rf_spread(const SetFamily& f, const Frac& r, int fdepth);

struct SpreadTrialReport {
    long long successes = 0;
    long long trials = 0;
    double estimate = 0.0;
    double bound_plain = 0.0;        // 1 - (5 / log2(r*delta))^beta * k
    double bound_entropy = 0.0;      // 5 replaced by 1 + h2(delta)
    double bound = 0.0;              // the sharper of the two
    bool bound_positive = false;     // bounds need r*delta > 1 and are only
                                     // meaningful when positive
    double stderr_est = 0.0;
};

// Empirical Pr[some member lies inside a (beta*delta)-random subset of [n]],
// with each element kept independently (exact rational Bernoulli draws).
// F must certify r-spread first; requires beta >= 1, 0 < delta <= 1,
// beta*delta <= 1, trials >= 1.  k in the bound is the largest member size.
SpreadTrialReport spread_lemma_trial(const SetFamily& f, int beta,
                                     const Frac& delta, const Frac& r,
                                     long long trials, std::uint64_t seed,
                                     int threads = 1);

}  // namespace sf
