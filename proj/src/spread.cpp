#include "sf/spread.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <utility>

#include "sf/rng.hpp"

namespace sf {
namespace {

// X -> |F(X)| over every X lying inside some member, sorted by (size, lex)
// so scans are deterministic.
std::vector<std::pair<Mask, long long>> subset_counts(const SetFamily& f) {
    std::unordered_map<Mask, long long, MaskHash> cnt;
    std::uint64_t work = 0;
    for (const Mask& m : f.members) {
        int sz = m.count();
        if (sz > 25)
            throw std::invalid_argument(
                "spread check needs member sizes <= 25 (power-set scan)");
        work += 1ULL << sz;
        if (work > kDefaultEnumCap)
            throw std::invalid_argument("spread check: power-set scan too large");
        for_each_subset(m, [&](const Mask& x) { ++cnt[x]; });
    }
    std::vector<std::pair<Mask, long long>> out(cnt.begin(), cnt.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        int ca = a.first.count(), cb = b.first.count();
        if (ca != cb) return ca < cb;
        return lex_less(a.first, b.first);
    });
    return out;
}

void check_r(const Frac& r) {
    if (r <= 0) throw std::invalid_argument("spread ratio r must be positive");
}

}  // namespace

SpreadCertificate is_spread(const SetFamily& f, const Frac& r) {
    if (f.empty()) throw std::invalid_argument("is_spread: empty family");
    check_r(r);
    const BigCount p = numerator(r), q = denominator(r);
    const BigCount total = f.size();
    SpreadCertificate cert;
    cert.r = r;
    cert.verdict = true;
    for (const auto& [x, c] : subset_counts(f)) {
        int sz = x.count();
        if (bigpow(p, sz) * c > bigpow(q, sz) * total) {
            cert.verdict = false;
            cert.violator = x;
            break;
        }
    }
    return cert;
}

SpreadRestriction find_spread_restriction(const SetFamily& f, const Frac& r) {
    if (f.empty())
        throw std::invalid_argument("find_spread_restriction: empty family");
    check_r(r);
    const BigCount p = numerator(r), q = denominator(r);
    const BigCount total = f.size();
    // Among X with |F(X)| >= r^{-|X|} |F|, take the largest (counts, then
    // lex order break ties).  No proper superset of it qualifies, and any
    // spread violator of F(X) would extend X to a larger qualifying set,
    // so F(X) is r-spread.
    bool have = false;
    Mask best;
    int best_sz = -1;
    long long best_cnt = 0;
    for (const auto& [x, c] : subset_counts(f)) {
        int sz = x.count();
        if (bigpow(p, sz) * c < bigpow(q, sz) * total) continue;
        if (!have || sz > best_sz || (sz == best_sz && c > best_cnt)) {
            have = true;
            best = x;
            best_sz = sz;
            best_cnt = c;
        }
    }
    if (!have) throw std::logic_error("find_spread_restriction: empty set must qualify");
    SpreadRestriction out;
    out.x = best;
    out.fx = restrict_family(f, best);
    SpreadCertificate cert = is_spread(out.fx, r);
    if (!cert.verdict)
        throw std::logic_error(
            "find_spread_restriction: maximal restriction failed the spread "
            "certificate at X = " + best.str());
    return out;
}

SpreadCertificate is_rf_spread(const SetFamily& f, const Frac& r, int fdepth) {
    if (fdepth < 0) throw std::invalid_argument("is_rf_spread: f < 0");
    check_r(r);
    SpreadCertificate cert;
    cert.r = r;
    cert.verdict = true;
    if (f.empty()) return cert;
    for (const auto& [t, c] : subset_counts(f)) {
        if (t.count() > fdepth) continue;
        SpreadCertificate inner = is_spread(restrict_family(f, t), r);
        if (!inner.verdict) {
            cert.verdict = false;
            cert.violator_t = t;
            cert.violator = inner.violator;
            break;
        }
    }
    return cert;
}

namespace {

double entropy2(double d) {
    double h = 0.0;
    if (d > 0.0) h -= d * std::log2(d);
    if (d < 1.0) h -= (1.0 - d) * std::log2(1.0 - d);
    return h;
}

// One exact Bernoulli(num/den) draw; unbiased via 128-bit rejection.
bool bernoulli(Rng& rng, const BigCount& num, const BigCount& den) {
    static const BigCount range = BigCount(1) << 128;
    const BigCount reject = range % den;
    BigCount x;
    do {
        x = (BigCount(rng.next()) << 64) | rng.next();
    } while (x < reject);    // drop the low slice: the rest splits evenly
    return x % den < num;
}

}  // namespace

SpreadTrialReport spread_lemma_trial(const SetFamily& f, int beta,
                                     const Frac& delta, const Frac& r,
                                     long long trials, std::uint64_t seed,
                                     int threads) {
    if (f.empty()) throw std::invalid_argument("spread_lemma_trial: empty family");
    if (beta < 1) throw std::invalid_argument("spread_lemma_trial: beta >= 1 required");
    if (delta <= 0 || delta > 1)
        throw std::invalid_argument("spread_lemma_trial: delta in (0,1] required");
    if (Frac(beta) * delta > 1)
        throw std::invalid_argument("spread_lemma_trial: beta*delta <= 1 required");
    if (trials < 1) throw std::invalid_argument("spread_lemma_trial: trials >= 1");
    if (!is_spread(f, r).verdict)
        throw std::invalid_argument("spread_lemma_trial: family is not r-spread");

    const Frac incl = Frac(beta) * delta;     // element-inclusion probability
    const BigCount num = numerator(incl), den = denominator(incl);
    const int n = f.n;

    auto run_one = [&](std::uint64_t trial) -> bool {
        Rng rng = Rng::for_trial(seed, trial);
        Mask w;
        for (int e = 1; e <= n; ++e)
            if (bernoulli(rng, num, den)) w.set(e);
        for (const Mask& m : f.members)
            if (m.subset_of(w)) return true;
        return false;
    };

    long long successes = 0;
    int nthreads = static_cast<int>(
        std::max<long long>(1, std::min<long long>(threads, trials)));
    if (nthreads == 1) {
        for (long long i = 0; i < trials; ++i) successes += run_one(i);
    } else {
        std::vector<long long> part(nthreads, 0);
        std::vector<std::thread> pool;
        for (int w = 0; w < nthreads; ++w) {
            pool.emplace_back([&, w]() {
                long long acc = 0;
                for (long long i = w; i < trials; i += nthreads)
                    acc += run_one(i);
                part[w] = acc;
            });
        }
        for (auto& th : pool) th.join();
        for (long long p : part) successes += p;
    }

    SpreadTrialReport rep;
    rep.successes = successes;
    rep.trials = trials;
    rep.estimate = static_cast<double>(successes) / static_cast<double>(trials);
    rep.stderr_est =
        std::sqrt(rep.estimate * (1.0 - rep.estimate) / static_cast<double>(trials));

    const double kmax = f.max_member_size();
    const double rd =
        static_cast<double>(r) * static_cast<double>(delta);
    const double lg = std::log2(rd);
    if (lg > 0.0) {
        const double d = static_cast<double>(delta);
        rep.bound_plain = 1.0 - std::pow(5.0 / lg, beta) * kmax;
        rep.bound_entropy = 1.0 - std::pow((1.0 + entropy2(d)) / lg, beta) * kmax;
        rep.bound = std::max(rep.bound_plain, rep.bound_entropy);
        rep.bound_positive = rep.bound > 0.0;
    } else {
        rep.bound_plain = rep.bound_entropy = rep.bound =
            -std::numeric_limits<double>::infinity();
        rep.bound_positive = false;
    }
    return rep;
}

}  // namespace sf
