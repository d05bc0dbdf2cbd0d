#include "sf/approx.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "sf/matching.hpp"
#include "sf/simplify.hpp"
#include "sf/spread.hpp"

namespace sf {

namespace {

Frac frac_pow(const Frac& base, int exp) {
    Frac out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

// log2 of a positive big integer without overflowing the double conversion.
double lg2(const BigCount& v) {
    if (v <= 0) return -std::numeric_limits<double>::infinity();
    std::size_t b = boost::multiprecision::msb(v);
    if (b <= 512) return std::log2(v.convert_to<double>());
    BigCount top = v >> (b - 52);
    return std::log2(top.convert_to<double>()) + static_cast<double>(b - 52);
}

double lg2(const Frac& v) {
    return lg2(numerator(v)) - lg2(denominator(v));
}

// floor() that survives infinities and the int range.
int ifloor(double x, int lo, int hi) {
    if (!(x > -1e18)) return lo;
    if (!(x < 1e18)) return hi;
    double f = std::floor(x);
    if (f < lo) return lo;
    if (f > hi) return hi;
    return static_cast<int>(f);
}

SetFamily family_minus(const SetFamily& f, const SetFamily& drop) {
    std::vector<Mask> keep;
    keep.reserve(f.members.size());
    std::set_difference(f.members.begin(), f.members.end(),
                        drop.members.begin(), drop.members.end(),
                        std::back_inserter(keep), lex_less);
    return make_family(f.n, std::move(keep));
}

SetFamily family_union(const SetFamily& a, const SetFamily& b) {
    std::vector<Mask> all = a.members;
    all.insert(all.end(), b.members.begin(), b.members.end());
    return make_family(a.n == 0 ? b.n : a.n, std::move(all));
}

}  // namespace

// ---------------------------------------------------------------- peeling

PeelingTrace peel(const SetFamily& s_in, int t, int s, int q) {
    if (t < 1 || q < t || s < 0)
        throw std::invalid_argument("peel: need 1 <= t <= q and s >= 0");
    if (s_in.max_member_size() > q)
        throw std::invalid_argument("peel: a member is larger than q");
    if (!nu_at_most(s_in, t, s))
        throw std::invalid_argument("peel: nu(S,t) exceeds s");

    PeelingTrace tr;
    tr.n = s_in.n;
    tr.t = t;
    tr.s = s;
    tr.q = q;
    tr.input_was_maximal = is_maximal_simplified(s_in, t, s);

    tr.chain[q] = simplify(s_in, t, s);
    for (int i = q; i > t; --i) {
        const SetFamily& ti = tr.chain.at(i);
        std::vector<Mask> w, rest;
        for (const Mask& m : ti.members)
            (m.count() == i ? w : rest).push_back(m);
        tr.layers[i] = make_family(tr.n, std::move(w));
        tr.chain[i - 1] = simplify(make_family(tr.n, std::move(rest)), t, s);
    }

    for (int i = t; i <= q; ++i) {
        const SetFamily& ti = tr.chain.at(i);
        if (ti.max_member_size() > i)
            throw std::logic_error("peel: chain member exceeds its level");
        if (!is_antichain(ti))
            throw std::logic_error("peel: chain family is not an antichain");
        if (!nu_at_most(ti, t, s))
            throw std::logic_error("peel: chain family exceeds nu bound");
    }

    auto all_t_sets = [&](const SetFamily& fam) {
        for (const Mask& m : fam.members)
            if (m.count() != t) return false;
        return true;
    };
    tr.phi = t;
    for (int i = q; i >= t; --i)
        if (all_t_sets(tr.chain.at(i))) {
            tr.phi = i;
            break;
        }

    auto f_of = [&](const Mask& u) {
        for (int i = q; i >= t; --i)
            if (tr.chain.at(i).contains(u)) return i;
        throw std::logic_error("peel: terminal set vanished from the chain");
    };
    std::vector<TstarEntry> tail;
    for (const Mask& u : tr.chain.at(tr.phi).members) {
        TstarEntry e{u, f_of(u)};
        if (e.f == q)
            tr.tstar.push_back(e);
        else
            tail.push_back(e);
    }
    tr.ell = static_cast<int>(tr.tstar.size());
    tr.tstar.insert(tr.tstar.end(), tail.begin(), tail.end());

    // The pointwise decomposition: each top-chain member must contain a
    // persistent t-set, a peeled layer set, or a set of T_{f(j)+1} above
    // some non-persistent U_j.
    std::vector<Mask> covers;
    for (int j = 0; j < tr.ell; ++j) covers.push_back(tr.tstar[j].u);
    for (int i = tr.phi + 1; i <= q; ++i)
        for (const Mask& m : tr.layers.at(i).members) covers.push_back(m);
    for (std::size_t j = tr.ell; j < tr.tstar.size(); ++j) {
        const TstarEntry& e = tr.tstar[j];
        for (const Mask& m : tr.chain.at(e.f + 1).members)
            if (e.u.subset_of(m)) covers.push_back(m);
    }
    tr.decomposition_ok = true;
    for (const Mask& f : tr.chain.at(q).members) {
        bool hit = false;
        for (const Mask& c : covers)
            if (c.subset_of(f)) {
                hit = true;
                break;
            }
        if (!hit) {
            tr.decomposition_ok = false;
            break;
        }
    }
    if (!tr.decomposition_ok)
        throw std::logic_error("peel: decomposition inclusion failed");

    if (tr.ell == s) {
        // With s persistent t-sets every other member would conflict with
        // all of them, so the top family is exactly those t-sets.
        bool exact = static_cast<int>(tr.chain.at(q).size()) == s;
        for (int i = t + 1; i <= q && exact; ++i) exact = tr.layers.at(i).empty();
        if (!exact)
            throw std::logic_error("peel: full persistent star not exact");
        tr.layer_bound_checked = true;
        tr.layer_bound_ok = true;
    } else {
        // |W_i| <= (s-ell)(2esq)^{i-t}; 2e < 543657/100000, so a failure
        // against the inflated base is a failure beyond rounding doubt.
        tr.layer_bound_checked = true;
        tr.layer_bound_ok = true;
        for (int i = t + 1; i <= q; ++i) {
            int d = i - t;
            BigCount lhs = BigCount(tr.layers.at(i).size()) * bigpow(100000, d);
            BigCount rhs = BigCount(s - tr.ell) *
                           bigpow(BigCount(543657) * s * q, d);
            if (lhs > rhs) {
                tr.layer_bound_ok = false;
                break;
            }
        }
        if (!tr.layer_bound_ok)
            throw std::logic_error("peel: layer growth bound failed");
    }
    return tr;
}

// --------------------------------------------------- spread approximation

DenseOracle trivial_oracle() {
    return [](const SetFamily&) { return std::optional<Mask>(Mask{}); };
}

Frac trivial_oracle_theta(int n, int k) { return Frac(binom(n, k)); }

ApproxDecomposition spread_approximate(const SetFamily& f, const Frac& eta,
                                       const std::optional<Frac>& theta,
                                       int l1, int l2, int q, const Frac& r,
                                       const DenseOracle& oracle) {
    if (!(0 <= l1 && l1 <= l2 && l2 <= q))
        throw std::invalid_argument("spread_approximate: need 0 <= l1 <= l2 <= q");
    if (r <= 0) throw std::invalid_argument("spread_approximate: r must be positive");
    const int n = f.n;
    int k = 0;
    if (!f.empty()) {
        if (!f.uniform)
            throw std::invalid_argument("spread_approximate: family must be uniform");
        k = *f.uniform;
        if (l2 > k)
            throw std::invalid_argument("spread_approximate: l2 exceeds the uniformity");
        if (l1 < k && r * (k - l1) > (n - l1))
            throw std::invalid_argument(
                "spread_approximate: r exceeds (n-l1)/(k-l1)");
    }

    ApproxDecomposition out;
    out.r = r;
    SetFamily cur = f;
    Frac observed = 0;

    while (true) {
        if (cur.empty() || Frac(BigCount(cur.size())) < eta) {
            out.r_family = cur;  // stopped by the size threshold
            break;
        }
        std::optional<Mask> xo = oracle(cur);
        if (!xo)
            throw std::runtime_error(
                "spread_approximate: oracle gave up on a family of size " +
                std::to_string(cur.size()));
        const Mask x = *xo;
        const int xs = x.count();
        if (xs < l1 || xs > l2)
            throw std::runtime_error(
                "spread_approximate: oracle set size outside [l1,l2]");
        SetFamily gx = restrict_family(cur, x);
        if (gx.empty())
            throw std::runtime_error(
                "spread_approximate: oracle set lies in no member");
        Frac promise = Frac(BigCount(cur.size()) * binom(n - xs, k - xs),
                            BigCount(gx.size()));
        if (theta && promise > *theta)
            throw std::runtime_error(
                "spread_approximate: oracle promise constant violated");
        if (promise > observed) observed = promise;

        SpreadRestriction sr = find_spread_restriction(gx, r);
        const Mask si = x | sr.x;
        if (static_cast<int>(si.count()) > q) {
            out.r_family = cur;  // stopped by the size-q overflow
            break;
        }
        SetFamily piece = star(cur, si);
        if (piece.empty())
            throw std::logic_error("spread_approximate: empty split piece");
        out.pieces.push_back(ApproxPiece{si, x, piece});
        cur = family_minus(cur, piece);
        ++out.steps;
    }

    out.theta_used = theta ? *theta : observed;

    std::vector<Mask> skeys;
    std::vector<Mask> assembled = out.r_family.members;
    for (const ApproxPiece& p : out.pieces) {
        skeys.push_back(p.s);
        assembled.insert(assembled.end(), p.piece.members.begin(),
                         p.piece.members.end());
    }
    out.s_family = make_family(n, skeys);
    if (out.s_family.size() != out.pieces.size())
        throw std::logic_error("spread_approximate: duplicate split sets");

    std::size_t total = out.r_family.size();
    for (const ApproxPiece& p : out.pieces) total += p.piece.size();
    SetFamily re = make_family(n, std::move(assembled));
    if (total != f.size() || re.members != f.members)
        throw std::logic_error("spread_approximate: partition check failed");

    for (const ApproxPiece& p : out.pieces) {
        SetFamily px = restrict_family(p.piece, p.s);
        if (!is_spread(px, r).verdict)
            throw std::logic_error("spread_approximate: piece lost spreadness");
    }

    Frac term = 0;
    if (!f.empty()) {
        const BigCount& den = binom(n - l2, k - l2);
        if (den > 0)
            term = out.theta_used * frac_pow(r, q + 1 - l2) *
                   Frac(binom(n - q - 1, k - q - 1), den);
    }
    out.remainder_bound = std::max(eta, term);
    out.remainder_ok =
        Frac(BigCount(out.r_family.size())) <= out.remainder_bound;
    if (!out.remainder_ok)
        throw std::logic_error("spread_approximate: remainder bound failed");
    return out;
}

// -------------------------------------------------------------- dense piece

DensePieceResult dense_piece(const SetFamily& f_on_g, const SetFamily& g,
                             int t1, int s, int ell, const Frac& lambda) {
    if (t1 < 1 || s < 1) throw std::invalid_argument("dense_piece: need t1,s >= 1");
    if (g.empty()) throw std::invalid_argument("dense_piece: empty generator");
    if (g.max_member_size() > ell)
        throw std::invalid_argument("dense_piece: generator member larger than ell");
    if (f_on_g.empty() || !f_on_g.uniform)
        throw std::invalid_argument("dense_piece: covered family must be uniform");
    if (f_on_g.n != g.n)
        throw std::invalid_argument("dense_piece: ground-set mismatch");
    if (!nu_at_most(g, t1, s))
        throw std::invalid_argument("dense_piece: nu(G,t1) exceeds s");
    const int n = f_on_g.n, k = *f_on_g.uniform;
    if (Frac(BigCount(f_on_g.size())) <= lambda * binom(n - t1, k - t1))
        throw std::invalid_argument("dense_piece: family below the lambda threshold");

    DensePair dp = dense_pair(g, t1, s);  // throws without a t1-intersecting pair
    const Mask a = g.members[dp.a], b = g.members[dp.b];
    const Mask ab = a & b;
    Mask iset;
    {
        std::vector<int> el = ab.elements();
        for (int j = 0; j < t1; ++j) iset.set(el[j]);
    }
    const Mask d1 = a - b, d2 = b - a;

    std::unordered_set<Mask, MaskHash> cands;
    auto add_candidates = [&](const Mask& c) {
        const Mask u = c & iset;
        const int i = t1 - u.count();
        const Mask cd1 = c & d1, cd2 = c & d2;
        if (cd1.count() < i || cd2.count() < i) return;
        for_each_dsubset(cd1, i, [&](const Mask& v) {
            for_each_dsubset(cd2, i, [&](const Mask& w) {
                cands.insert(u | v | w);
            });
        });
    };
    for (int c : dp.common) add_candidates(g.members[c]);
    add_candidates(a);
    add_candidates(b);

    std::vector<Mask> ordered(cands.begin(), cands.end());
    std::sort(ordered.begin(), ordered.end(), lex_less);

    const BigCount gsize = g.size();
    bool found = false;
    Mask best;
    BigCount best_cnt = 0;
    for (const Mask& x : ordered) {
        const int i = x.count() - t1;
        BigCount cnt = star(g, x).size();
        BigCount lhs = cnt * 4 * s * s * (t1 + 1) * binom(t1, t1 - i) *
                       bigpow(binom(ell - t1, i), 2);
        if (lhs < gsize) continue;  // the counting filter
        if (!found || cnt > best_cnt) {
            found = true;
            best = x;
            best_cnt = cnt;
        }
    }
    if (!found)
        throw std::logic_error("dense_piece: no candidate passed the filter");

    DensePieceResult res;
    res.x = best;
    res.i = best.count() - t1;
    res.g_count = best_cnt;
    res.pigeonhole_ok = true;

    const int xsz = best.count();
    const BigCount& bx = binom(n - xsz, k - xsz);
    BigCount fstar = star(f_on_g, best).size();
    res.beta = bx > 0 ? Frac(fstar, bx) : Frac(0);

    const double lam = lambda.convert_to<double>();
    const double bulk = std::cbrt(std::max(0.0, double(k - t1)) * t1 *
                                  double(ell - t1) * double(ell - t1) /
                                  std::max(1.0, double(n - t1)));
    res.window_hi =
        lam > 0
            ? t1 + 4 * bulk + std::log2(double(s) * s * t1 / lam)
            : std::numeric_limits<double>::infinity();
    res.window_ok = xsz >= t1 && static_cast<double>(xsz) <= res.window_hi;

    res.size_factor_log2 = std::log2(8.0 * s * s * t1) +
                           3 * bulk / std::log(2.0) + lg2(res.beta) +
                           lg2(binom(n - t1, k - t1));
    res.size_ok = lg2(BigCount(f_on_g.size())) <= res.size_factor_log2;
    return res;
}

// --------------------------------------------------------- clique extraction

namespace {

bool extract_rec(const SetFamily& cur, int t, int s, int ell,
                 std::vector<ExtractedClique>& out) {
    if (cur.empty()) return true;
    if (s <= 0) return false;
    const int n = cur.n;

    std::vector<std::vector<Mask>> w(ell + 1);
    for (const Mask& m : cur.members) w[m.count() - t].push_back(m);

    int mlev = -1;
    BigCount best_wt = 0;
    for (int i = 0; i <= ell; ++i) {
        if (w[i].empty()) continue;
        BigCount wt = BigCount(w[i].size()) * binom(n - t - i, ell - i);
        if (mlev < 0 || wt >= best_wt) {  // ties resolve to the larger level
            best_wt = wt;
            mlev = i;
        }
    }

    Mask support;
    if (mlev == 0) {
        // A star of one t-set: take the one covering the most members.
        std::size_t best = 0;
        for (const Mask& u : w[0]) {
            std::size_t cnt = star(cur, u).size();
            if (support.none() || cnt > best) {
                support = u;
                best = cnt;
            }
        }
    } else {
        // A proper clique: its support is the union of a t-overlap pair,
        // taken from the pair with the most common heavy neighbours.
        bool have = false;
        long long best_common = -1;
        for (std::size_t ai = 0; ai < w[mlev].size(); ++ai)
            for (std::size_t bi = ai + 1; bi < w[mlev].size(); ++bi) {
                if (w[mlev][ai].inter_count(w[mlev][bi]) != t) continue;
                long long common = 0;
                for (std::size_t ci = 0; ci < w[mlev].size(); ++ci) {
                    if (ci == ai || ci == bi) continue;
                    if (w[mlev][ci].inter_count(w[mlev][ai]) >= t &&
                        w[mlev][ci].inter_count(w[mlev][bi]) >= t)
                        ++common;
                }
                if (!have || common > best_common) {
                    have = true;
                    best_common = common;
                    support = w[mlev][ai] | w[mlev][bi];
                }
            }
        if (!have) return false;  // no t-overlap pair: structure absent
    }

    const int thresh = t + mlev;
    std::vector<Mask> keep;
    for (const Mask& m : cur.members)
        if (m.inter_count(support) < thresh) keep.push_back(m);
    SetFamily rest = make_family(n, std::move(keep));
    if (rest.size() == cur.size()) return false;
    if (!nu_at_most(rest, t, s - 1)) return false;
    out.push_back(ExtractedClique{support, mlev});
    return extract_rec(rest, t, s - 1, ell, out);
}

}  // namespace

std::optional<std::vector<ExtractedClique>> extract_cliques(
    const SetFamily& s_in, int t, int s, int ell) {
    if (t < 1 || s < 0 || ell < 0)
        throw std::invalid_argument("extract_cliques: need t >= 1, s,ell >= 0");
    if (!s_in.empty() && s_in.min_member_size() < t)
        throw std::invalid_argument("extract_cliques: member smaller than t");
    if (s_in.max_member_size() > t + ell)
        throw std::invalid_argument("extract_cliques: member larger than t+ell");
    if (!nu_at_most(s_in, t, s))
        throw std::invalid_argument("extract_cliques: nu(S,t) exceeds s");

    std::vector<ExtractedClique> out;
    if (!extract_rec(s_in, t, s, ell, out)) return std::nullopt;

    std::vector<Mask> km;
    for (const ExtractedClique& c : out)
        for_each_dsubset(c.support, t + c.x,
                         [&](const Mask& m) { km.push_back(m); });
    if (!out.empty() && !nu_at_most(make_family(s_in.n, std::move(km)), t, s))
        return std::nullopt;
    return out;
}

// ------------------------------------------------------------------ driver

namespace {

ApproxPiece singleton_piece(const SetFamily& f, const Mask& m) {
    return ApproxPiece{m, Mask{}, make_family(f.n, {m})};
}

}  // namespace

DriverResult iterative_driver(const SetFamily& f, int t, int s, int sigma,
                              const DriverConfig& config) {
    if (t < 1 || s < 1 || sigma < 0)
        throw std::invalid_argument("iterative_driver: need t,s >= 1 and sigma >= 0");
    if (!f.empty() && !f.uniform)
        throw std::invalid_argument("iterative_driver: family must be uniform");
    if (!nu_at_most(f, t, s))
        throw std::invalid_argument("iterative_driver: nu(F,t) exceeds s");
    const int n = f.n;
    const int k = f.uniform.value_or(t);

    DriverResult out;
    const double st = static_cast<double>(s) * t;
    out.step_cap = std::max(1, static_cast<int>(std::ceil(
                                   15.0 * std::log2(st + sigma))));
    if (config.max_steps) out.step_cap = std::max(1, *config.max_steps);
    out.target_q = t +
                   std::pow(double(t), 1.0 - config.alpha) *
                       std::pow(double(s), -config.beta) +
                   3.0 * sigma + std::log2(16.0 * std::pow(double(s), 4) * t * t);

    const double lg_st = std::log2(st);
    const double q0_raw = 10.0 * t + t * lg_st + sigma;
    const double tprime0_raw = t - std::ceil(std::sqrt(double(t)));

    DriverStep st0;
    st0.i = 0;
    st0.q_raw = q0_raw;
    st0.tprime_raw = tprime0_raw;

    const double shortcut_at = t + std::sqrt(double(t) / s) + 2.0 * sigma +
                               std::log2(16.0 * std::pow(double(s), 4) * t * t);
    if (!config.force_loop && k <= shortcut_at) {
        out.shortcut = true;
        st0.stage = "shortcut";
        st0.q_eff = k;
        st0.tprime_eff = t;
        st0.s_size = f.size();
        st0.f_left = f.size();
        out.log.push_back(st0);
        out.decomp.s_family = f;
        out.decomp.r_family = make_family(n, {});
        for (const Mask& m : f.members)
            out.decomp.pieces.push_back(singleton_piece(f, m));
        out.decomp.r = 1;
        out.decomp.remainder_ok = true;
        out.t_prime = t;
        out.remainder_sum_ok = true;
        return out;
    }

    SetFamily fcur = f;
    SetFamily racc = make_family(n, {});
    SetFamily sprev;
    std::vector<ApproxPiece> pieces;
    Frac bound_sum = 0;
    Frac last_r = 1;
    Frac last_theta = 0;
    int q_prev = 0;
    int t1 = 0;

    auto assemble = [&](int tprime) {
        out.decomp.s_family = sprev;
        out.decomp.r_family = racc;
        out.decomp.pieces = pieces;
        out.decomp.r = last_r;
        out.decomp.theta_used = last_theta;
        out.decomp.steps = static_cast<int>(out.log.size()) - 1;
        out.t_prime = tprime;
        out.remainder_bound_sum = bound_sum;
        std::size_t total = racc.size();
        for (const ApproxPiece& p : pieces) total += p.piece.size();
        if (total != f.size())
            throw std::logic_error("iterative_driver: partition accounting failed");
        out.remainder_sum_ok = Frac(BigCount(racc.size())) <= bound_sum ||
                               racc.empty();
    };

    // A t'-check with desk-scale retries; returns the verified t' or 0.
    auto settle_tprime = [&](const SetFamily& fam, double raw,
                             DriverStep& lg) {
        int tp = std::max(1, std::min(t, ifloor(raw, 1, t)));
        if (static_cast<double>(tp) != raw)
            lg.deviations.push_back("t' clamped to " + std::to_string(tp));
        while (!nu_at_most(fam, tp, s)) {
            if (tp <= 1) return 0;
            --tp;
            lg.deviations.push_back("nu check failed; t' lowered to " +
                                    std::to_string(tp));
        }
        lg.tprime_eff = tp;
        return tp;
    };

    if (k >= q0_raw) {
        // The plain opening approximation: no dense part is sought.
        st0.stage = "initial";
        st0.q_eff = std::max(t, ifloor(q0_raw, 0, 1 << 20));
        const double r0_raw = 512.0 * std::sqrt(st) *
                              (1.0 + double(sigma) / t) * lg_st;
        st0.r_sched = Frac(BigCount(std::llround(
                               std::min(r0_raw, 1e12) * 1000.0)),
                           BigCount(1000));
        Frac rcap = k > 0 ? Frac(n, k) : Frac(n, 1);
        Frac reff = st0.r_sched;
        if (reff > rcap) {
            reff = rcap;
            st0.deviations.push_back("r capped at (n-l1)/(k-l1)");
        }
        if (reff < 2 && rcap >= 2) {
            reff = 2;
            st0.deviations.push_back("r raised to 2");
        }
        st0.r_eff = reff;
        st0.theta_sched_log2 = 0.0;  // the schedule's theta = 1
        st0.deviations.push_back(
            "theta = 1 is unattainable for the empty-set oracle; the honest "
            "constant C(n,k) enters through the observed-promise mode");
        ApproxDecomposition d0;
        try {
            d0 = spread_approximate(fcur, Frac(0), std::nullopt, 0, 0,
                                    st0.q_eff, reff, trivial_oracle());
        } catch (const std::runtime_error& e) {
            out.aborted = true;
            out.abort_reason = e.what();
            sprev = fcur;
            for (const Mask& m : fcur.members)
                pieces.push_back(singleton_piece(fcur, m));
            out.log.push_back(st0);
            assemble(0);
            return out;
        }
        racc = d0.r_family;
        fcur = family_minus(fcur, d0.r_family);
        sprev = d0.s_family;
        pieces = d0.pieces;
        bound_sum += d0.remainder_bound;
        last_r = d0.r;
        last_theta = d0.theta_used;
        st0.theta_observed = d0.theta_used;
        st0.removed = d0.r_family.size();
        st0.s_size = sprev.size();
        st0.f_left = fcur.size();
        q_prev = st0.q_eff;
        t1 = settle_tprime(sprev, tprime0_raw, st0);
        out.log.push_back(st0);
        if (t1 == 0) {
            out.aborted = true;
            out.abort_reason = "nu(S,t') check failed down to t' = 1";
            assemble(0);
            return out;
        }
    } else {
        // Uniformity is already low: the family approximates itself.
        st0.stage = "initial-skip";
        st0.q_eff = std::max(k, ifloor(q0_raw, 0, 1 << 20));
        sprev = fcur;
        for (const Mask& m : fcur.members)
            pieces.push_back(singleton_piece(fcur, m));
        st0.s_size = sprev.size();
        st0.f_left = fcur.size();
        q_prev = st0.q_eff;
        t1 = settle_tprime(sprev, tprime0_raw, st0);
        out.log.push_back(st0);
        if (t1 == 0) {
            out.aborted = true;
            out.abort_reason = "nu(S,t') check failed down to t' = 1";
            assemble(0);
            return out;
        }
    }

    for (int i = 1; i <= out.step_cap; ++i) {
        DriverStep stp;
        stp.i = i;
        stp.stage = "loop";
        stp.l1 = t1;
        if (n <= k || k <= t) {
            out.aborted = true;
            out.abort_reason = n <= k
                                   ? "ambient set no larger than the uniformity"
                                   : "uniformity at most t leaves the loop "
                                     "schedule undefined";
            out.log.push_back(stp);
            break;
        }
        const double bigl = std::log2(double(n - t) / double(k - t));
        const Frac eta = Frac(binom(n - t, k - t), bigpow(2, sigma));
        stp.eta = eta;
        stp.lambda = eta / Frac(binom(n - t1, k - t1));
        const Frac lambda_eff = (eta - 1) / Frac(binom(n - t1, k - t1));
        const double dgap = std::max(0.0, double(q_prev - t1));
        const double e_term = std::pow(double(t) / s, 1.0 / 6.0) *
                              std::pow(dgap / (100.0 * bigl), 2.0 / 3.0);
        const double l2_raw = t + e_term + sigma +
                              std::log2(double(s) * s * t) + (t - t1) * bigl;
        stp.l2_raw = l2_raw;
        stp.theta_sched_log2 = std::log2(8.0 * s * s * t) + e_term +
                               lg2(binom(n - t1, k - t1));
        int l2_eff = std::max(ifloor(l2_raw, 0, 1 << 20), 2 * t1);
        if (l2_eff > k) {
            l2_eff = k;
            stp.deviations.push_back("l2 capped at the uniformity");
        }
        if (l2_eff != ifloor(l2_raw, 0, 1 << 20))
            stp.deviations.push_back("l2 clamped to " + std::to_string(l2_eff));
        stp.l2_eff = l2_eff;
        const double q_raw = l2_raw + e_term + std::log2(8.0 * s * s * t) +
                             lg2(binom(n - t1, k - t1)) - lg2(eta);
        stp.q_raw = q_raw;
        int q_eff = std::max(ifloor(q_raw, 0, 1 << 20), l2_eff);
        stp.q_eff = q_eff;
        if (q_eff < t) {
            out.aborted = true;
            out.abort_reason = "schedule degeneracy: q fell below t";
            out.log.push_back(stp);
            break;
        }
        stp.r_sched = Frac(n - t1, 2 * (k - t1));
        stp.r_eff = stp.r_sched;
        last_r = stp.r_eff;

        const SetFamily gen = sprev;
        const int ell_i = std::max(q_prev, gen.max_member_size());
        const int t1_i = t1;
        DenseOracle oracle = [&gen, t1_i, s, ell_i,
                              lambda_eff](const SetFamily& p)
            -> std::optional<Mask> {
            try {
                return dense_piece(p, gen, t1_i, s, ell_i, lambda_eff).x;
            } catch (const std::exception&) {
                return std::nullopt;
            }
        };

        ApproxDecomposition di;
        try {
            di = spread_approximate(fcur, eta, std::nullopt, t1, l2_eff, q_eff,
                                    stp.r_eff, oracle);
        } catch (const std::runtime_error& e) {
            out.aborted = true;
            out.abort_reason = e.what();
            out.log.push_back(stp);
            break;
        }
        racc = family_union(racc, di.r_family);
        fcur = family_minus(fcur, di.r_family);
        sprev = di.s_family;
        pieces = di.pieces;
        bound_sum += di.remainder_bound;
        last_theta = di.theta_used;
        stp.theta_observed = di.theta_used;
        stp.removed = di.r_family.size();
        stp.s_size = sprev.size();
        stp.f_left = fcur.size();

        const double denom = (config.cprime / 2.0) *
                             (sigma + std::sqrt(double(t) * s) * bigl);
        const double drop =
            denom > 0 ? std::floor((q_eff - t1 + 1) / denom) : 0.0;
        stp.tprime_raw = std::min(t - std::ceil(2.0 * std::log2(double(s))),
                                  t - drop);
        const int tp = settle_tprime(sprev, stp.tprime_raw, stp);
        out.log.push_back(stp);
        if (tp == 0) {
            out.aborted = true;
            out.abort_reason = "nu(S,t') check failed down to t' = 1";
            assemble(0);
            return out;
        }
        const bool stable = q_eff >= q_prev;
        q_prev = q_eff;
        t1 = tp;
        if (stable) break;
    }

    assemble(out.aborted ? 0 : t1);
    return out;
}

}  // namespace sf
