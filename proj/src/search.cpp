#include "sf/search.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "sf/approx.hpp"
#include "sf/matching.hpp"
#include "sf/simplify.hpp"

namespace sf {

namespace {

constexpr std::size_t kMaxBaseSets = 5000;

// A flat bitset sized to the base-family index range.
class Bits {
public:
    explicit Bits(std::size_t m) : w_((m + 63) / 64, 0) {}
    void set(std::size_t i) { w_[i >> 6] |= 1ULL << (i & 63); }
    bool test(std::size_t i) const { return w_[i >> 6] >> (i & 63) & 1; }
    void orw(const Bits& o) {
        for (std::size_t j = 0; j < w_.size(); ++j) w_[j] |= o.w_[j];
    }
    void and_with(const Bits& o) {
        for (std::size_t j = 0; j < w_.size(); ++j) w_[j] &= o.w_[j];
    }
    // Number of set bits at positions >= from.
    std::size_t count_from(std::size_t from) const {
        std::size_t j = from >> 6;
        if (j >= w_.size()) return 0;
        std::size_t c = std::popcount(w_[j] & ~((1ULL << (from & 63)) - 1));
        for (++j; j < w_.size(); ++j) c += std::popcount(w_[j]);
        return c;
    }
    template <typename F>
    void for_each_from(std::size_t from, F&& fn) const {
        std::size_t j = from >> 6;
        if (j >= w_.size()) return;
        std::uint64_t word = w_[j] & ~((1ULL << (from & 63)) - 1);
        while (true) {
            while (word) {
                fn((j << 6) + std::countr_zero(word));
                word &= word - 1;
            }
            if (++j >= w_.size()) return;
            word = w_[j];
        }
    }

private:
    std::vector<std::uint64_t> w_;
};

struct SearchState {
    int m = 0, s = 0;
    std::uint64_t budget = 0, nodes = 0;
    bool out_of_budget = false;
    std::vector<Mask> base;
    std::vector<Bits> conf;  // j : |base[i] inter base[j]| <= t-1
    std::vector<int> cur, best;
    int best_count = -1;

    void take_if_better() {
        if (static_cast<int>(cur.size()) > best_count) {
            best_count = static_cast<int>(cur.size());
            best = cur;
        }
    }
    bool tick() {
        if (nodes >= budget) {
            out_of_budget = true;
            return false;
        }
        ++nodes;
        return true;
    }
};

// ---- s = 1: compressed search over down-sets of the dominance order ----
//
// Element-swap compressions preserve pairwise t-intersection and family
// size, so some maximum family is a dominance down-set.  Scanning in colex
// order (a linear extension of dominance) lets exclusion kill the whole
// up-set and inclusion kill every conflicting set together with its up-set.

struct CompressedSearch : SearchState {
    std::vector<Bits> up;  // j : base[i] pointwise <= base[j]

    void run() { rec(0, Bits(m), 0); }

    void rec(int idx, const Bits& killed, std::size_t killed_tail) {
        if (!tick()) return;
        while (idx < m && killed.test(idx)) {
            --killed_tail;
            ++idx;
        }
        std::size_t alive = static_cast<std::size_t>(m - idx) - killed_tail;
        if (static_cast<int>(cur.size() + alive) <= best_count) return;
        if (idx == m) {
            take_if_better();
            return;
        }
        {
            Bits k2 = killed;
            conf[idx].for_each_from(idx + 1, [&](std::size_t j) {
                if (!killed.test(j)) k2.orw(up[j]);
            });
            k2.orw(conf[idx]);
            cur.push_back(idx);
            rec(idx + 1, k2, k2.count_from(idx + 1));
            cur.pop_back();
        }
        {
            Bits k2 = killed;
            k2.orw(up[idx]);
            rec(idx + 1, k2, k2.count_from(idx + 1));
        }
    }
};

// ---- s >= 2: direct search with incremental conflict-clique pruning ----

struct CliqueSearch : SearchState {
    // True when `verts` contains `need` pairwise-conflicting members.
    bool clique_reach(const std::vector<int>& verts, int need) const {
        if (need == 0) return true;
        if (static_cast<int>(verts.size()) < need) return false;
        for (std::size_t a = 0; a + need <= verts.size(); ++a) {
            std::vector<int> nxt;
            for (std::size_t b = a + 1; b < verts.size(); ++b)
                if (conf[verts[a]].test(verts[b])) nxt.push_back(verts[b]);
            if (clique_reach(nxt, need - 1)) return true;
        }
        return false;
    }

    // Would adding cand close an (s+1)-clique of pairwise-conflicting sets?
    bool blocked(int cand) const {
        std::vector<int> in_conflict;
        for (int v : cur)
            if (conf[cand].test(v)) in_conflict.push_back(v);
        return clique_reach(in_conflict, s);
    }

    // Greedy partition of the alive tail into pairwise-conflicting cliques;
    // a family with matching number at most s takes at most s from each.
    int tail_bound(int idx, const Bits& killed) const {
        std::vector<Bits> fits;  // intersection of conf over the clique
        std::vector<int> sizes;
        int bound = 0;
        for (int j = idx; j < m; ++j) {
            if (killed.test(j)) continue;
            bool placed = false;
            for (std::size_t q = 0; q < fits.size(); ++q)
                if (fits[q].test(j)) {
                    fits[q].and_with(conf[j]);
                    if (sizes[q]++ < s) ++bound;
                    placed = true;
                    break;
                }
            if (!placed) {
                fits.push_back(conf[j]);
                sizes.push_back(1);
                ++bound;
            }
        }
        return bound;
    }

    void run(bool fix_root) {
        Bits killed(m);
        if (fix_root && m > 0) {
            // Any nonempty family has an isomorphic copy through base[0].
            cur.push_back(0);
            rec(1, killed);
            cur.pop_back();
        } else {
            rec(0, killed);
        }
    }

    void rec(int idx, const Bits& killed) {
        if (!tick()) return;
        take_if_better();
        while (idx < m && killed.test(idx)) ++idx;
        if (idx == m) return;
        if (static_cast<int>(cur.size()) + tail_bound(idx, killed) <=
            best_count)
            return;
        if (!blocked(idx)) {
            cur.push_back(idx);
            Bits k2 = killed;
            for (int j = idx + 1; j < m; ++j)
                if (!k2.test(j) && blocked(j)) k2.set(j);
            rec(idx + 1, k2);
            cur.pop_back();
        }
        rec(idx + 1, killed);
    }
};

}  // namespace

ExtremalResult max_family_exhaustive(int n, int k, int t, int s,
                                     std::uint64_t budget,
                                     const SetFamily* seed) {
    if (n < 1 || k < 1 || k > n || t < 1 || s < 0)
        throw std::invalid_argument(
            "max_family_exhaustive: need 1 <= k <= n and t >= 1, s >= 0");
    ExtremalResult res;
    res.n = n;
    res.k = k;
    res.t = t;
    res.s = s;
    res.witness = make_family(n, {});
    res.exhaustive = true;
    if (k < t || s == 0) return res;  // only the empty family qualifies

    if (binom(n, k) > kMaxBaseSets)
        throw std::invalid_argument(
            "max_family_exhaustive: base family too large to search");

    std::vector<Mask> base;
    for_each_ksubset(n, k, [&](const Mask& a) { base.push_back(a); });
    const int m = static_cast<int>(base.size());
    if (s == 1) std::sort(base.begin(), base.end(), colex_less);

    auto fill_common = [&](SearchState& st) {
        st.m = m;
        st.s = s;
        st.budget = budget;
        st.base = base;
        st.conf.assign(m, Bits(m));
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                if (base[i].inter_count(base[j]) < t) {
                    st.conf[i].set(j);
                    st.conf[j].set(i);
                }
        if (seed && !seed->empty()) {
            if (!nu_at_most(*seed, t, s))
                throw std::invalid_argument(
                    "max_family_exhaustive: seed violates the matching cap");
            st.best_count = static_cast<int>(seed->size());
        }
    };

    std::vector<int> best_idx;
    int best_count = -1;
    if (s == 1) {
        CompressedSearch cs;
        fill_common(cs);
        cs.up.assign(m, Bits(m));
        std::vector<std::vector<int>> el(m);
        for (int i = 0; i < m; ++i) el[i] = base[i].elements();
        for (int i = 0; i < m; ++i)
            for (int j = i; j < m; ++j) {  // colex extends dominance
                bool dom = true;
                for (int r = 0; r < k; ++r)
                    if (el[i][r] > el[j][r]) {
                        dom = false;
                        break;
                    }
                if (dom) cs.up[i].set(j);
            }
        cs.run();
        best_idx = cs.best;
        best_count = cs.best_count;
        res.exhaustive = !cs.out_of_budget;
        res.nodes = cs.nodes;
    } else {
        CliqueSearch gs;
        fill_common(gs);
        gs.run(true);
        best_idx = gs.best;
        best_count = gs.best_count;
        res.exhaustive = !gs.out_of_budget;
        res.nodes = gs.nodes;
    }

    if (!best_idx.empty()) {
        std::vector<Mask> wit;
        for (int i : best_idx) wit.push_back(base[i]);
        res.witness = make_family(n, std::move(wit));
        res.max_size = best_count;
    } else if (seed && !seed->empty() &&
               best_count == static_cast<int>(seed->size())) {
        res.witness = *seed;  // the incumbent was never beaten
        res.max_size = best_count;
    } else {
        res.max_size = std::max(best_count, 0);
    }
    if (!nu_at_most(res.witness, t, s))
        throw std::logic_error("max_family_exhaustive: witness check failed");
    return res;
}

BigCount brute_size_AK(int n, int k, const CliqueProfile& profile) {
    if (profile.t < 1) throw std::invalid_argument("brute_size_AK: t >= 1");
    if (profile.support_total() > n)
        throw std::invalid_argument(
            "brute_size_AK: supports exceed the ground set");
    std::vector<Mask> supports;
    std::vector<int> need;
    int next = 1;
    for (int xi : profile.x) {
        if (xi < 0 || profile.t + xi > k)
            throw std::invalid_argument("brute_size_AK: invalid clique size");
        Mask y;
        for (int e = 0; e < profile.t + 2 * xi; ++e) y.set(next++);
        supports.push_back(y);
        need.push_back(profile.t + xi);
    }
    if (binom(n, k) > kDefaultEnumCap)
        throw std::invalid_argument("brute_size_AK: base family too large");
    BigCount count = 0;
    for_each_ksubset(n, k, [&](const Mask& a) {
        for (std::size_t i = 0; i < supports.size(); ++i)
            if (a.inter_count(supports[i]) >= need[i]) {
                ++count;
                return;
            }
    });
    return count;
}

Kk1Report verify_kk1(int n, int k, int s, std::uint64_t budget) {
    if (k < 3)
        throw std::invalid_argument(
            "verify_kk1: k >= 3 needed for (k-1)-sets sharing k-3 elements");
    if (s < 1) throw std::invalid_argument("verify_kk1: s >= 1");
    if (n < k - 3 + 2 * s || n < k)
        throw std::invalid_argument("verify_kk1: ground set too small");

    Kk1Report rep;
    rep.n = n;
    rep.k = k;
    rep.s = s;
    rep.hypothesis_ok = n >= 2 * k + 2 * s - 4 + std::max(2 * s, k);
    rep.bound = BigCount(s) * (n - k + 1);

    std::vector<Mask> qs;
    for (int i = 1; i <= s; ++i) {
        Mask q;
        for (int e = 1; e <= k - 3; ++e) q.set(e);
        q.set(k - 3 + 2 * i - 1);
        q.set(k - 3 + 2 * i);
        qs.push_back(q);
    }
    rep.construction = generated_family(make_family(n, std::move(qs)), k);
    rep.construction_size_ok = BigCount(rep.construction.size()) == rep.bound;
    rep.construction_nu_ok = nu_at_most(rep.construction, k - 1, s);
    rep.search =
        max_family_exhaustive(n, k, k - 1, s, budget, &rep.construction);
    rep.agrees = BigCount(rep.search.max_size) == rep.bound;
    return rep;
}

StructureClassification verify_extremal_structure(
    const ExtremalResult& result) {
    StructureClassification cl;
    const SetFamily& w = result.witness;
    const int n = result.n, k = result.k, t = result.t, s = result.s;
    if (w.empty()) {
        cl.note = "empty witness";
        return cl;
    }

    HOptResult h = h_opt(n, k, t, s);
    cl.h_value = h.value;
    cl.exceeds_h = BigCount(w.size()) > h.value;

    Mask core = w.members.front();
    for (const Mask& m : w.members) core = core & m;
    cl.is_full_t_star =
        core.count() >= t && BigCount(w.size()) == binom(n - t, k - t);

    SetFamily gen = simplify(w, t, s);
    int ell = std::max(0, gen.max_member_size() - t);
    auto cliques = extract_cliques(gen, t, s, ell);
    if (cliques) {
        std::vector<Mask> km;
        std::vector<int> xs;
        for (const ExtractedClique& c : *cliques) {
            xs.push_back(c.x);
            for_each_dsubset(c.support, t + c.x,
                             [&](const Mask& m) { km.push_back(m); });
        }
        SetFamily regen = generated_family(make_family(n, std::move(km)), k);
        if (regen.members == w.members) {
            cl.is_clique_union_shadow = true;
            std::sort(xs.rbegin(), xs.rend());
            cl.profile = CliqueProfile{t, xs};
            cl.note = "witness regenerates from the extracted clique profile";
        } else {
            cl.note = "extracted cliques do not regenerate the witness";
        }
    } else {
        cl.note = "no clique structure extracted";
    }
    if (cl.exceeds_h) cl.note += "; size exceeds every clique-union shadow";
    return cl;
}

}  // namespace sf
