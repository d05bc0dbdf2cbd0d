#include "sf/matching.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <stdexcept>

namespace sf {

namespace {

// Adjacency rows as packed words; vertex order is fixed by the caller.
struct BitGraph {
    int m = 0, words = 0;
    std::vector<std::uint64_t> rows;  // m * words

    explicit BitGraph(int m_) : m(m_), words((m_ + 63) / 64), rows(static_cast<std::size_t>(m_) * words) {}

    std::uint64_t* row(int v) { return rows.data() + static_cast<std::size_t>(v) * words; }
    const std::uint64_t* row(int v) const { return rows.data() + static_cast<std::size_t>(v) * words; }

    void add_edge(int u, int v) {
        row(u)[v >> 6] |= 1ULL << (v & 63);
        row(v)[u >> 6] |= 1ULL << (u & 63);
    }
    bool adjacent(int u, int v) const { return row(u)[v >> 6] >> (v & 63) & 1; }
    int degree(int v) const {
        int d = 0;
        for (int i = 0; i < words; ++i) d += std::popcount(row(v)[i]);
        return d;
    }
};

// Max clique, Tomita-style: greedy colouring orders candidates and bounds
// the residual clique size.  Stops as soon as `stop_at` is reached.
struct CliqueSearch {
    const BitGraph& g;
    int stop_at;  // found clique of this size => abort search, answer capped
    std::vector<int> best, current;
    bool capped = false;

    CliqueSearch(const BitGraph& g_, int stop_at_) : g(g_), stop_at(stop_at_) {}

    void run() {
        std::vector<std::uint64_t> all(g.words, 0);
        for (int v = 0; v < g.m; ++v) all[v >> 6] |= 1ULL << (v & 63);
        expand(all);
    }

    void expand(std::vector<std::uint64_t>& cand) {
        // Greedy colouring: colour classes are independent sets, so a clique
        // within `cand` has at most #colours vertices.
        std::vector<int> order, colour;
        std::vector<std::uint64_t> uncoloured = cand;
        int c = 0;
        while (true) {
            std::vector<std::uint64_t> avail = uncoloured;
            bool any = false;
            ++c;
            for (int w = 0; w < g.words; ++w) {
                while (avail[w]) {
                    int v = 64 * w + std::countr_zero(avail[w]);
                    any = true;
                    order.push_back(v);
                    colour.push_back(c);
                    uncoloured[v >> 6] &= ~(1ULL << (v & 63));
                    avail[w] &= ~(1ULL << (v & 63));
                    for (int i = 0; i < g.words; ++i) avail[i] &= ~g.row(v)[i];
                }
            }
            if (!any) {
                --c;
                break;
            }
        }
        // Process candidates in reverse colouring order.
        for (int idx = static_cast<int>(order.size()) - 1; idx >= 0; --idx) {
            if (capped) return;
            int v = order[idx];
            if (static_cast<int>(current.size()) + colour[idx] <= static_cast<int>(best.size()))
                return;  // colour bound kills all remaining (colours ascend)
            current.push_back(v);
            std::vector<std::uint64_t> next(g.words);
            bool nonempty = false;
            for (int i = 0; i < g.words; ++i) {
                next[i] = cand[i] & g.row(v)[i];
                nonempty |= next[i] != 0;
            }
            if (static_cast<int>(current.size()) > static_cast<int>(best.size())) {
                best = current;
                if (static_cast<int>(best.size()) >= stop_at) {
                    capped = true;
                    current.pop_back();
                    return;
                }
            }
            if (nonempty) expand(next);
            current.pop_back();
            cand[v >> 6] &= ~(1ULL << (v & 63));
        }
    }
};

BitGraph conflict_graph(const SetFamily& f, int t) {
    int m = static_cast<int>(f.size());
    BitGraph g(m);
    for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v)
            if (f.members[u].inter_count(f.members[v]) <= t - 1) g.add_edge(u, v);
    return g;
}

}  // namespace

NuResult nu(const SetFamily& f, int t, int cap) {
    if (t < 1) throw std::invalid_argument("nu: t >= 1 required");
    NuResult res;
    if (f.empty()) return res;
    for (std::size_t i = 0; i < f.members.size(); ++i)
        if (f.members[i].count() < t) {
            // |F inter F| = |F| <= t-1: the member self-pairs without bound.
            res.value = kNuInfinite;
            res.witness = {static_cast<int>(i), static_cast<int>(i)};
            return res;
        }

    BitGraph g = conflict_graph(f, t);
    int m = g.m;
    // Degree-descending order tends to shrink the colouring.
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> deg(m);
    for (int v = 0; v < m; ++v) deg[v] = g.degree(v);
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return deg[a] > deg[b]; });
    BitGraph h(m);
    for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v)
            if (g.adjacent(perm[u], perm[v])) h.add_edge(u, v);

    int stop_at = (cap < 0 || cap + 1 > m) ? m + 1 : cap + 1;
    CliqueSearch search(h, stop_at);
    search.run();
    res.value = static_cast<int>(search.best.size());
    res.exact = !search.capped;
    for (int v : search.best) res.witness.push_back(perm[v]);
    std::sort(res.witness.begin(), res.witness.end());
    return res;
}

bool nu_at_most(const SetFamily& f, int t, int s) {
    NuResult r = nu(f, t, s);
    return r.value <= s;
}

namespace {

struct CoverSearch {
    const SetFamily& f;
    std::vector<int> best;      // element list of best cover found
    std::vector<int> current;

    explicit CoverSearch(const SetFamily& f_) : f(f_) {}

    // Greedy pairwise-disjoint members among the uncovered give a lower bound.
    int lower_bound(const std::vector<int>& uncovered, const Mask& chosen) const {
        Mask used;
        int lb = 0;
        for (int i : uncovered) {
            const Mask& mem = f.members[i];
            if ((mem & chosen).none() && (mem & used).none()) {
                used = used | mem;
                ++lb;
            }
        }
        return lb;
    }

    void run() {
        // tau <= min member size via any single member's elements; start from
        // the trivial cover consisting of one element per member greedily.
        Mask all;
        best.clear();
        {
            Mask greedy;
            for (const auto& mem : f.members)
                if ((mem & greedy).none()) greedy.set(mem.lowest());
            best = greedy.elements();
        }
        Mask chosen;
        dfs(chosen);
    }

    void dfs(Mask& chosen) {
        std::vector<int> uncovered;
        for (std::size_t i = 0; i < f.members.size(); ++i)
            if ((f.members[i] & chosen).none()) uncovered.push_back(static_cast<int>(i));
        if (uncovered.empty()) {
            if (chosen.count() < static_cast<int>(best.size())) best = chosen.elements();
            return;
        }
        if (chosen.count() + lower_bound(uncovered, chosen) >=
            static_cast<int>(best.size()))
            return;
        // Branch on the uncovered member with fewest elements.
        int pick = uncovered[0];
        for (int i : uncovered)
            if (f.members[i].count() < f.members[pick].count()) pick = i;
        for (int e : f.members[pick].elements()) {
            chosen.set(e);
            dfs(chosen);
            chosen.reset(e);
        }
    }
};

}  // namespace

CoverResult covering_number(const SetFamily& f) {
    CoverResult res;
    if (f.empty()) return res;
    for (const auto& m : f.members)
        if (m.none())
            throw std::invalid_argument("covering_number: empty member has no cover");
    CoverSearch search(f);
    search.run();
    res.tau = static_cast<int>(search.best.size());
    res.cover = Mask::of(search.best);
    return res;
}

std::optional<Sunflower> find_sunflower(const SetFamily& f, int m) {
    if (m < 2) throw std::invalid_argument("find_sunflower: m >= 2 required");
    if (!f.uniform) throw std::invalid_argument("find_sunflower: family must be uniform");
    int k = *f.uniform;
    if (k < 1) return std::nullopt;
    std::map<std::vector<int>, std::vector<int>> by_core;  // core elements -> members
    for (std::size_t i = 0; i < f.members.size(); ++i) {
        for_each_dsubset(f.members[i], k - 1, [&](const Mask& core) {
            by_core[core.elements()].push_back(static_cast<int>(i));
        });
    }
    for (const auto& [core, mems] : by_core) {
        if (static_cast<int>(mems.size()) >= m) {
            Sunflower s;
            s.core = Mask::of(core);
            s.petals.assign(mems.begin(), mems.begin() + m);
            return s;
        }
    }
    return std::nullopt;
}

std::vector<SetFamily> vi_partition(int r, int k, int n) {
    if (k < 1 || r < k) throw std::invalid_argument("vi_partition: need r >= k >= 1");
    if (n < r) throw std::invalid_argument("vi_partition: ground set must contain [r]");
    std::vector<std::vector<Mask>> classes(r);
    for_each_ksubset(r, k, [&](const Mask& m) {
        int sum = 0;
        for (int e : m.elements()) sum += e;
        classes[sum % r].push_back(m);
    });
    std::vector<SetFamily> out;
    out.reserve(r);
    for (auto& c : classes) out.push_back(make_family(n, std::move(c)));
    return out;
}

Frac turan_lower_bound(long long m, int s) {
    if (m < 0 || s < 1) throw std::invalid_argument("turan_lower_bound: bad parameters");
    if (m <= s) return Frac(0);  // x = m/s <= 1 convention
    // s * (m/s)(m/s - 1)/2 = m(m-s) / (2s)
    return Frac(BigCount(m) * (m - s), BigCount(2) * s);
}

DensePair dense_pair(const SetFamily& f, int t, int s) {
    if (f.empty()) throw std::invalid_argument("dense_pair: empty family");
    if (s < 1) throw std::invalid_argument("dense_pair: s >= 1 required");
    int m = static_cast<int>(f.size());
    DensePair best;
    long long best_common = -1;
    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
            int inter = f.members[a].inter_count(f.members[b]);
            if (inter < t) continue;
            std::vector<int> common;
            for (int c = 0; c < m; ++c) {
                if (c == a || c == b) continue;
                if (f.members[c].inter_count(f.members[a]) >= inter &&
                    f.members[c].inter_count(f.members[b]) >= inter)
                    common.push_back(c);
            }
            if (static_cast<long long>(common.size()) > best_common) {
                best_common = static_cast<long long>(common.size());
                best.a = a;
                best.b = b;
                best.common = std::move(common);
            }
        }
    }
    if (best.a < 0)
        throw std::invalid_argument("dense_pair: no pair intersects in >= t elements");
    return best;
}

}  // namespace sf
