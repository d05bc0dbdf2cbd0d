#include "sf/simplify.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "sf/matching.hpp"

namespace sf {
namespace {

// Indices sorted by member size descending, canonical (lex) order within a
// size.  members is already lex-sorted, so a stable sort keeps that.
std::vector<int> scan_order(const SetFamily& f) {
    std::vector<int> idx(f.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return f.members[a].count() > f.members[b].count();
    });
    return idx;
}

// The exchange F_idx -> b, reduced to minimal members.
SetFamily exchanged(const SetFamily& f, int idx, const Mask& b) {
    std::vector<Mask> next;
    next.reserve(f.size());
    for (std::size_t j = 0; j < f.size(); ++j)
        if (static_cast<int>(j) != idx) next.push_back(f.members[j]);
    next.push_back(b);
    return minimal_members(make_family(f.n, std::move(next)));
}

// First acceptable shrink of one member, or nullopt at the fixed point.
// Subsets are tried largest first, lex within a size, so the accepted
// exchange is canonical.
std::optional<SetFamily> shrink_step(const SetFamily& f, int t, int s) {
    for (int idx : scan_order(f)) {
        const Mask& m = f.members[idx];
        int sz = m.count();
        for (int d = sz - 1; d >= 0; --d) {
            std::optional<SetFamily> hit;
            for_each_dsubset(m, d, [&](const Mask& b) {
                if (hit) return;
                SetFamily g = exchanged(f, idx, b);
                if (nu_at_most(g, t, s)) hit = std::move(g);
            });
            if (hit) return hit;
        }
    }
    return std::nullopt;
}

}  // namespace

SetFamily simplify(const SetFamily& s_in, int t, int s) {
    if (s < 0) throw std::invalid_argument("simplify: s must be >= 0");
    if (!nu_at_most(s_in, t, s))
        throw std::invalid_argument("simplify: input family has nu > s");
    SetFamily cur = minimal_members(s_in);
    // Each accepted exchange strictly decreases the total element count,
    // so this terminates.
    while (auto next = shrink_step(cur, t, s)) cur = std::move(*next);
    return cur;
}

bool is_maximal_simplified(const SetFamily& f, int t, int s) {
    if (!nu_at_most(f, t, s)) return false;
    if (minimal_members(f).members != f.members) return false;
    return !shrink_step(f, t, s).has_value();
}

}  // namespace sf
