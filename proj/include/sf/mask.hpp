#pragma once
// Fixed-width bitmask over a ground set {1,...,n}.  Element e lives in bit
// e-1, so word 0 holds elements 1..64.  Four words cover every computation
// in this toolkit that materialises sets; pure counting paths never build
// masks and are not bound by this limit.

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace sf {

inline constexpr int kMaxGround = 256;

struct Mask {
    std::array<std::uint64_t, 4> w{};

    static Mask of(std::initializer_list<int> elems) {
        Mask m;
        for (int e : elems) m.set(e);
        return m;
    }
    static Mask of(const std::vector<int>& elems) {
        Mask m;
        for (int e : elems) m.set(e);
        return m;
    }
    // Elements 1..n, i.e. bits 0..n-1.
    static Mask full(int n) {
        Mask m;
        for (int i = 0; i < n / 64; ++i) m.w[i] = ~0ULL;
        if (n % 64) m.w[n / 64] = (1ULL << (n % 64)) - 1;
        return m;
    }

    void set(int e) {
        check_elem(e);
        w[(e - 1) >> 6] |= 1ULL << ((e - 1) & 63);
    }
    void reset(int e) {
        check_elem(e);
        w[(e - 1) >> 6] &= ~(1ULL << ((e - 1) & 63));
    }
    bool test(int e) const {
        if (e < 1 || e > kMaxGround) return false;
        return (w[(e - 1) >> 6] >> ((e - 1) & 63)) & 1;
    }

    int count() const {
        int c = 0;
        for (auto x : w) c += std::popcount(x);
        return c;
    }
    bool none() const { return !(w[0] | w[1] | w[2] | w[3]); }

    bool subset_of(const Mask& o) const {
        return !((w[0] & ~o.w[0]) | (w[1] & ~o.w[1]) | (w[2] & ~o.w[2]) |
                 (w[3] & ~o.w[3]));
    }

    friend Mask operator&(const Mask& a, const Mask& b) {
        Mask r;
        for (int i = 0; i < 4; ++i) r.w[i] = a.w[i] & b.w[i];
        return r;
    }
    friend Mask operator|(const Mask& a, const Mask& b) {
        Mask r;
        for (int i = 0; i < 4; ++i) r.w[i] = a.w[i] | b.w[i];
        return r;
    }
    // a \ b
    friend Mask operator-(const Mask& a, const Mask& b) {
        Mask r;
        for (int i = 0; i < 4; ++i) r.w[i] = a.w[i] & ~b.w[i];
        return r;
    }
    friend bool operator==(const Mask& a, const Mask& b) { return a.w == b.w; }
    friend bool operator!=(const Mask& a, const Mask& b) { return a.w != b.w; }

    int inter_count(const Mask& o) const {
        return std::popcount(w[0] & o.w[0]) + std::popcount(w[1] & o.w[1]) +
               std::popcount(w[2] & o.w[2]) + std::popcount(w[3] & o.w[3]);
    }

    // Smallest element, or 0 when empty.
    int lowest() const {
        for (int i = 0; i < 4; ++i)
            if (w[i]) return 64 * i + std::countr_zero(w[i]) + 1;
        return 0;
    }
    int highest() const {
        for (int i = 3; i >= 0; --i)
            if (w[i]) return 64 * i + 63 - std::countl_zero(w[i]) + 1;
        return 0;
    }

    std::vector<int> elements() const {
        std::vector<int> out;
        out.reserve(count());
        for (int i = 0; i < 4; ++i) {
            std::uint64_t x = w[i];
            while (x) {
                out.push_back(64 * i + std::countr_zero(x) + 1);
                x &= x - 1;
            }
        }
        return out;
    }

    std::string str() const {
        std::string s = "{";
        bool first = true;
        for (int e : elements()) {
            if (!first) s += ',';
            s += std::to_string(e);
            first = false;
        }
        return s + "}";
    }

private:
    static void check_elem(int e) {
        if (e < 1 || e > kMaxGround)
            throw std::invalid_argument("element out of range [1," +
                                        std::to_string(kMaxGround) + "]: " +
                                        std::to_string(e));
    }
};

// Order by smallest differing element: the set holding it comes first.
// Matches ordinary lexicographic order on sorted element lists.
inline bool lex_less(const Mask& a, const Mask& b) {
    for (int i = 0; i < 4; ++i) {
        std::uint64_t d = a.w[i] ^ b.w[i];
        if (d) {
            std::uint64_t low = d & -d;
            return a.w[i] & low;
        }
    }
    return false;
}

// Order by largest differing element: the set holding it comes last.
// This is colex order, a linear extension of coordinatewise dominance.
inline bool colex_less(const Mask& a, const Mask& b) {
    for (int i = 3; i >= 0; --i) {
        std::uint64_t d = a.w[i] ^ b.w[i];
        if (d) {
            int bit = 63 - std::countl_zero(d);
            return !(a.w[i] >> bit & 1);
        }
    }
    return false;
}

// B dominates-below A: sorted element lists satisfy b_i <= a_i for all i.
// Requires equal cardinality (returns false otherwise).
inline bool dominated_by(const Mask& b, const Mask& a) {
    std::vector<int> eb = b.elements(), ea = a.elements();
    if (eb.size() != ea.size()) return false;
    for (std::size_t i = 0; i < eb.size(); ++i)
        if (eb[i] > ea[i]) return false;
    return true;
}

// Visit all k-subsets of {1..n} in lexicographic (sorted element list) order.
template <typename F>
void for_each_ksubset(int n, int k, F&& fn) {
    if (k < 0 || k > n) return;
    if (k == 0) {
        fn(Mask{});
        return;
    }
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = i + 1;
    while (true) {
        fn(Mask::of(c));
        int i = k - 1;
        while (i >= 0 && c[i] == n - (k - 1 - i)) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

// Visit all subsets of the given set (including empty and itself).
template <typename F>
void for_each_subset(const Mask& s, F&& fn) {
    std::vector<int> el = s.elements();
    int m = static_cast<int>(el.size());
    if (m > 31) throw std::invalid_argument("subset enumeration limited to 31 elements");
    for (std::uint32_t bits = 0;; ++bits) {
        Mask sub;
        for (int i = 0; i < m; ++i)
            if (bits >> i & 1) sub.set(el[i]);
        fn(sub);
        if (bits == (1u << m) - 1) break;
    }
}

// Visit d-subsets of the given set, lexicographic on element lists.
template <typename F>
void for_each_dsubset(const Mask& s, int d, F&& fn) {
    std::vector<int> el = s.elements();
    int m = static_cast<int>(el.size());
    if (d < 0 || d > m) return;
    if (d == 0) {
        fn(Mask{});
        return;
    }
    std::vector<int> c(d);
    for (int i = 0; i < d; ++i) c[i] = i;
    while (true) {
        Mask sub;
        for (int i = 0; i < d; ++i) sub.set(el[c[i]]);
        fn(sub);
        int i = d - 1;
        while (i >= 0 && c[i] == m - (d - i)) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < d; ++j) c[j] = c[j - 1] + 1;
    }
}

struct MaskHash {
    std::size_t operator()(const Mask& m) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (auto x : m.w) {
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace sf
