#pragma once
// Reproducible randomness.  mt19937_64 output is pinned by the standard, so
// streams are bit-identical everywhere; the samplers below replace the
// implementation-defined std::uniform_int_distribution / std::shuffle.

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace sf {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Sub-stream for trial i: independent of how other trials are scheduled.
    static Rng for_trial(std::uint64_t seed, std::uint64_t i) {
        return Rng(splitmix64(seed ^ splitmix64(i + 1)));
    }

    std::uint64_t next() { return eng_(); }

    // Uniform in [0, bound) by rejection; exact, no modulo bias.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("below(0)");
        std::uint64_t reject = (0 - bound) % bound;  // 2^64 mod bound
        std::uint64_t x;
        do {
            x = next();
        } while (x < reject);
        return x % bound;
    }

    int below_int(int bound) {
        return static_cast<int>(below(static_cast<std::uint64_t>(bound)));
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {  // Fisher-Yates
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

    // k distinct elements of {1..n}, sorted.
    std::vector<int> sample_kset(int n, int k) {
        if (k < 0 || k > n) throw std::invalid_argument("sample_kset: bad k");
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i + 1;
        for (int i = 0; i < k; ++i)
            std::swap(pool[i], pool[i + below(n - i)]);
        pool.resize(k);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace sf
