#include "sf/counting.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace sf {

const BigCount& binom(long long n, long long k) {
    static const BigCount zero = 0;
    static std::unordered_map<std::uint64_t, BigCount> cache;
    if (k < 0 || n < 0 || k > n) return zero;
    if (k > n - k) k = n - k;
    std::uint64_t key = (static_cast<std::uint64_t>(n) << 20) | static_cast<std::uint64_t>(k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    BigCount r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;  // exact: r is C(n-k+i, i) after this step
    }
    return cache.emplace(key, std::move(r)).first->second;
}

BigCount bigpow(const BigCount& base, unsigned exp) {
    BigCount r = 1, b = base;
    while (exp) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

BigCount size_D_i(int n, int k, int t, int i) {
    if (t < 1 || k < t || i < 0 || i > k - t)
        throw std::invalid_argument("size_D_i: need 1 <= t <= k and 0 <= i <= k-t");
    if (n < t + 2 * i) throw std::invalid_argument("size_D_i: n < t+2i");
    BigCount total = 0;
    for (int a = t + i; a <= std::min(t + 2 * i, k); ++a)
        total += binom(t + 2 * i, a) * binom(n - t - 2 * i, k - a);
    return total;
}

BigCount size_AM(int n, int k, int t, int s) {
    if (t < 1 || k < t || s < 1) throw std::invalid_argument("size_AM: bad parameters");
    if (n < s * t) throw std::invalid_argument("size_AM: n < s*t");
    BigCount total = 0;
    for (int j = 1; j <= s; ++j) {
        BigCount term = binom(s, j) * binom(n - static_cast<long long>(j) * t,
                                            k - static_cast<long long>(j) * t);
        if (j % 2)
            total += term;
        else
            total -= term;
    }
    return total;
}

BigCount size_AK_exact(int n, int k, const CliqueProfile& profile) {
    int t = profile.t;
    int s = static_cast<int>(profile.x.size());
    if (t < 1 || s < 1 || s > 30)
        throw std::invalid_argument("size_AK_exact: bad profile");
    for (int xi : profile.x)
        if (xi < 0 || t + xi > k)
            throw std::invalid_argument("size_AK_exact: clique threshold above k");
    if (profile.support_total() > n)
        throw std::invalid_argument("size_AK_exact: supports exceed ground set");

    // Inclusion-exclusion over which cliques are simultaneously hit at their
    // thresholds; each subset's count is a convolution over block occupancies.
    BigCount total = 0;
    for (std::uint32_t sub = 1; sub < (1u << s); ++sub) {
        int blocks = std::popcount(sub);
        std::vector<BigCount> dp(1, BigCount(1));  // dp[j]: ways, total j picked
        int support = 0;
        for (int b = 0; b < s; ++b) {
            if (!(sub >> b & 1)) continue;
            int xb = profile.x[b], size = t + 2 * xb;
            support += size;
            std::vector<BigCount> next(dp.size() + size, BigCount(0));
            for (std::size_t j = 0; j < dp.size(); ++j) {
                if (dp[j] == 0) continue;
                for (int a = t + xb; a <= size; ++a)
                    next[j + a] += dp[j] * binom(size, a);
            }
            dp = std::move(next);
        }
        BigCount cnt = 0;
        for (std::size_t j = 0; j < dp.size(); ++j)
            if (dp[j] != 0) cnt += dp[j] * binom(n - support, k - static_cast<long long>(j));
        if (blocks % 2)
            total += cnt;
        else
            total -= cnt;
    }
    return total;
}

HOptResult h_opt(int n, int k, int t, int s, std::uint64_t cap) {
    if (t < 1 || k < t || s < 1) throw std::invalid_argument("h_opt: bad parameters");
    if (n < s * t) throw std::invalid_argument("h_opt: no profile fits (n < s*t)");
    HOptResult res;
    res.value = -1;
    std::vector<int> x(s, 0);
    // Enumerate descending profiles x_1 >= ... >= x_s in lex order, smallest
    // first, keeping strict improvements only: ties settle on the earliest
    // (componentwise smallest) profile.
    while (true) {
        CliqueProfile p{t, x};
        if (p.support_total() <= n) {
            if (++res.profiles_scanned > cap) {
                res.exhaustive = false;
                break;
            }
            BigCount v = size_AK_exact(n, k, p);
            if (v > res.value) {
                res.value = v;
                res.argmax = p;
            }
        }
        // next descending profile
        int i = s - 1;
        while (i >= 0) {
            int limit = (i == 0) ? (k - t) : x[i - 1];
            if (x[i] < limit) {
                ++x[i];
                for (int j = i + 1; j < s; ++j) x[j] = 0;
                break;
            }
            --i;
        }
        if (i < 0) break;
    }
    if (res.value < 0) throw std::logic_error("h_opt: no feasible profile scanned");
    return res;
}

BigCount emc_bound(int n, int k, int s) {
    if (k < 1 || s < 1) throw std::invalid_argument("emc_bound: bad parameters");
    if (n < k * (s + 1)) throw std::invalid_argument("emc_bound: n < k(s+1)");
    BigCount a = binom(static_cast<long long>(k) * s + k - 1, k);
    BigCount b = binom(n, k) - binom(n - s, k);
    return std::max(a, b);
}

BigCount f_beta(int i, int t, int m, int beta, int s, int ell) {
    if (i < 0 || m < i || beta < 0 || s < 1 || ell < 0)
        throw std::invalid_argument("f_beta: bad parameters");
    BigCount r = binom(t - beta, t - i) * binom(m + beta, i) * binom(m + beta, i);
    return r * bigpow(BigCount(s) * (ell + 1), static_cast<unsigned>(m - i));
}

BigCount size_E_i_paper_formula(int n, int k, int t, int s, int i) {
    BigCount total = 0;
    for (int j = 1; j <= s; ++j) {
        BigCount term = binom(s, j) * binom(n - static_cast<long long>(j) * (t + 2 * i),
                                            k - static_cast<long long>(j) * (t + i));
        if (j % 2)
            total += term;
        else
            total -= term;
    }
    return total;
}

BigCount size_E_i_exact(int n, int k, int t, int s, int i) {
    CliqueProfile p{t, std::vector<int>(s, i)};
    return size_AK_exact(n, k, p);
}

SandwichReport size_E_sandwich(int n, int k, int t, int s, int i, int ell, int bigc) {
    SandwichReport r;
    r.exact = size_E_i_exact(n, k, t, s, i);
    r.d_i = size_D_i(n, k, t, i);
    r.bound = binom(t + 2 * i, i) * binom(n - t - i, k - t - i);
    r.lower_ok = 98 * s * r.bound <= 100 * r.exact;
    r.mid_ok = r.exact <= s * r.d_i;
    r.d_upper_ok = r.d_i <= r.bound;
    r.d_lower_ok = 99 * r.bound <= 100 * r.d_i;
    bool h1 = ell >= 1 && i <= ell && t >= 400LL * ell * ell * ell * s;
    // n > k + bigc*sqrt(st)*(k-t), exactly: (n-k)^2 > bigc^2*st*(k-t)^2 and n > k
    BigCount lhs = BigCount(n - k) * (n - k);
    BigCount rhs = BigCount(bigc) * bigc * s * t * (k - t) * (k - t);
    bool h2 = n > k && lhs > rhs;
    bool h3 = BigCount(n) >= BigCount(bigc) * s * bigpow(BigCount(ell), 4) * (k - t);
    r.hypotheses_met = h1 && h2 && h3;
    if (!r.hypotheses_met)
        r.note = "hypotheses not met; 0.98/0.99 links reported, not asserted";
    return r;
}

MonotonicityReport h_monotonicity_check(int n, int k, int t, int s, int bigc) {
    if (s < 2) throw std::invalid_argument("h_monotonicity_check: needs s >= 2");
    MonotonicityReport r;
    r.h_s = h_opt(n, k, t, s).value;
    r.h_s_minus_1 = h_opt(n, k, t, s - 1).value;
    r.h_1 = h_opt(n, k, t, 1).value;
    BigCount c = 10;
    c *= s;
    c *= s;
    c *= s;
    r.holds = c * r.h_s >= c * r.h_s_minus_1 + (c - 1) * r.h_1;
    BigCount lhs = BigCount(n - k) * (n - k);
    BigCount rhs = BigCount(bigc) * bigc * s * t * (k - t) * (k - t);
    r.hypotheses_met = t >= 8 && n >= k && lhs >= rhs;
    return r;
}

std::string to_string(const BigCount& v) { return v.str(); }

std::string to_string(const Frac& v) {
    if (boost::multiprecision::denominator(v) == 1)
        return boost::multiprecision::numerator(v).str();
    return boost::multiprecision::numerator(v).str() + "/" +
           boost::multiprecision::denominator(v).str();
}

Frac parse_frac(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Frac(BigCount(text));
        BigCount p(text.substr(0, slash)), q(text.substr(slash + 1));
        if (q <= 0) throw std::invalid_argument("nonpositive denominator");
        return Frac(p, q);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: " + text);
    }
}

}  // namespace sf
