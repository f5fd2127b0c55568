#pragma once
// Naive reference computations used only by tests. Nothing here calls into the
// library's fast paths: field products are shift-and-add, traces are explicit
// Frobenius sums, Walsh values are direct double sums.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

struct Field {
    int n;
    u64 modulus;
    u32 size() const { return u32{1} << n; }
    u32 order() const { return size() - 1; }

    u32 mul(u32 a, u32 b) const {
        u64 r = 0;
        u64 x = a;
        for (int i = 0; i < n; ++i) {
            if ((b >> i) & 1u) r ^= x;
            x <<= 1;
            if ((x >> n) & 1u) x ^= modulus;
        }
        return static_cast<u32>(r);
    }
    u32 pow(u32 x, u64 e) const {
        u32 r = 1;
        for (u64 i = 0; i < e; ++i) r = mul(r, x);
        return r;
    }
    u32 fastpow(u32 x, u64 e) const {
        u32 r = 1;
        while (e) {
            if (e & 1u) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }
    int trace(u32 x) const {
        u32 acc = 0, v = x;
        for (int i = 0; i < n; ++i) {
            acc ^= v;
            v = mul(v, v);
        }
        return static_cast<int>(acc);  // lies in {0, 1}
    }
    // Reduces a nonnegative exponent for a nonzero base.
    u32 powe(u32 x, long long e) const {
        if (x == 0) return e == 0 ? 1 : 0;
        long long r = e % static_cast<long long>(order());
        if (r < 0) r += order();
        return fastpow(x, static_cast<u64>(r));
    }
    u32 binomial(u32 x, long long d1, long long d2) const { return powe(x, d1) ^ powe(x, d2); }
};

inline std::vector<u32> binomial_table(const Field& f, long long d1, long long d2) {
    std::vector<u32> t(f.size());
    for (u32 x = 0; x < f.size(); ++x) t[x] = f.binomial(x, d1, d2);
    return t;
}

inline std::vector<u32> monomial_table(const Field& f, long long d) {
    std::vector<u32> t(f.size());
    for (u32 x = 0; x < f.size(); ++x) t[x] = f.powe(x, d);
    return t;
}

// W_{F_a}(b) = sum_x (-1)^{Tr(a F(x)) + Tr(b x)}
inline long long walsh(const Field& f, const std::vector<u32>& F, u32 a, u32 b) {
    long long s = 0;
    for (u32 x = 0; x < f.size(); ++x) s += (f.trace(f.mul(a, F[x])) ^ f.trace(f.mul(b, x))) ? -1 : 1;
    return s;
}

inline std::vector<long long> walsh_row(const Field& f, const std::vector<u32>& F, u32 a) {
    std::vector<long long> row(f.size());
    for (u32 b = 0; b < f.size(); ++b) row[b] = walsh(f, F, a, b);
    return row;
}

inline std::set<u32> nonbent_set(const Field& f, const std::vector<u32>& F) {
    std::set<u32> s;
    const long long target = 1ll << (f.n / 2);
    for (u32 a = 0; a < f.size(); ++a) {
        auto row = walsh_row(f, F, a);
        for (auto w : row)
            if (w != target && w != -target) {
                s.insert(a);
                break;
            }
    }
    return s;
}

inline std::set<u32> subfield(const Field& f, int d) {
    std::set<u32> s;
    for (u32 x = 0; x < f.size(); ++x) {
        u32 y = x;
        for (int i = 0; i < d; ++i) y = f.mul(y, y);
        if (y == x) s.insert(x);
    }
    return s;
}

// delta_F = max_{a != 0, b} #{x : F(x+a) + F(x) = b}
inline int diff_uniformity(const Field& f, const std::vector<u32>& F) {
    int best = 0;
    for (u32 a = 1; a < f.size(); ++a) {
        std::vector<int> cnt(f.size(), 0);
        for (u32 x = 0; x < f.size(); ++x) ++cnt[F[x ^ a] ^ F[x]];
        best = std::max(best, *std::max_element(cnt.begin(), cnt.end()));
    }
    return best;
}

inline std::size_t image_size(const std::vector<u32>& F) { return std::set<u32>(F.begin(), F.end()).size(); }

inline int wt2(long long j, int n) {
    const long long N = (1ll << n) - 1;
    long long r = j % N;
    if (r < 0) r += N;
    return __builtin_popcountll(static_cast<unsigned long long>(r));
}

// Unpruned scan of V(j1,j2) = wt(j1) + wt(j2) + wt(-d1 j1 - d2 j2) over all nonzero pairs.
inline std::pair<int, std::vector<std::pair<u32, u32>>> nu_brute(int n, long long d1, long long d2) {
    const long long N = (1ll << n) - 1;
    int best = 1 << 30;
    std::vector<std::pair<u32, u32>> arg;
    for (long long j1 = 0; j1 < N; ++j1)
        for (long long j2 = 0; j2 < N; ++j2) {
            if (j1 == 0 && j2 == 0) continue;
            int v = wt2(j1, n) + wt2(j2, n) + wt2(-(d1 * j1 + d2 * j2), n);
            if (v < best) {
                best = v;
                arg.clear();
            }
            if (v == best) arg.emplace_back(static_cast<u32>(j1), static_cast<u32>(j2));
        }
    return {best, arg};
}

// (Z / 2^k)[x] / (f) with signed long-division reduction.
struct Zq {
    int n, k;
    u64 modulus;
    using E = std::vector<long long>;
    long long md(long long v) const {
        const long long q = 1ll << k;
        v %= q;
        return v < 0 ? v + q : v;
    }
    E mul(const E& a, const E& b) const {
        std::vector<long long> p(2 * n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) p[i + j] = md(p[i + j] + a[i] * b[j]);
        for (int d = 2 * n - 1; d >= n; --d) {
            const long long c = p[d];
            if (!c) continue;
            for (int i = 0; i <= n; ++i)
                if ((modulus >> i) & 1u) p[d - n + i] = md(p[d - n + i] - c);
        }
        return E(p.begin(), p.begin() + n);
    }
    E one() const {
        E e(n, 0);
        e[0] = 1;
        return e;
    }
    E pow(E x, u64 e) const {
        E r = one();
        for (u64 i = 0; i < e; ++i) r = mul(r, x);
        return r;
    }
    // The unique y = a mod 2 with y^{2^n - 1} = 1, by trying every candidate.
    E teichmuller(u32 a) const {
        const int free_bits = n * (k - 1);
        for (u64 c = 0; c < (u64{1} << free_bits); ++c) {
            E y(n);
            for (int i = 0; i < n; ++i) {
                const long long high = static_cast<long long>((c >> (i * (k - 1))) & ((u64{1} << (k - 1)) - 1));
                y[i] = ((a >> i) & 1u) + 2 * high;
            }
            if (pow(y, (u64{1} << n) - 1) == one()) return y;
        }
        return {};
    }
};

}  // namespace oracle
