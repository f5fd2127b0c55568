#include "vbf/ellmap.hpp"

#include "vbf/boolfun.hpp"
#include "vbf/errors.hpp"
#include "vbf/parallel.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace vbf {

EllGamma ell_gamma(const FieldContext& K, Elem gamma) {
    const int n = K.n();
    // pivot rows keyed by leading bit, each with the combination of orbit vectors it came from
    std::vector<Elem> pivot(32, 0);
    std::vector<std::uint64_t> combo(32, 0);
    Elem v = gamma;
    for (int i = 0; i <= n; ++i) {
        Elem x = v;
        std::uint64_t c = std::uint64_t{1} << i;
        while (x) {
            const int lead = 31 - std::countl_zero(x);
            if (!pivot[lead]) break;
            x ^= pivot[lead];
            c ^= combo[lead];
        }
        if (x == 0) return {i, Gf2Poly{c}};
        const int lead = 31 - std::countl_zero(x);
        pivot[lead] = x;
        combo[lead] = c;
        v = K.square(v);
    }
    throw DomainError("Frobenius orbit spans more than n dimensions");
}

Elem apply_sigma_poly(const FieldContext& K, Gf2Poly f, Elem gamma) {
    Elem acc = 0, y = gamma;
    for (int i = 0; i <= f.degree(); ++i) {
        if (f.coeff(i)) acc ^= y;
        y = K.square(y);
    }
    return acc;
}

std::vector<Gf2Factor> factor_x_n_minus_one(int n) {
    if (n < 1 || n > 62) throw UsageError("x^n - 1 needs 1 <= n <= 62");
    const int a = std::countr_zero(static_cast<unsigned>(n));
    auto fs = factor(Gf2Poly::x_pow_minus_one(n >> a));
    for (auto& f : fs) f.multiplicity <<= a;
    return fs;
}

std::vector<Gf2Poly> divisors_x_n_minus_one(int n) {
    const auto fs = factor_x_n_minus_one(n);
    std::vector<Gf2Poly> out{Gf2Poly::one()};
    for (const auto& f : fs) {
        std::vector<Gf2Poly> next;
        for (auto d : out) {
            Gf2Poly p = d;
            for (int e = 0; e <= f.multiplicity; ++e) {
                next.push_back(p);
                if (e < f.multiplicity) p = p * f.poly;
            }
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t generators_with_annihilator(int n, Gf2Poly f) {
    // Excluded subspaces, each a kernel ker h(sigma) with h | f; intersections are ker gcd.
    std::vector<Gf2Poly> bad;
    for (const auto& g : factor(f)) bad.push_back(f / g.poly);
    for (auto p : prime_factors(static_cast<std::uint64_t>(n)))
        bad.push_back(Gf2Poly::gcd(f, Gf2Poly::x_pow_minus_one(n / static_cast<int>(p))));
    const std::size_t k = bad.size();
    if (k > 20) throw UnsupportedError("too many excluded subspaces");
    std::int64_t count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        Gf2Poly g = f;
        for (std::size_t i = 0; i < k; ++i)
            if ((mask >> i) & 1u) g = Gf2Poly::gcd(g, bad[i]);
        const std::int64_t term = std::int64_t{1} << g.degree();
        count += std::popcount(mask) % 2 ? -term : term;
    }
    return static_cast<std::uint64_t>(count);
}

namespace {

EllRecord ell_brute(const FieldContext& K, const EllOptions& opts) {
    if (K.n() >= 22 && !opts.allow_large)
        throw ResourceGateError("brute-force l(n) for n=" + std::to_string(K.n()) + " is a long run", "--long-run");
    const auto orb = frobenius_orbits(K);
    std::vector<int> ell(orb.reps.size(), std::numeric_limits<int>::max());
    parallel_for(orb.reps.size(), resolve_jobs(opts.jobs), [&](std::size_t lo, std::size_t hi, unsigned) {
        for (std::size_t i = lo; i < hi; ++i) {
            const Elem g = orb.reps[i];
            if (opts.keep_per_gamma || K.is_field_generator(g)) ell[i] = ell_gamma(K, g).ell;
        }
    });
    EllRecord rec;
    rec.n = K.n();
    rec.method = EllMethod::Brute;
    rec.ell_n = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < orb.reps.size(); ++i) {
        const Elem g = orb.reps[i];
        if (opts.keep_per_gamma) rec.per_gamma[g] = ell[i];
        if (!K.is_field_generator(g)) continue;
        if (ell[i] < rec.ell_n) {
            rec.ell_n = ell[i];
            rec.witness = g;
        }
    }
    rec.f_gamma = ell_gamma(K, *rec.witness).f;
    return rec;
}

EllRecord ell_lattice(int n) {
    EllRecord rec;
    rec.n = n;
    rec.method = EllMethod::Lattice;
    for (auto f : divisors_x_n_minus_one(n))
        if (generators_with_annihilator(n, f) > 0) {
            rec.ell_n = f.degree();
            rec.f_gamma = f;
            return rec;
        }
    throw DomainError("no divisor of x^n - 1 admits a generator");
}

}  // namespace

EllRecord ell_n(const FieldContext& K, EllMethod method, const EllOptions& opts) {
    return method == EllMethod::Brute ? ell_brute(K, opts) : ell_lattice(K.n());
}

SufficientCondition sufficient_condition(int n) {
    SufficientCondition c;
    if (n < 2 || n % 2) {
        c.reason = "n must be even";
        return c;
    }
    if (std::has_single_bit(static_cast<unsigned>(n))) {
        c.guaranteed = true;
        c.bound = n / 2 + 1;
        c.reason = "n is a power of 2";
        return c;
    }
    const int p = n / 2;
    const auto pf = prime_factors(static_cast<std::uint64_t>(p));
    if (pf.size() != 1 || pf[0] != static_cast<std::uint64_t>(p) || p == 2) {
        c.reason = "n/2 = " + std::to_string(p) + " is not an odd prime";
        return c;
    }
    int ord = 1;
    for (int x = 2 % p; x != 1; x = x * 2 % p) ++ord;
    if (ord != p - 1) {
        c.reason = "2 has order " + std::to_string(ord) + " mod " + std::to_string(p) + ", not " + std::to_string(p - 1);
        return c;
    }
    c.guaranteed = true;
    c.bound = p + 1;
    c.reason = "n = 2p with 2 a primitive root mod p = " + std::to_string(p);
    return c;
}

const std::map<int, int>& expected_table1() {
    static const std::map<int, int> t{{4, 3},  {6, 4},  {8, 5},  {10, 6}, {12, 5}, {14, 5},
                                      {16, 9}, {18, 8}, {20, 7}, {22, 12}, {24, 7}, {26, 14}};
    return t;
}

}  // namespace vbf
