#include "vbf/quadratic.hpp"

#include "vbf/errors.hpp"
#include "vbf/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <bit>

namespace vbf {

namespace {

int rank_of(std::vector<Elem> rows) {
    int rank = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        Elem pivot = rows[i];
        if (!pivot) continue;
        ++rank;
        const Elem low = pivot & (~pivot + 1);
        for (std::size_t j = i + 1; j < rows.size(); ++j)
            if (rows[j] & low) rows[j] ^= pivot;
    }
    return rank;
}

// The exponent d as its two binary digit positions.
struct Term {
    int u, v;
};

std::vector<Term> quadratic_terms(const VectorialFn& F) {
    if (!F.is_binomial()) throw UnsupportedError("kernel path needs a binomial");
    const int n = F.field().n();
    std::vector<Term> out;
    for (auto d : {F.d1(), F.d2()}) {
        const int w = std::popcount(d);
        if (w > 2) throw UnsupportedError("exponent " + std::to_string(d) + " has 2-adic weight " + std::to_string(w));
        auto [u, v] = split_exponent(d, n);
        if (u != v) out.push_back({u, v});
    }
    return out;
}

// Coefficients of L_a for the given terms.
void fill_coeffs(const FieldContext& K, const std::vector<Term>& terms, Elem a, std::vector<Elem>& c) {
    const int n = K.n();
    std::fill(c.begin(), c.end(), Elem{0});
    for (auto [u, v] : terms) {
        c[((u - v) % n + n) % n] ^= K.frobenius(a, n - v);
        c[((v - u) % n + n) % n] ^= K.frobenius(a, n - u);
    }
}

// basis_pow[j][i] = (x^j)^{2^i}
std::vector<std::vector<Elem>> basis_powers(const FieldContext& K) {
    const int n = K.n();
    std::vector<std::vector<Elem>> out(n, std::vector<Elem>(n));
    for (int j = 0; j < n; ++j) {
        Elem y = Elem{1} << j;
        for (int i = 0; i < n; ++i) {
            out[j][i] = y;
            y = K.square(y);
        }
    }
    return out;
}

int kernel_dim_fast(const FieldContext& K, const std::vector<Elem>& c, const std::vector<std::vector<Elem>>& bp,
                    std::vector<Elem>& cols) {
    const int n = K.n();
    cols.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        if (!c[i]) continue;
        for (int j = 0; j < n; ++j) cols[j] ^= K.mul(c[i], bp[j][i]);
    }
    return n - rank_of(cols);
}

}  // namespace

Elem LinearizedPoly::apply(const FieldContext& K, Elem x) const {
    Elem acc = 0, y = x;
    for (Elem c : coeffs) {
        acc ^= K.mul(c, y);
        y = K.square(y);
    }
    return acc;
}

bool LinearizedPoly::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](Elem c) { return c == 0; });
}

int LinearizedPoly::kernel_dim(const FieldContext& K) const {
    std::vector<Elem> cols(K.n());
    for (int j = 0; j < K.n(); ++j) cols[j] = apply(K, Elem{1} << j);
    return K.n() - rank_of(std::move(cols));
}

std::pair<int, int> split_exponent(std::uint32_t d, int n) {
    const std::uint32_t N = (std::uint32_t{1} << n) - 1;
    d %= N;
    if (d == 0) throw UsageError("exponent is 0 mod 2^n - 1");
    const int v = std::countr_zero(d);
    d &= d - 1;
    if (d == 0) return {v, v};
    const int u = std::countr_zero(d);
    if (d & (d - 1)) throw UnsupportedError("exponent has 2-adic weight above 2");
    return {u, v};
}

bool is_quadratic_binomial(const VectorialFn& F) {
    return F.is_binomial() && std::popcount(F.d1()) <= 2 && std::popcount(F.d2()) <= 2;
}

LinearizedPoly derive_La(const VectorialFn& F, Elem a) {
    const auto terms = quadratic_terms(F);
    LinearizedPoly L;
    L.coeffs.resize(F.field().n());
    fill_coeffs(F.field(), terms, a, L.coeffs);
    return L;
}

int bilinear_form(const VectorialFn& F, Elem a, Elem x, Elem z) {
    const FieldContext& K = F.field();
    return K.trace(K.mul(a, F(x ^ z))) ^ K.trace(K.mul(a, F(x))) ^ K.trace(K.mul(a, F(z)));
}

QuadraticScan nonbent_set_quadratic(const VectorialFn& F, unsigned jobs) {
    const FieldContext& K = F.field();
    const auto terms = quadratic_terms(F);
    const auto bp = basis_powers(K);
    const auto orb = frobenius_orbits(K);
    std::vector<int> dims(orb.reps.size());
    jobs = resolve_jobs(jobs);
    parallel_for(orb.reps.size(), jobs, [&](std::size_t lo, std::size_t hi, unsigned) {
        std::vector<Elem> c(K.n()), cols;
        for (std::size_t i = lo; i < hi; ++i) {
            fill_coeffs(K, terms, orb.reps[i], c);
            dims[i] = kernel_dim_fast(K, c, bp, cols);
        }
    });
    QuadraticScan s;
    s.kernel_dim.assign(K.size(), 0);
    for (std::size_t i = 0; i < orb.reps.size(); ++i)
        for (Elem a : frobenius_orbit(K, orb.reps[i])) s.kernel_dim[a] = dims[i];
    for (Elem a = 0; a < K.size(); ++a)
        if (s.kernel_dim[a] != 0) s.nonbent.push_back(a);
    return s;
}

std::uint64_t quadratic_nonbent_count_upto(const VectorialFn& F, std::uint64_t limit, unsigned jobs) {
    const FieldContext& K = F.field();
    const auto terms = quadratic_terms(F);
    const auto bp = basis_powers(K);
    const auto orb = frobenius_orbits(K);
    std::atomic<std::uint64_t> count{0};
    parallel_for(orb.reps.size(), resolve_jobs(jobs), [&](std::size_t lo, std::size_t hi, unsigned) {
        std::vector<Elem> c(K.n()), cols;
        for (std::size_t i = lo; i < hi; ++i) {
            if (count.load(std::memory_order_relaxed) > limit) return;
            fill_coeffs(K, terms, orb.reps[i], c);
            if (kernel_dim_fast(K, c, bp, cols) != 0) count.fetch_add(orb.sizes[i], std::memory_order_relaxed);
        }
    });
    return std::min<std::uint64_t>(count.load(), limit + 1);
}

}  // namespace vbf
