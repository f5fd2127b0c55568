#include "vbf/padic.hpp"

#include "vbf/errors.hpp"
#include "vbf/parallel.hpp"

#include <bit>
#include <sstream>

namespace vbf {

PadicContext::PadicContext(FieldPtr base, int kappa) : base_(std::move(base)), kappa_(kappa) {
    if (kappa < 2 || kappa > 62) throw UsageError("precision kappa must lie in [2, 62]");
    mask_ = (std::uint64_t{1} << kappa) - 1;
    const int n = base_->n();
    // x^n = -sum_{i<n} f_i x^i
    reduction_.assign(n, 0);
    for (int i = 0; i < n; ++i)
        if (base_->modulus().coeff(i)) reduction_[i] = mask(~std::uint64_t{0});
    const PadicElem w = teichmuller(base_->primitive());
    omega_pows_.reserve(base_->order());
    PadicElem acc = from_int(1);
    for (std::uint64_t e = 0; e < base_->order(); ++e) {
        omega_pows_.push_back(acc);
        acc = mul(acc, w);
    }
}

PadicElem PadicContext::from_int(std::int64_t v) const {
    PadicElem x = zero();
    x[0] = mask(static_cast<std::uint64_t>(v));
    return x;
}

PadicElem PadicContext::naive_lift(Elem a) const {
    PadicElem x = zero();
    for (int i = 0; i < n(); ++i) x[i] = (a >> i) & 1u;
    return x;
}

Elem PadicContext::reduce(const PadicElem& x) const {
    Elem a = 0;
    for (int i = 0; i < n(); ++i) a |= static_cast<Elem>(x[i] & 1u) << i;
    return a;
}

PadicElem PadicContext::add(const PadicElem& x, const PadicElem& y) const {
    PadicElem r(n());
    for (int i = 0; i < n(); ++i) r[i] = mask(x[i] + y[i]);
    return r;
}

PadicElem PadicContext::sub(const PadicElem& x, const PadicElem& y) const {
    PadicElem r(n());
    for (int i = 0; i < n(); ++i) r[i] = mask(x[i] - y[i]);
    return r;
}

PadicElem PadicContext::scale(const PadicElem& x, std::int64_t c) const {
    PadicElem r(n());
    for (int i = 0; i < n(); ++i) r[i] = mask(x[i] * static_cast<std::uint64_t>(c));
    return r;
}

// Arithmetic wraps mod 2^64, which 2^kappa divides, so masking at the end is exact.
PadicElem PadicContext::mul(const PadicElem& x, const PadicElem& y) const {
    const int d = n();
    std::vector<std::uint64_t> prod(2 * d - 1, 0);
    for (int i = 0; i < d; ++i) {
        if (!x[i]) continue;
        for (int j = 0; j < d; ++j) prod[i + j] += x[i] * y[j];
    }
    for (int k = 2 * d - 2; k >= d; --k) {
        const std::uint64_t c = prod[k];
        if (!c) continue;
        for (int i = 0; i < d; ++i) prod[k - d + i] += c * reduction_[i];
    }
    PadicElem r(d);
    for (int i = 0; i < d; ++i) r[i] = mask(prod[i]);
    return r;
}

PadicElem PadicContext::pow(PadicElem x, std::uint64_t e) const {
    PadicElem r = from_int(1);
    while (e) {
        if (e & 1u) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

bool PadicContext::is_zero(const PadicElem& x) const {
    for (auto c : x)
        if (c) return false;
    return true;
}

std::optional<int> PadicContext::valuation(const PadicElem& x) const {
    std::optional<int> v;
    for (auto c : x)
        if (c) {
            const int z = std::countr_zero(c);
            if (!v || z < *v) v = z;
        }
    return v;
}

PadicElem PadicContext::teichmuller(Elem a) const {
    PadicElem y = naive_lift(a);
    for (int it = 0; it <= kappa_; ++it) {
        PadicElem z = y;
        for (int i = 0; i < n(); ++i) z = mul(z, z);
        if (z == y) return y;
        y = std::move(z);
    }
    throw DomainError("Teichmuller iteration did not stabilize");
}

PadicElem PadicContext::omega(Elem a) const {
    if (a == 0) return zero();
    return omega_pows_[base_->log(a)];
}

std::string PadicContext::to_string(const PadicElem& x) const {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < n(); ++i) os << (i ? "," : "") << x[i];
    os << ']';
    return os.str();
}

GaussSumValue gauss_sum(const PadicContext& P, std::int64_t j) {
    const FieldContext& K = P.base();
    const std::uint64_t N = K.order();
    GaussSumValue g;
    g.j = static_cast<std::uint64_t>(((j % static_cast<std::int64_t>(N)) + static_cast<std::int64_t>(N)) % static_cast<std::int64_t>(N));
    g.value = P.zero();
    // x = g^k, omega(x)^{-j} = omega(g)^{-jk}
    for (std::uint64_t k = 0; k < N; ++k) {
        const auto& w = P.omega_primitive_pow((N - g.j) * k % N);
        g.value = K.trace(K.primitive_pow(static_cast<std::int64_t>(k))) ? P.sub(g.value, w) : P.add(g.value, w);
    }
    g.valuation = P.valuation(g.value);
    g.conclusive = P.kappa() >= std::popcount(g.j) + 2;
    return g;
}

PadicReport verify_stickelberger_and_fourier(const PadicContext& P, unsigned jobs) {
    const FieldContext& K = P.base();
    const std::uint64_t N = K.order();
    const int n = K.n();
    PadicReport rep;
    rep.n = n;
    rep.kappa = P.kappa();
    rep.inconclusive = P.kappa() < n + 2;
    rep.sums.resize(N);
    parallel_for(N, resolve_jobs(jobs), [&](std::size_t lo, std::size_t hi, unsigned) {
        for (std::size_t i = lo; i < hi; ++i) rep.sums[i] = gauss_sum(P, static_cast<std::int64_t>(i));
    });

    for (Elem a = 0; a < K.size(); ++a) {
        const PadicElem w = P.omega(a);
        PadicElem z = w;
        for (int i = 0; i < n; ++i) z = P.mul(z, z);
        if (z != w || P.reduce(w) != a) ++rep.teichmuller_failures;
    }

    for (std::uint64_t i = 0; i < N; ++i) {
        const auto& g = rep.sums[i];
        const int w = std::popcount(i);
        if (w + 1 <= P.kappa()) {
            const PadicElem diff = P.sub(g.value, P.from_int(std::int64_t{1} << w));
            const auto v = P.valuation(diff);
            if (v && *v < w + 1) ++rep.congruence_failures;
        }
        if (g.conclusive && g.valuation != std::optional<int>{w}) ++rep.valuation_mismatches;
        if (i != 0) {
            const PadicElem prod = P.mul(g.value, rep.sums[(N - i) % N].value);
            if (prod != P.from_int(std::int64_t{1} << n)) ++rep.product_failures;
        }
    }

    for (std::uint64_t k = 0; k < N; ++k) {
        const Elem x = K.primitive_pow(static_cast<std::int64_t>(k));
        PadicElem rhs = P.zero();
        for (std::uint64_t j = 0; j < N; ++j) rhs = P.add(rhs, P.mul(rep.sums[j].value, P.omega_primitive_pow(j * k % N)));
        const PadicElem lhs = P.from_int(K.trace(x) ? -static_cast<std::int64_t>(N) : static_cast<std::int64_t>(N));
        if (lhs != rhs) ++rep.fourier_failures;
    }
    return rep;
}

}  // namespace vbf
