#include "vbf/stickelberger.hpp"

#include "vbf/errors.hpp"
#include "vbf/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>

namespace vbf {

std::uint64_t mod_n(std::int64_t x, std::uint64_t N) {
    const auto n = static_cast<std::int64_t>(N);
    std::int64_t r = x % n;
    if (r < 0) r += n;
    return static_cast<std::uint64_t>(r);
}

int wt2(std::int64_t j, int n) {
    const std::uint64_t N = (std::uint64_t{1} << n) - 1;
    return std::popcount(mod_n(j, N));
}

namespace {

struct Scan {
    std::uint32_t N;
    std::uint32_t d1, d2;
    bool monomial;

    std::uint32_t j2_end() const { return monomial ? 1 : N; }

    // Calls visit(j2, V) for every j2 with wt(j1) + wt(j2) <= cap.
    template <class Visit>
    void row(std::uint32_t j1, int cap, Visit&& visit) const {
        const int w1 = std::popcount(j1);
        if (w1 > cap) return;
        std::uint64_t t = static_cast<std::uint64_t>(d1) * j1 % N;
        for (std::uint32_t j2 = 0; j2 < j2_end(); ++j2, t = (t + d2) % N) {
            if (j1 == 0 && j2 == 0) continue;
            const int w12 = w1 + std::popcount(j2);
            if (w12 > cap) continue;
            const auto neg = static_cast<std::uint32_t>(t == 0 ? 0 : N - t);
            visit(j2, w12 + std::popcount(neg));
        }
    }
};

}  // namespace

StickelbergerRecord nu_and_minimizers(const FieldContext& K, std::int64_t d1, std::int64_t d2, const NuOptions& opts) {
    const std::uint32_t N = K.order();
    auto in_range = [&](std::int64_t d) { return d >= 1 && d < static_cast<std::int64_t>(N); };
    if (!in_range(d1) || (!opts.monomial && !in_range(d2)))
        throw UsageError("exponents must lie in [1, " + std::to_string(N - 1) + "]");
    StickelbergerRecord rec;
    rec.n = K.n();
    rec.d1 = static_cast<std::uint32_t>(d1);
    rec.d2 = opts.monomial ? 0 : static_cast<std::uint32_t>(d2);
    rec.monomial_mode = opts.monomial;
    const int wmax = std::max(std::popcount(rec.d1), std::popcount(rec.d2));
    rec.lower_bound = (rec.n + wmax - 1) / wmax;

    const Scan scan{N, rec.d1, rec.d2, opts.monomial};
    const unsigned jobs = resolve_jobs(opts.jobs);
    std::atomic<int> best{3 * rec.n + 1};
    parallel_for(N, jobs, [&](std::size_t lo, std::size_t hi, unsigned) {
        for (std::size_t j1 = lo; j1 < hi; ++j1) {
            int local = best.load(std::memory_order_relaxed);
            scan.row(static_cast<std::uint32_t>(j1), local - 1, [&](std::uint32_t, int v) { local = std::min(local, v); });
            int cur = best.load(std::memory_order_relaxed);
            while (local < cur && !best.compare_exchange_weak(cur, local)) {
            }
        }
    });
    rec.nu = best.load();

    std::vector<std::vector<IndexPair>> rows(N);
    parallel_for(N, jobs, [&](std::size_t lo, std::size_t hi, unsigned) {
        for (std::size_t j1 = lo; j1 < hi; ++j1)
            scan.row(static_cast<std::uint32_t>(j1), rec.nu, [&](std::uint32_t j2, int v) {
                if (v == rec.nu) rows[j1].emplace_back(static_cast<std::uint32_t>(j1), j2);
            });
    });
    for (auto& r : rows) rec.minimizers.insert(rec.minimizers.end(), r.begin(), r.end());

    rec.doubling_closed = std::all_of(rec.minimizers.begin(), rec.minimizers.end(), [&](const IndexPair& p) {
        const IndexPair q{static_cast<std::uint32_t>(2ull * p.first % N), static_cast<std::uint32_t>(2ull * p.second % N)};
        return std::binary_search(rec.minimizers.begin(), rec.minimizers.end(), q);
    });

    std::map<std::uint64_t, int> h;
    for (auto [j1, j2] : rec.minimizers) {
        const std::uint64_t lin = (static_cast<std::uint64_t>(rec.d1) * j1 + static_cast<std::uint64_t>(rec.d2) * j2) % N;
        if (lin != 0) continue;
        rec.j0_slice.emplace_back(j1, j2);
        const std::uint64_t e = static_cast<std::uint64_t>(j1) + j2;
        rec.sumset.insert(e);
        h[e] ^= 1;
    }
    for (auto [e, c] : h)
        if (c) rec.h_exponents.push_back(e);
    return rec;
}

namespace {

// g_a(b) = sum_t (sum_{J^t} a^{j1+j2}) b^t, grouped by t = (-d1 j1 - d2 j2)_N.
struct GPoly {
    std::map<std::uint32_t, std::vector<std::uint32_t>> by_t;  // t -> list of (j1+j2) mod N

    GPoly(const FieldContext& K, const StickelbergerRecord& rec) {
        const std::uint64_t N = K.order();
        for (auto [j1, j2] : rec.minimizers) {
            const std::uint64_t lin = (static_cast<std::uint64_t>(rec.d1) * j1 + static_cast<std::uint64_t>(rec.d2) * j2) % N;
            const auto t = static_cast<std::uint32_t>(lin == 0 ? 0 : N - lin);
            by_t[t].push_back(static_cast<std::uint32_t>((static_cast<std::uint64_t>(j1) + j2) % N));
        }
    }

    // Coefficients c_t for a fixed nonzero a.
    std::vector<std::pair<std::uint32_t, Elem>> coefficients(const FieldContext& K, Elem a) const {
        std::vector<std::pair<std::uint32_t, Elem>> out;
        for (auto& [t, es] : by_t) {
            Elem c = 0;
            for (auto e : es) c ^= K.pow(a, e);
            if (c) out.emplace_back(t, c);
        }
        return out;
    }

    static Elem eval(const FieldContext& K, const std::vector<std::pair<std::uint32_t, Elem>>& coeffs, Elem b) {
        Elem acc = 0;
        for (auto [t, c] : coeffs) acc ^= K.mul(c, K.pow(b, t));
        return acc;
    }

    // Yields g(b) for b = g^0, g^1, ... keeping log(c_t b^t) per term.
    class Walker {
    public:
        Walker(const FieldContext& K, const std::vector<std::pair<std::uint32_t, Elem>>& coeffs) : K_(K), coeffs_(coeffs) {
            if (!K.has_tables()) return;
            for (auto [t, c] : coeffs) {
                log_.push_back(K.log(c));
                step_.push_back(t % K.order());
            }
        }
        Elem next() {
            if (!K_.has_tables()) return eval(K_, coeffs_, K_.primitive_pow(k_++));
            const std::uint32_t N = K_.order();
            Elem acc = 0;
            for (std::size_t i = 0; i < log_.size(); ++i) {
                acc ^= K_.antilog(log_[i]);
                log_[i] += step_[i];
                if (log_[i] >= N) log_[i] -= N;
            }
            return acc;
        }

    private:
        const FieldContext& K_;
        const std::vector<std::pair<std::uint32_t, Elem>>& coeffs_;
        std::vector<std::uint32_t> log_, step_;
        std::int64_t k_ = 0;
    };
};

}  // namespace

Elem g_value(const FieldContext& K, const StickelbergerRecord& rec, Elem a, Elem b) {
    const std::uint64_t N = K.order();
    Elem acc = 0;
    for (auto [j1, j2] : rec.minimizers) {
        const std::uint64_t lin = (static_cast<std::uint64_t>(rec.d1) * j1 + static_cast<std::uint64_t>(rec.d2) * j2) % N;
        const std::int64_t t = lin == 0 ? 0 : static_cast<std::int64_t>(N - lin);
        acc ^= K.mul(K.pow(a, static_cast<std::int64_t>(j1) + j2), K.pow(b, t));
    }
    return acc;
}

ValuationReport verify_valuation_law(const VectorialFn& F, const StickelbergerRecord& rec, unsigned jobs, bool allow_large) {
    const FieldContext& K = F.field();
    if (K.n() > kMaxDefaultSpectrumDegree && !allow_large)
        throw ResourceGateError("valuation check for n=" + std::to_string(K.n()) + " needs every Walsh row", "--long-run");
    const GPoly g(K, rec);
    const std::uint32_t q = K.size();
    jobs = resolve_jobs(jobs);
    std::vector<ValuationReport> per_a(q);
    std::vector<WalshScratch> scratch(jobs);
    parallel_for(q - 1, jobs, [&](std::size_t lo, std::size_t hi, unsigned w) {
        for (std::size_t i = lo; i < hi; ++i) {
            const Elem a = static_cast<Elem>(i + 1);
            auto& rep = per_a[a];
            walsh_row_into(F, a, scratch[w]);
            const auto coeffs = g.coefficients(K, a);
            GPoly::Walker walker(K, coeffs);
            for (std::uint32_t step = 0; step < q; ++step) {
                // b = 0 first, then b = g^0, g^1, ...
                const Elem b = step == 0 ? 0 : K.primitive_pow(step - 1);
                const std::int32_t W = scratch[w].row[b];
                const int v = W == 0 ? 1 << 20 : std::countr_zero(static_cast<std::uint32_t>(W < 0 ? -W : W));
                const Elem gv = step == 0 ? GPoly::eval(K, coeffs, 0) : walker.next();
                ++rep.pairs_checked;
                const bool strict = v > rec.nu;
                rep.strict_pairs += strict;
                auto note = [&](const char* what) {
                    if (rep.samples.size() < 3) {
                        std::ostringstream os;
                        os << what << " at a=" << a << " b=" << b << " W=" << W << " g=" << gv;
                        rep.samples.push_back(os.str());
                    }
                };
                if (v < rec.nu) {
                    ++rep.bound_violations;
                    note("v2(W) < nu");
                }
                if (gv > 1) {
                    ++rep.non_binary_g;
                    note("g outside F_2");
                } else if (strict != (gv == 0)) {
                    ++rep.law_violations;
                    note("strictness mismatch");
                }
            }
        }
    });
    ValuationReport total;
    for (auto& r : per_a) {
        total.pairs_checked += r.pairs_checked;
        total.strict_pairs += r.strict_pairs;
        total.bound_violations += r.bound_violations;
        total.law_violations += r.law_violations;
        total.non_binary_g += r.non_binary_g;
        for (auto& s : r.samples)
            if (total.samples.size() < 5) total.samples.push_back(s);
    }
    return total;
}

HPolyReport h_polynomial(const StickelbergerRecord& rec, bool hypotheses) {
    HPolyReport r;
    r.exponents = rec.h_exponents;
    r.degree = r.exponents.empty() ? 0 : r.exponents.back();
    if (rec.n % 2) {
        r.skip_reason = "odd n";
        return r;
    }
    if (!hypotheses) {
        r.skip_reason = "hypotheses not met";
        return r;
    }
    r.compared = true;
    const int m = rec.n / 2;
    const std::uint64_t step = (std::uint64_t{1} << m) - 1;
    const std::uint64_t N = (std::uint64_t{1} << rec.n) - 1;
    std::vector<std::uint64_t> expected;
    for (std::uint64_t i = 1; i <= (std::uint64_t{1} << m); ++i) expected.push_back(i * step);
    r.identity_holds = r.exponents == expected;
    r.degree_holds = r.degree == (std::uint64_t{1} << rec.n) - (std::uint64_t{1} << m);
    r.sumset_contains = std::all_of(expected.begin(), expected.end(), [&](auto e) { return rec.sumset.count(e) > 0; });
    std::map<std::uint64_t, int> reduced;
    for (auto [j1, j2] : rec.j0_slice) reduced[(static_cast<std::uint64_t>(j1) + j2) % N] ^= 1;
    std::vector<std::uint64_t> red;
    for (auto [e, c] : reduced)
        if (c) red.push_back(e);
    r.reduced_matches = red == r.exponents;
    return r;
}

GcdLedger gcd_ledger(const FieldContext& K, const StickelbergerRecord& rec) {
    const auto m = K.m();
    if (!m) throw UsageError("the gcd ledger needs even n");
    GcdLedger L;
    const std::uint64_t N = K.order();
    const std::uint64_t sub = (std::uint64_t{1} << *m) - 1;
    L.s = gcd3(rec.d1, rec.d2, N);
    for (std::uint32_t j = 0; j <= sub; ++j) {
        const IndexPair p{j, static_cast<std::uint32_t>(sub - j)};
        if (std::binary_search(rec.minimizers.begin(), rec.minimizers.end(), p)) L.all_witnesses.push_back(j);
    }
    if (L.all_witnesses.empty()) return L;
    L.witness_found = true;
    L.j = L.all_witnesses.front();
    const std::int64_t diff = static_cast<std::int64_t>(rec.d2) - static_cast<std::int64_t>(rec.d1);
    L.a1_holds = mod_n(diff * static_cast<std::int64_t>(L.j), N) == mod_n(static_cast<std::int64_t>(rec.d2) * static_cast<std::int64_t>(sub), N);
    L.t = std::gcd<std::uint64_t>(L.j, sub);  // gcd(0, x) = x
    const auto step = static_cast<std::int64_t>(sub / L.t);
    L.k_integral = diff % step == 0;
    L.k = diff / step;
    const auto abs_k = static_cast<std::uint64_t>(L.k < 0 ? -L.k : L.k);
    L.r = std::gcd(abs_k, sub + 2);
    L.u = std::gcd(L.t, abs_k);
    L.u_r_coprime = std::gcd(L.u, L.r) == 1;
    L.gcd_d_n = std::gcd(static_cast<std::uint64_t>(diff < 0 ? -diff : diff), N);
    L.gcd_formula = static_cast<std::uint64_t>(step) * L.u * L.r;
    L.gcd_identity = L.gcd_d_n == L.gcd_formula;
    return L;
}

std::uint64_t log_ladder_violations(int n) {
    if (n % 2) throw UsageError("needs even n");
    const std::uint64_t N = (std::uint64_t{1} << n) - 1;
    const int m = n / 2;
    const std::uint64_t sub = (std::uint64_t{1} << m) - 1;
    std::uint64_t bad = 0;
    for (std::uint64_t j = 1; j < N; ++j) {
        if (j % (sub + 2) == 0) continue;
        bad += std::popcount(sub * j % N) != m;
    }
    return bad;
}

std::uint64_t degree_bound_violations(int n, std::int64_t d1, std::int64_t d2) {
    if (n % 2) throw UsageError("needs even n");
    const std::uint32_t N = (std::uint32_t{1} << n) - 1;
    const int m = n / 2;
    const std::uint64_t threshold = (std::uint64_t{1} << n) - (std::uint64_t{1} << m) + 1;
    const Scan scan{N, static_cast<std::uint32_t>(mod_n(d1, N)), static_cast<std::uint32_t>(mod_n(d2, N)), false};
    std::uint64_t bad = 0;
    for (std::uint32_t j1 = 0; j1 < N; ++j1)
        scan.row(j1, m, [&](std::uint32_t j2, int v) {
            if ((static_cast<std::uint64_t>(j1) + j2) % N >= threshold && v <= m) ++bad;
        });
    return bad;
}

}  // namespace vbf
