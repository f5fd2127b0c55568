#include "vbf/verify.hpp"

#include "vbf/boolfun.hpp"
#include "vbf/classify.hpp"
#include "vbf/ellmap.hpp"
#include "vbf/errors.hpp"
#include "vbf/padic.hpp"
#include "vbf/quadratic.hpp"
#include "vbf/stickelberger.hpp"

#include <bit>
#include <functional>
#include <set>

namespace vbf {

namespace {

struct Ctx {
    const FieldPtr& K;
    unsigned jobs;
    bool allow_large;
    std::vector<CheckResult>& out;
    std::string suite;

    void add(const std::string& check, bool ok, std::string detail = {}) {
        out.push_back({suite, check, ok ? "pass" : "fail", std::move(detail)});
    }
    void skip(const std::string& check, std::string why) { out.push_back({suite, check, "skip", std::move(why)}); }
    void flag(const std::string& check, std::string detail) { out.push_back({suite, check, "flag", std::move(detail)}); }
    // Exceptions from a damaged context count as failures of that check.
    void guarded(const std::string& check, const std::function<void()>& body) {
        try {
            body();
        } catch (const ResourceGateError&) {
            throw;
        } catch (const std::exception& e) {
            add(check, false, std::string("exception: ") + e.what());
        }
    }
};

Elem reference_mul(const FieldContext& K, Elem a, Elem b) {
    const std::uint64_t f = K.modulus().bits();
    std::uint64_t r = 0, x = a;
    for (int i = 0; i < K.n(); ++i) {
        if ((b >> i) & 1u) r ^= x;
        x <<= 1;
        if ((x >> K.n()) & 1u) x ^= f;
    }
    return static_cast<Elem>(r);
}

// Every element for small fields, a deterministic stride otherwise.
std::vector<Elem> sample(const FieldContext& K, std::size_t cap) {
    std::vector<Elem> s;
    const std::uint64_t step = std::max<std::uint64_t>(1, K.size() / cap);
    for (std::uint64_t x = 0; x < K.size(); x += step) s.push_back(static_cast<Elem>(x));
    if (s.back() != K.order()) s.push_back(K.order());
    return s;
}

bool budget(Ctx& c, const std::string& check, int limit) {
    if (c.K->n() <= limit || c.allow_large) return true;
    c.skip(check, "n > " + std::to_string(limit) + " needs --long-run");
    return false;
}

bool needs_even(Ctx& c, const std::string& check) {
    if (c.K->n() % 2 == 0) return true;
    c.skip(check, "needs even n");
    return false;
}

void field_suite(Ctx& c) {
    const FieldContext& K = *c.K;
    const auto xs = sample(K, 1024);
    c.guarded("mul_reference", [&] {
        std::uint64_t bad = 0;
        for (Elem a : xs)
            for (Elem b : xs) bad += K.mul(a, b) != reference_mul(K, a, b);
        c.add("mul_reference", bad == 0, std::to_string(bad) + " mismatches");
    });
    c.guarded("inverse", [&] {
        std::uint64_t bad = 0;
        for (Elem a : xs)
            if (a) bad += K.mul(a, K.inv(a)) != 1;
        c.add("inverse", bad == 0, std::to_string(bad) + " mismatches");
    });
    c.guarded("frobenius", [&] {
        std::uint64_t bad = 0;
        for (Elem a : xs) {
            bad += K.frobenius(a, K.n()) != a;
            bad += K.frobenius(a) != reference_mul(K, a, a);
        }
        c.add("frobenius", bad == 0, std::to_string(bad) + " mismatches");
    });
    c.guarded("trace", [&] {
        std::uint64_t bad = 0;
        for (Elem a : xs) {
            Elem t = 0, v = a;
            for (int i = 0; i < K.n(); ++i) {
                t ^= v;
                v = reference_mul(K, v, v);
            }
            bad += t != static_cast<Elem>(K.trace(a));
            for (Elem y : {Elem{1}, K.primitive(), K.order()})
                bad += K.trace(reference_mul(K, a, y)) != FieldContext::parity(K.trace_dual(a) & y);
        }
        c.add("trace", bad == 0, std::to_string(bad) + " mismatches");
    });
    c.guarded("primitive", [&] {
        const Elem g = K.primitive();
        bool ok = K.primitive_pow(K.order()) == 1;
        for (auto p : prime_factors(K.order())) ok = ok && K.pow(g, K.order() / p) != 1;
        c.add("primitive", ok);
    });
}

VectorialFn sample_fn(const FieldPtr& K) {
    if (K->n() % 2 == 0) return VectorialFn::binomial(K, 3, 2 + (std::int64_t{1} << (K->n() / 2)));
    return VectorialFn::binomial(K, 3, 5);
}

void boolfun_suite(Ctx& c) {
    const FieldContext& K = *c.K;
    if (!budget(c, "spectra", 12)) return;
    const auto F = sample_fn(c.K);
    const std::int64_t q = K.size();
    c.guarded("parseval_rowsum", [&] {
        std::uint64_t bad_parseval = 0, bad_rowsum = 0;
        for (Elem a = 1; a < K.size(); ++a) {
            const auto row = walsh_row(F, a);
            std::int64_t sq = 0, sum = 0;
            for (auto w : row) {
                sq += static_cast<std::int64_t>(w) * w;
                sum += w;
            }
            bad_parseval += sq != q * q;
            bad_rowsum += sum != (K.trace(K.mul(a, F(0))) ? -q : q);
        }
        c.add("parseval", bad_parseval == 0, F.label() + ": " + std::to_string(bad_parseval) + " rows off");
        c.add("row_sum", bad_rowsum == 0, F.label() + ": " + std::to_string(bad_rowsum) + " rows off");
    });
    c.guarded("ddt", [&] {
        const auto d = diff_report(F, c.jobs);
        c.add("ddt", d.entries_even && d.rows_sum_to_size, F.label() + ": delta " + std::to_string(d.delta));
    });
    c.guarded("zero_column", [&] {
        const auto sp = spectral_summary(F, {c.jobs, c.allow_large});
        const auto im = image_report(F);
        std::int64_t sum = 0;
        for (auto w : sp.zero_column) sum += w;
        c.add("zero_column", sum == q * static_cast<std::int64_t>(im.zero_preimage));
        if (sp.bent_classification_supported) {
            const std::set<Elem> sf(sp.nonbent.begin(), sp.nonbent.end());
            bool closed = true;
            for (Elem a : sp.nonbent) closed = closed && sf.count(K.square(a));
            c.add("squaring_closure", closed, "#S_F = " + std::to_string(sp.nonbent.size()));
        }
    });
    c.guarded("anb1_apn", [&] {
        const unsigned __int128 bound = static_cast<unsigned __int128>(q - 1) << (2 * K.n() + 1);
        bool ok = true;
        std::string detail;
        for (std::int64_t d : {3, 5, 7}) {
            if (d >= static_cast<std::int64_t>(K.order())) continue;
            const auto G = VectorialFn::monomial(c.K, d);
            const auto sp = spectral_summary(G, {c.jobs, c.allow_large});
            const bool apn = diff_report(G, c.jobs).is_apn;
            ok = ok && ((sp.sos_total == bound) == apn);
            if (d == 3) ok = ok && apn;
            detail += G.label() + (apn ? " APN " : " non-APN ");
        }
        c.add("anb1_apn", ok, detail);
    });
}

void quadratic_suite(Ctx& c) {
    if (!needs_even(c, "kernel_vs_wht") || !budget(c, "kernel_vs_wht", 8)) return;
    c.guarded("kernel_vs_wht", [&] {
        const std::uint32_t N = c.K->order();
        std::uint64_t pairs = 0, bad = 0;
        for (std::uint32_t d1 = 1; d1 < N; ++d1)
            for (std::uint32_t d2 = d1 + 1; d2 < N; ++d2) {
                if (std::popcount(d1) > 2 || std::popcount(d2) > 2) continue;
                const auto F = VectorialFn::binomial(c.K, d1, d2);
                ++pairs;
                bad += nonbent_set_quadratic(F, c.jobs).nonbent != nonbent_set_wht(F, c.jobs);
            }
        c.add("kernel_vs_wht", bad == 0, std::to_string(pairs) + " pairs, " + std::to_string(bad) + " mismatches");
    });
}

void stick_suite(Ctx& c) {
    const int n = c.K->n();
    if (!needs_even(c, "log_ladder")) return;
    if (budget(c, "log_ladder", 12)) c.guarded("log_ladder", [&] {
        const auto v = log_ladder_violations(n);
        c.add("log_ladder", v == 0, std::to_string(v) + " violations");
    });
    if (!budget(c, "valuation_law", 10)) return;
    const auto F = sample_fn(c.K);
    c.guarded("valuation_law", [&] {
        const auto rec = nu_and_minimizers(*c.K, F.d1(), F.d2(), {c.jobs, false});
        const auto deg = degree_bound_violations(n, F.d1(), F.d2());
        c.add("degree_bound", deg == 0, F.label() + ": " + std::to_string(deg) + " violations");
        c.add("nu_equals_m", rec.nu == n / 2, F.label() + ": nu = " + std::to_string(rec.nu));
        const auto v = verify_valuation_law(F, rec, c.jobs, c.allow_large);
        c.add("valuation_law", v.holds(), F.label() + ": " + std::to_string(v.pairs_checked) + " pairs, " +
                                              std::to_string(v.strict_pairs) + " strict");
    });
}

void padic_suite(Ctx& c) {
    if (!budget(c, "stickelberger", 8)) return;
    if (c.K->n() > kMaxPadicDegree) {
        c.skip("stickelberger", "n > " + std::to_string(kMaxPadicDegree));
        return;
    }
    c.guarded("stickelberger", [&] {
        const PadicContext P(c.K, c.K->n() + 2);
        const auto rep = verify_stickelberger_and_fourier(P, c.jobs);
        c.add("teichmuller", rep.teichmuller_failures == 0, std::to_string(rep.teichmuller_failures) + " failures");
        c.add("congruence", rep.congruence_failures == 0 && rep.valuation_mismatches == 0,
              std::to_string(rep.congruence_failures + rep.valuation_mismatches) + " failures");
        c.add("product", rep.product_failures == 0, std::to_string(rep.product_failures) + " failures");
        c.add("fourier", rep.fourier_failures == 0, std::to_string(rep.fourier_failures) + " failures");
    });
}

void ell_suite(Ctx& c) {
    const int n = c.K->n();
    c.guarded("brute_vs_lattice", [&] {
        const int lattice = ell_n(*c.K, EllMethod::Lattice).ell_n;
        if (n >= 22 && !c.allow_large) {
            c.skip("brute_vs_lattice", "n >= 22 needs --long-run");
        } else {
            const int brute = ell_n(*c.K, EllMethod::Brute, {c.jobs, c.allow_large, false}).ell_n;
            c.add("brute_vs_lattice", brute == lattice, "brute " + std::to_string(brute) + ", lattice " + std::to_string(lattice));
        }
        const auto& t = expected_table1();
        if (auto it = t.find(n); it != t.end())
            c.add("table1", it->second == lattice, "l(" + std::to_string(n) + ") = " + std::to_string(lattice));
    });
}

void classify_suite(Ctx& c) {
    if (!needs_even(c, "family_catalog") || !budget(c, "family_catalog", 10)) return;
    c.guarded("family_catalog", [&] {
        std::uint64_t bad = 0, witness_bad = 0;
        std::string detail;
        for (const auto& r : run_family_catalog(c.K, c.jobs)) {
            if (!r.agrees) {
                ++bad;
                detail += " " + r.member.family + "/" + std::to_string(r.member.i);
            }
            witness_bad += r.witness_holds && !*r.witness_holds;
        }
        c.add("family_catalog", bad == 0, std::to_string(bad) + " disagreements" + detail);
        c.add("cor_pott_witness", witness_bad == 0);
    });
    c.guarded("structure", [&] {
        std::uint64_t checked = 0, bad = 0, bounds_bad = 0;
        const bool ell_gt = ell_exceeds_m(c.K->n());
        for (const auto& hit : search_binomials(c.K, {2, c.jobs, c.allow_large})) {
            if (!hit.maximal) continue;
            const auto F = VectorialFn::binomial(c.K, hit.d1, hit.d2);
            const auto sp = spectral_summary(F, {c.jobs, c.allow_large});
            const auto st = structure_checks(F, true, sp.zero_column, nu_and_minimizers(*c.K, hit.d1, hit.d2, {c.jobs, false}));
            checked += st.applicable;
            bad += !st.holds();
            const auto df = diff_report(F, c.jobs);
            const auto im = image_report(F);
            for (const auto& b : bounds_report({&F, &sp, &df, &im, true, ell_gt})) bounds_bad += b.applicable && !b.holds;
        }
        c.add("structure", bad == 0, std::to_string(checked) + " instances with s > 1");
        c.add("bounds", bounds_bad == 0, std::to_string(bounds_bad) + " violations");
    });
}

void image_suite(Ctx& c) {
    if (!needs_even(c, "explicit_image") || !budget(c, "explicit_image", 16)) return;
    const int m = c.K->n() / 2;
    for (int l = 0; l < m; ++l) {
        const std::string name = "explicit_image_l" + std::to_string(l);
        c.guarded(name, [&] {
            const auto e = explicit_image_check(c.K, l);
            c.add(name, e.gcd_formula_holds, "direct " + std::to_string(e.direct) + ", gcd formula " + std::to_string(e.gcd_formula));
            if (!e.dichotomy_holds)
                c.flag(name + "_dichotomy", "{1,3} case split predicts " + std::to_string(e.dichotomy_formula) +
                                                ", enumeration gives " + std::to_string(e.direct));
        });
    }
}

}  // namespace

std::vector<CheckResult> run_suite(const FieldPtr& K, const std::string& suite, unsigned jobs, bool allow_large) {
    static const std::map<std::string, void (*)(Ctx&)> table{
        {"field", field_suite}, {"boolfun", boolfun_suite}, {"quadratic", quadratic_suite}, {"stick", stick_suite},
        {"padic", padic_suite}, {"ell", ell_suite},         {"classify", classify_suite},   {"image", image_suite}};
    std::vector<CheckResult> out;
    std::vector<std::string> which;
    if (suite == "all")
        which = suite_names();
    else if (table.count(suite))
        which = {suite};
    else
        throw UsageError("unknown suite '" + suite + "'");
    for (const auto& name : which) {
        Ctx c{K, jobs, allow_large, out, name};
        table.at(name)(c);
    }
    return out;
}

}  // namespace vbf
