#include "vbf/classify.hpp"

#include "vbf/ellmap.hpp"
#include "vbf/errors.hpp"
#include "vbf/parallel.hpp"
#include "vbf/quadratic.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace vbf {

bool ell_exceeds_m(int n) {
    static std::mutex mu;
    static std::map<int, bool> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    const bool v = ell_n(*make_field(n), EllMethod::Lattice).ell_n > n / 2;
    cache[n] = v;
    return v;
}

namespace {

int require_even(const FieldContext& K) {
    if (!K.m()) throw UsageError("bent classification needs even n");
    return *K.m();
}

__int128 pow2(int e) { return static_cast<__int128>(1) << e; }

__int128 ceil_div(__int128 a, __int128 b) {
    if (b < 0) {
        a = -a;
        b = -b;
    }
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

}  // namespace

MaximalityReport maximality_check(const VectorialFn& F, unsigned jobs, bool allow_large) {
    const FieldContext& K = F.field();
    const int m = require_even(K);
    MaximalityReport r;
    if (is_quadratic_binomial(F)) {
        r.nonbent = nonbent_set_quadratic(F, jobs).nonbent;
        r.path = "kernel";
    } else {
        if (K.n() > kMaxDefaultSpectrumDegree && !allow_large)
            throw ResourceGateError("WHT maximality check for n=" + std::to_string(K.n()) + " is a long run", "--long-run");
        r.nonbent = nonbent_set_wht(F, jobs);
        r.path = "wht";
    }
    r.sf_size = r.nonbent.size();
    r.maximal = r.sf_size == (std::uint64_t{1} << m);
    const auto sub = check_subspace(r.nonbent);
    r.sf_is_subspace = sub.is_subspace;
    const auto d = static_cast<int>(sub.basis.size());
    if (sub.is_subspace && d > 0 && K.n() % d == 0) r.sf_is_subfield = K.subfield_elements(d) == r.nonbent;
    r.sf_equals_subfield = r.nonbent == K.subfield_elements(m);
    r.subspace_criterion_holds =
        r.sf_size >= (std::uint64_t{1} << m) && (!r.maximal || (sub.is_subspace && static_cast<int>(sub.basis.size()) == m));
    if (r.maximal && F.commutes_with_frobenius() && ell_exceeds_m(K.n())) r.subfield_assertion_holds = r.sf_equals_subfield;
    return r;
}

std::vector<FamilyMember> family_catalog(const FieldPtr& K) {
    const int m = require_even(*K);
    const std::int64_t N = K->order();
    std::vector<FamilyMember> out;
    auto p2 = [](int e) { return std::int64_t{1} << e; };
    out.push_back({"pott-i0", 0, VectorialFn::binomial(K, 2, 1 + p2(m)), true});
    for (int i = 1; i < m; ++i) out.push_back({"pott", i, VectorialFn::binomial(K, p2(i) + 1, p2(i) + p2(m)), true});
    for (int i = 1; i < m; ++i) out.push_back({"cor-pott", i, VectorialFn::binomial(K, 1 + p2(i), 1 + p2(m + i)), true});
    for (int i = 1; i < m; ++i)
        out.push_back({"qua", i, VectorialFn::binomial(K, p2(i) + 1, p2(m + i) + p2(m)), false});
    for (int i = 0; i < m; ++i) out.push_back({"hu", i, VectorialFn::monomial(K, (p2(m) + 1) * p2(i) % N), true});
    if (3 * (p2(m) + 1) < N) out.push_back({"hu-contrast", 3, VectorialFn::monomial(K, 3 * (p2(m) + 1)), std::nullopt});
    return out;
}

std::vector<FamilyResult> run_family_catalog(const FieldPtr& K, unsigned jobs) {
    const int m = require_even(*K);
    std::vector<FamilyResult> out;
    for (auto& member : family_catalog(K)) {
        const auto rep = maximality_check(member.fn, jobs);
        FamilyResult r{member, rep.maximal, rep.sf_equals_subfield, true, std::nullopt};
        if (member.expected_maximal) r.agrees = *member.expected_maximal == rep.maximal;
        if (member.family == "cor-pott") {
            const int i = member.i;
            auto G = VectorialFn::binomial(K, 1 + (std::int64_t{1} << (m - i)), (std::int64_t{1} << (m - i)) + (std::int64_t{1} << m));
            bool ok = true;
            for (Elem x = 0; x < K->size() && ok; ++x) ok = member.fn(x) == G(K->frobenius(x, m + i));
            r.witness_holds = ok;
        }
        out.push_back(std::move(r));
    }
    return out;
}

StructureReport structure_checks(const VectorialFn& F, bool maximal, const std::vector<std::int32_t>& zero_column,
                                 const StickelbergerRecord& rec) {
    StructureReport r;
    const FieldContext& K = F.field();
    if (!K.m()) {
        r.skip_reason = "odd n";
        return r;
    }
    const int m = *K.m();
    const std::uint64_t N = K.order();
    const std::uint64_t sub = (std::uint64_t{1} << m) - 1;
    if (!F.is_binomial()) {
        r.skip_reason = "not a binomial";
        return r;
    }
    r.s = gcd3(F.d1(), F.d2(), N);
    if (!maximal) {
        r.skip_reason = "not maximal";
        return r;
    }
    if (std::popcount(F.d1()) != 2 || std::popcount(F.d2()) != 2) {
        r.skip_reason = "exponent weights are not both 2";
        return r;
    }
    if (r.s == 1) {
        r.skip_reason = "s = 1";
        return r;
    }
    if (!ell_exceeds_m(K.n())) {
        r.skip_reason = "l(n) <= m";
        return r;
    }
    r.applicable = true;
    r.s_divides_sub = sub % r.s == 0;
    const auto plus = static_cast<std::int32_t>(std::int32_t{1} << m);
    r.zero_column_plus = true;
    r.zero_column_mod_s = true;
    const auto s = static_cast<std::int64_t>(r.s);
    for (Elem a = 0; a < K.size(); ++a) {
        if (!K.in_subfield(a, m) && zero_column[a] != plus) r.zero_column_plus = false;
        if (((zero_column[a] % s) + s) % s != 1) r.zero_column_mod_s = false;
    }
    const std::int64_t diff = static_cast<std::int64_t>(F.d2()) - static_cast<std::int64_t>(F.d1());
    r.difference_divisible = diff % static_cast<std::int64_t>(sub) == 0;
    r.s_equals_gcd_d1 = r.s == std::gcd<std::uint64_t>(F.d1(), sub);
    r.ledger = gcd_ledger(K, rec);
    return r;
}

Fingerprint fingerprint(const VectorialFn& F, unsigned jobs) {
    Fingerprint fp;
    fp.walsh_multiset = spectral_summary(F, {jobs, false}).abs_walsh_multiset;
    fp.diff_spectrum = diff_report(F, jobs).spectrum;
    fp.image_size = image_report(F).image_size;
    return fp;
}

std::string Witness::describe() const {
    std::ostringstream os;
    os << std::hex << "c1=0x" << c1 << " c2=0x" << c2 << " c3=0x" << c3 << std::dec << " j1=" << j1 << " j2=" << j2
       << " j3=" << j3;
    return os.str();
}

bool witness_maps(const VectorialFn& F, const VectorialFn& G, const Witness& w) {
    const FieldContext& K = F.field();
    for (Elem x = 0; x < K.size(); ++x) {
        const Elem inner = K.mul(w.c1, K.frobenius(x, w.j1));
        const Elem v = K.mul(w.c2, K.frobenius(F(inner), w.j2)) ^ K.mul(w.c3, K.frobenius(x, w.j3));
        if (v != G(x)) return false;
    }
    return true;
}

std::optional<Witness> find_witness(const VectorialFn& F, const VectorialFn& G) {
    const FieldContext& K = F.field();
    const int n = K.n();
    const Elem alpha = K.primitive();
    const Elem g1 = G(1), ga = G(alpha);
    // Frobenius on the input side is absorbed by j2 and c1 when F commutes with it.
    const int j1_end = F.commutes_with_frobenius() ? 1 : n;
    std::vector<Elem> alpha_frob(n);
    for (int j = 0; j < n; ++j) alpha_frob[j] = K.frobenius(alpha, j);
    for (Elem c1 = 1; c1 < K.size(); ++c1)
        for (int j1 = 0; j1 < j1_end; ++j1) {
            const Elem f1 = F(c1), fa = F(K.mul(c1, alpha_frob[j1]));
            for (int j2 = 0; j2 < n; ++j2) {
                const Elem h1 = K.frobenius(f1, j2), ha = K.frobenius(fa, j2);
                // c3 = 0
                if (h1 && g1) {
                    const Elem c2 = K.mul(g1, K.inv(h1));
                    Witness w{c1, c2, 0, j1, j2, 0};
                    if (K.mul(c2, ha) == ga && witness_maps(F, G, w)) return w;
                }
                for (int j3 = 0; j3 < n; ++j3) {
                    const Elem det = K.mul(h1, alpha_frob[j3]) ^ ha;
                    if (!det) continue;
                    const Elem c2 = K.mul(K.mul(g1, alpha_frob[j3]) ^ ga, K.inv(det));
                    if (!c2) continue;
                    const Elem c3 = g1 ^ K.mul(c2, h1);
                    Witness w{c1, c2, c3, j1, j2, j3};
                    if (witness_maps(F, G, w)) return w;
                }
            }
        }
    return std::nullopt;
}

EquivalenceReport equivalence_fingerprint(const VectorialFn& F, const VectorialFn& G, bool search_witness, unsigned jobs) {
    EquivalenceReport r;
    const auto a = fingerprint(F, jobs), b = fingerprint(G, jobs);
    r.consistent = a.walsh_multiset == b.walsh_multiset && a.diff_spectrum == b.diff_spectrum;
    r.image_equal = a.image_size == b.image_size;
    if (search_witness) r.witness = find_witness(F, G);
    r.sound = !(r.witness && !r.consistent);
    return r;
}

namespace {

struct Canonical {
    std::string member;
    std::optional<int> l;
    std::string label;
    VectorialFn fn;
    Fingerprint fp;
};

const std::vector<Canonical>& canonical_members(const FieldPtr& K, unsigned jobs) {
    static std::mutex mu;
    static std::map<std::pair<int, std::uint64_t>, std::vector<Canonical>> cache;
    std::lock_guard lock(mu);
    const auto key = std::pair{K->n(), K->modulus().bits()};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const int m = *K->m();
    std::vector<Canonical> out;
    auto mono = VectorialFn::monomial(K, (std::int64_t{1} << m) + 1);
    out.push_back({"x^" + std::to_string((1 << m) + 1), std::nullopt, "monomial-class", mono, fingerprint(mono, jobs)});
    for (int l = 1; l < m; ++l) {
        const std::int64_t d1 = (std::int64_t{1} << l) + 1, d2 = (std::int64_t{1} << l) + (std::int64_t{1} << m);
        auto f = VectorialFn::binomial(K, d1, d2);
        out.push_back({f.label(), l, "binomial-class", f, fingerprint(f, jobs)});
    }
    auto f0 = VectorialFn::binomial(K, 2, 1 + (std::int64_t{1} << m));
    out.push_back({f0.label(), 0, "binomial-class", f0, fingerprint(f0, jobs)});
    return cache.emplace(key, std::move(out)).first->second;
}

}  // namespace

ClassVerdict classify_maximal(const VectorialFn& F, unsigned jobs) {
    require_even(F.field());
    const auto& members = canonical_members(F.field_ptr(), jobs);
    const Fingerprint fp = fingerprint(F, jobs);
    const Canonical* first_match = nullptr;
    for (const auto& c : members) {
        if (c.fp.walsh_multiset != fp.walsh_multiset || c.fp.diff_spectrum != fp.diff_spectrum) continue;
        if (!first_match) first_match = &c;
        if (auto w = find_witness(c.fn, F)) return {c.label, c.member, c.l, w};
    }
    if (first_match) return {first_match->label, first_match->member, first_match->l, std::nullopt};
    return {};
}

std::vector<BoundCheck> bounds_report(const BoundInputs& in) {
    const VectorialFn& F = *in.F;
    const SpectralSummary& sp = *in.spectral;
    const DiffReport& df = *in.diff;
    const ImageReport& im = *in.image;
    const FieldContext& K = F.field();
    const int n = K.n();
    const int m = n / 2;
    std::vector<BoundCheck> out;
    auto add = [&](std::string name, bool applicable, std::string reason, __int128 lhs, __int128 rhs, std::string rel) {
        BoundCheck b;
        b.name = std::move(name);
        b.applicable = applicable;
        b.relation = std::move(rel);
        if (!applicable) {
            b.reason = std::move(reason);
        } else {
            b.lhs = lhs;
            b.rhs = rhs;
            b.holds = b.relation == ">=" ? lhs >= rhs : b.relation == "<=" ? lhs <= rhs : lhs == rhs;
        }
        out.push_back(std::move(b));
    };

    const __int128 q = pow2(n);
    const __int128 image = static_cast<__int128>(im.image_size);
    const __int128 delta_set = static_cast<__int128>(df.delta_set.size());
    const __int128 maxw = sp.max_abs_walsh;
    const bool base = in.ell_exceeds_m && F.commutes_with_frobenius() && in.maximal && n % 2 == 0;
    const std::string base_reason = "needs l(n) > m, Frobenius-commuting F and #S_F = 2^m";

    const __int128 anb = static_cast<__int128>(q - 1) * pow2(2 * n + 1);
    add("anb1", true, "", static_cast<__int128>(sp.sos_total), anb, ">=");
    add("anb1-apn", true, "", static_cast<__int128>(sp.sos_total) == anb ? 1 : 0, df.is_apn ? 1 : 0, "==");
    add("collisions", true, "", static_cast<__int128>(im.collisions) * image, q * q, ">=");
    add("delta-set-size", true, "", delta_set, static_cast<__int128>(im.collisions) / 2 - q / 2, "<=");

    add("lower-bound-max", base, base_reason, sp.max_sq_subfield, q * (pow2(m) + 2), ">=");
    add("bd1", base, base_reason, maxw * maxw, q * (pow2(m) + 2), ">=");
    add("platea", base && sp.is_plateaued_fn, base ? "F is not plateaued" : base_reason, sp.nonlinearity,
        pow2(n - 1) - pow2(3 * n / 4), "<=");
    add("bd2", base && sp.T != 0, base ? "T = 0" : base_reason, maxw * maxw * sp.T * image,
        pow2(3 * m) * (pow2(3 * m) - (pow2(m + 1) - 1) * image), ">=");
    const bool injective = im.image_size == static_cast<std::uint64_t>(q);
    add("bound-delta", !injective, "F is injective", df.delta,
        injective ? 0 : ceil_div(q * (q - image), delta_set * image), ">=");

    // Image-size refinements.
    const bool image_hyp = base && F.is_binomial() && std::popcount(F.d1()) == 2 && std::popcount(F.d2()) == 2 && im.s &&
                           *im.s > 1 && im.c.has_value();
    const std::string image_reason = base ? "needs weight-2 exponents, s > 1 and s | 2^m - 1" : base_reason;
    __int128 s = im.s ? static_cast<__int128>(*im.s) : 1;
    __int128 denom = im.c ? s + (pow2(m) - 1) * static_cast<__int128>(*im.c) : 1;
    add("imgbd-nonlinearity", image_hyp && sp.T != 0, image_hyp ? "T = 0" : image_reason, maxw * maxw * sp.T * denom,
        pow2(3 * m) * (pow2(3 * m) * s - (pow2(m + 1) - 1) * denom), ">=");
    add("imgbd-delta", image_hyp, image_reason, df.delta,
        image_hyp ? ceil_div(q * (q * s - denom), delta_set * denom) : 0, ">=");
    const bool s_known = base && F.is_binomial() && im.s.has_value();
    add("delta-s-1", s_known, base ? "not a binomial" : base_reason, df.delta, s - 1, ">=");

    // Delta-set remark, premise checked directly.
    bool premise = false;
    std::string premise_reason = base_reason;
    if (base && F.is_binomial()) {
        if (std::gcd<std::uint64_t>(F.d1(), (std::uint64_t{1} << m) - 1) != 1) {
            premise_reason = "gcd(d1, 2^m - 1) != 1";
        } else {
            premise = true;
            for (Elem a : K.subfield_elements(m))
                if (a && sp.zero_column[a] != 0) premise = false;
            if (!premise) premise_reason = "W_{F_a}(0) = 0 fails for some a in F_{2^m}^*";
        }
    } else if (base) {
        premise_reason = "not a binomial";
    }
    const __int128 cap = pow2(n - 1) - pow2(m - 1);
    add("delta-set-remark", premise, premise_reason, delta_set, cap, "<=");
    add("delta-remark-bound", premise && !injective, premise ? "F is injective" : premise_reason, df.delta,
        premise && !injective ? ceil_div(q * (q - image), cap * image) : 0, ">=");
    return out;
}

std::pair<std::uint32_t, std::uint32_t> canonical_pair(std::uint32_t d1, std::uint32_t d2, int n) {
    const std::uint64_t N = (std::uint64_t{1} << n) - 1;
    std::pair<std::uint32_t, std::uint32_t> best{~0u, ~0u};
    std::uint64_t a = d1 % N, b = d2 % N;
    for (int k = 0; k < n; ++k) {
        const auto lo = static_cast<std::uint32_t>(std::min(a, b)), hi = static_cast<std::uint32_t>(std::max(a, b));
        best = std::min(best, std::pair{lo, hi});
        a = 2 * a % N;
        b = 2 * b % N;
    }
    return best;
}

std::vector<SearchHit> search_binomials(const FieldPtr& K, const SearchOptions& opts) {
    const int m = require_even(*K);
    const int n = K->n();
    const std::uint32_t N = K->order();
    const bool kernel_only = opts.max_weight > 0 && opts.max_weight <= 2;
    if (!opts.allow_large) {
        if (!kernel_only && n > 14)
            throw ResourceGateError("WHT search beyond n=14 is a long run (use --max-weight 2 for the kernel path)", "--long-run");
        if (n > 20) throw ResourceGateError("binomial search beyond n=20 is a long run", "--long-run");
    }
    std::vector<SearchHit> hits;
    for (std::uint32_t d1 = 1; d1 < N; ++d1) {
        if (opts.max_weight > 0 && std::popcount(d1) > opts.max_weight) continue;
        for (std::uint32_t d2 = d1 + 1; d2 < N; ++d2) {
            if (opts.max_weight > 0 && std::popcount(d2) > opts.max_weight) continue;
            if (canonical_pair(d1, d2, n) != std::pair{d1, d2}) continue;
            hits.push_back({d1, d2, false, std::popcount(d1) <= 2 && std::popcount(d2) <= 2 ? "kernel" : "wht"});
        }
    }
    const std::uint64_t target = std::uint64_t{1} << m;
    parallel_for(hits.size(), resolve_jobs(opts.jobs), [&](std::size_t lo, std::size_t hi, unsigned) {
        for (std::size_t i = lo; i < hi; ++i) {
            auto& h = hits[i];
            auto F = VectorialFn::binomial(K, h.d1, h.d2);
            const auto count = h.path == "kernel" ? quadratic_nonbent_count_upto(F, target, 1) : nonbent_count_upto(F, target, 1);
            h.maximal = count == target;
        }
    }, 1);
    return hits;
}

}  // namespace vbf
