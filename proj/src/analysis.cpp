#include "vbf/analysis.hpp"

#include "vbf/classify.hpp"
#include "vbf/ellmap.hpp"
#include "vbf/errors.hpp"
#include "vbf/quadratic.hpp"
#include "vbf/stickelberger.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <set>

namespace vbf {

std::string tool_version() { return VBF_VERSION; }

std::string to_decimal(__int128 v) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    std::string s;
    while (u) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

namespace {

const char* status(bool ok) { return ok ? "pass" : "fail"; }

std::vector<Elem> spot_rows(const FieldContext& K) {
    return {1, K.primitive(), K.order()};
}

}  // namespace

bool parseval_spot_check(const VectorialFn& F, std::int64_t nonlinearity) {
    const FieldContext& K = F.field();
    const std::int64_t q = K.size();
    const std::int64_t max_abs = q - 2 * nonlinearity;
    for (Elem a : spot_rows(K)) {
        const auto row = walsh_row(F, a);
        std::int64_t sum = 0;
        for (auto w : row) {
            sum += static_cast<std::int64_t>(w) * w;
            if (std::abs(static_cast<std::int64_t>(w)) > max_abs) return false;
        }
        if (sum != q * q) return false;
    }
    return true;
}

AnalysisRecord analyze_binomial(const FieldPtr& K, std::uint32_t d1, std::uint32_t d2, const AnalyzeOptions& opts) {
    const int n = K->n();
    if (n % 2) throw UsageError("analysis needs even n");
    if (n > kMaxDefaultAnalysisDegree && !opts.allow_large)
        throw ResourceGateError("full analysis at n=" + std::to_string(n) + " computes a 2^" + std::to_string(2 * n) +
                                    "-entry DDT",
                                "--long-run");
    const auto F = VectorialFn::binomial(K, d1, d2);

    AnalysisRecord r;
    r.tool_version = tool_version();
    r.n = n;
    r.modulus = K->modulus().to_hex();
    r.d1 = F.d1();
    r.d2 = F.d2();
    r.label = F.label();

    const auto sp = spectral_summary(F, {opts.jobs, opts.allow_large});
    const auto mx = maximality_check(F, opts.jobs, opts.allow_large);
    const auto df = diff_report(F, opts.jobs);
    const auto im = image_report(F);
    const bool ell_gt = ell_exceeds_m(n);
    const auto rec = nu_and_minimizers(*K, F.d1(), F.d2(), {opts.jobs, false});

    r.maximal = mx.maximal;
    r.sf_size = mx.sf_size;
    r.sf_is_subspace = mx.sf_is_subspace;
    r.sf_is_subfield = mx.sf_is_subfield;
    r.sf_equals_subfield = mx.sf_equals_subfield;
    r.nonlinearity = sp.nonlinearity;
    r.delta = df.delta;
    r.image_size = im.image_size;
    r.c = im.c;
    r.s = im.s;
    r.nu = rec.nu;
    r.plateaued = sp.is_plateaued_fn;
    r.T = sp.T;
    r.ell_n = ell_n(*K, EllMethod::Lattice).ell_n;
    r.ell_exceeds_m = ell_gt;

    const auto st = structure_checks(F, mx.maximal, sp.zero_column, rec);
    if (st.applicable && st.ledger && st.ledger->witness_found)
        r.ledger = LedgerRecord{st.ledger->j, st.ledger->t, st.ledger->k, st.ledger->u, st.ledger->r, st.ledger->holds()};

    bool bounds_ok = true;
    for (const auto& b : bounds_report({&F, &sp, &df, &im, mx.maximal, ell_gt})) {
        BoundRecord br{b.name, b.applicable, b.relation, {}, {}, std::nullopt, b.reason};
        if (b.applicable) {
            br.lhs = to_decimal(b.lhs);
            br.rhs = to_decimal(b.rhs);
            br.holds = b.holds;
            bounds_ok = bounds_ok && b.holds;
        }
        r.bound_checks.push_back(std::move(br));
    }

    r.class_label = "unclassified";
    if (mx.maximal) {
        const auto v = classify_maximal(F, opts.jobs);
        r.class_label = v.label;
        r.class_member = v.member;
        if (v.witness) r.witness = v.witness->describe();
    }

    auto& c = r.checks;
    c.emplace_back("parseval", status(parseval_spot_check(F, sp.nonlinearity)));
    if (mx.path == "kernel")
        c.emplace_back("kernel_vs_wht", status(mx.nonbent == sp.nonbent));
    else
        c.emplace_back("kernel_vs_wht", "skip");
    c.emplace_back("subspace_criterion", status(mx.subspace_criterion_holds));
    c.emplace_back("subfield_assertion", mx.subfield_assertion_holds ? status(*mx.subfield_assertion_holds) : "skip");
    {
        const std::set<Elem> sf(mx.nonbent.begin(), mx.nonbent.end());
        bool closed = true;
        for (Elem a : mx.nonbent) closed = closed && sf.count(K->square(a));
        c.emplace_back("squaring_closure", status(closed));
    }
    {
        // sum_a W_{F_a}(0) = 2^n #F^{-1}(0)
        std::int64_t sum = 0;
        for (auto w : sp.zero_column) sum += w;
        c.emplace_back("zero_column", status(sum == static_cast<std::int64_t>(K->size()) * static_cast<std::int64_t>(im.zero_preimage)));
    }
    c.emplace_back("ddt", status(df.entries_even && df.rows_sum_to_size));
    c.emplace_back("image_formula", im.agrees ? status(*im.agrees) : "skip");
    c.emplace_back("valuation_law", status(verify_valuation_law(F, rec, opts.jobs, opts.allow_large).holds()));
    const bool h_hyp = mx.maximal && std::popcount(F.d1()) == 2 && std::popcount(F.d2()) == 2 && ell_gt;
    const auto h = h_polynomial(rec, h_hyp);
    c.emplace_back("h_identity", h.compared ? status(h.identity_holds && h.degree_holds && h.sumset_contains) : "skip");
    c.emplace_back("structure", st.applicable ? status(st.holds()) : "skip");
    c.emplace_back("bounds", status(bounds_ok));
    return r;
}

RecordCache::RecordCache(std::filesystem::path dir) : file_(dir / "records.jsonl") {
    std::filesystem::create_directories(dir);
    std::ifstream in(file_);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            auto r = record_from_json(line);
            records_.insert_or_assign(key(r.tool_version, r.n, r.modulus, r.d1, r.d2), std::move(r));
        } catch (const UsageError&) {
            // unreadable lines are ignored and recomputed on demand
        }
    }
}

std::string RecordCache::key(const std::string& version, int n, const std::string& modulus, std::uint32_t d1, std::uint32_t d2) {
    return version + '|' + std::to_string(n) + '|' + modulus + '|' + std::to_string(d1) + '|' + std::to_string(d2);
}

std::optional<AnalysisRecord> RecordCache::find(int n, const std::string& modulus, std::uint32_t d1, std::uint32_t d2) const {
    auto it = records_.find(key(tool_version(), n, modulus, d1, d2));
    if (it == records_.end()) return std::nullopt;
    return it->second;
}

void RecordCache::store(const AnalysisRecord& r) {
    std::ofstream out(file_, std::ios::app);
    out << to_json_line(r) << '\n';
    if (!out) throw UsageError("cannot write cache file " + file_.string());
    records_.insert_or_assign(key(r.tool_version, r.n, r.modulus, r.d1, r.d2), r);
}

AnalysisRecord analyze_cached(const FieldPtr& K, std::uint32_t d1, std::uint32_t d2, const AnalyzeOptions& opts,
                              RecordCache* cache) {
    if (!cache) return analyze_binomial(K, d1, d2, opts);
    const auto F = VectorialFn::binomial(K, d1, d2);
    if (auto hit = cache->find(K->n(), K->modulus().to_hex(), F.d1(), F.d2()))
        if (parseval_spot_check(F, hit->nonlinearity)) return *hit;
    auto r = analyze_binomial(K, d1, d2, opts);
    cache->store(r);
    return r;
}

}  // namespace vbf
