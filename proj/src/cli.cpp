#include "vbf/cli.hpp"

#include "vbf/analysis.hpp"
#include "vbf/classify.hpp"
#include "vbf/ellmap.hpp"
#include "vbf/errors.hpp"
#include "vbf/padic.hpp"
#include "vbf/parallel.hpp"
#include "vbf/stickelberger.hpp"
#include "vbf/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <bit>
#include <chrono>
#include <optional>
#include <sstream>

namespace vbf {

namespace {

using json = nlohmann::ordered_json;

struct Global {
    std::optional<int> n;
    std::string modulus;
    std::string format = "text";
    unsigned jobs = 0;
    std::string cache;
    bool long_run = false;
};

std::string hex(std::uint64_t v) {
    std::ostringstream os;
    os << "0x" << std::hex << v;
    return os.str();
}

Gf2Poly parse_modulus(const std::string& s) {
    if (s.size() < 3 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X'))
        throw UsageError("--modulus expects a hex polynomial such as 0x43");
    std::size_t pos = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(s.substr(2), &pos, 16);
    } catch (const std::exception&) {
        throw UsageError("--modulus: cannot parse '" + s + "'");
    }
    if (pos != s.size() - 2) throw UsageError("--modulus: cannot parse '" + s + "'");
    return Gf2Poly{v};
}

FieldPtr field_for(const Global& g) {
    if (!g.n) throw UsageError("--n is required");
    if (g.modulus.empty()) return make_field(*g.n);
    return make_field(*g.n, parse_modulus(g.modulus));
}

unsigned jobs_for(const Global& g) { return g.jobs ? g.jobs : default_jobs(); }

void emit_records(const std::vector<AnalysisRecord>& recs, const Global& g, std::ostream& out) {
    if (g.format == "csv") out << csv_header() << '\n';
    for (const auto& r : recs) {
        if (g.format == "json")
            out << to_json_line(r) << '\n';
        else if (g.format == "csv")
            out << to_csv_row(r) << '\n';
        else
            out << to_text(r);
    }
}

int cmd_field(const Global& g, std::ostream& out) {
    const auto K = field_for(g);
    const bool is_default = K->modulus() == default_modulus(K->n());
    if (g.format == "json") {
        json j;
        j["schema"] = kRecordSchema;
        j["n"] = K->n();
        j["modulus"] = K->modulus().to_hex();
        j["modulus_poly"] = K->modulus().to_string();
        j["default_modulus"] = is_default;
        j["order"] = K->order();
        j["primitive"] = hex(K->primitive());
        j["tables"] = K->has_tables();
        out << j.dump() << '\n';
    } else if (g.format == "csv") {
        out << "n,modulus,default_modulus,order,primitive,tables\n"
            << K->n() << ',' << K->modulus().to_hex() << ',' << (is_default ? "true" : "false") << ',' << K->order() << ','
            << hex(K->primitive()) << ',' << (K->has_tables() ? "true" : "false") << '\n';
    } else {
        out << "F_2^" << K->n() << " = F_2[x]/(" << K->modulus().to_string() << "), modulus " << K->modulus().to_hex()
            << (is_default ? " (registry default)" : "") << '\n'
            << "order " << K->order() << ", least primitive element " << hex(K->primitive()) << ", "
            << (K->has_tables() ? "log/antilog tables" : "carry-less multiplication") << '\n';
    }
    return kExitOk;
}

int cmd_analyze(const Global& g, std::uint32_t d1, std::uint32_t d2, std::ostream& out) {
    const auto K = field_for(g);
    std::optional<RecordCache> cache;
    if (!g.cache.empty()) cache.emplace(g.cache);
    const auto r = analyze_cached(K, d1, d2, {jobs_for(g), g.long_run}, cache ? &*cache : nullptr);
    emit_records({r}, g, out);
    return r.ok() ? kExitOk : kExitVerificationFailed;
}

int cmd_search(const Global& g, int max_weight, std::ostream& out, std::ostream& err) {
    const auto K = field_for(g);
    const unsigned jobs = jobs_for(g);
    const auto hits = search_binomials(K, {max_weight, jobs, g.long_run});
    std::optional<RecordCache> cache;
    if (!g.cache.empty()) cache.emplace(g.cache);
    std::vector<AnalysisRecord> recs;
    for (const auto& h : hits)
        if (h.maximal) recs.push_back(analyze_cached(K, h.d1, h.d2, {jobs, g.long_run}, cache ? &*cache : nullptr));
    bool ok = true;
    for (const auto& r : recs) ok = ok && r.ok();
    if (g.format == "text") {
        out << "n=" << K->n() << " modulus=" << K->modulus().to_hex() << " canonical_pairs=" << hits.size()
            << " maximal=" << recs.size() << '\n';
        for (const auto& r : recs) {
            out << r.d1 << ' ' << r.d2 << ' ' << r.label << ' ' << r.class_label;
            if (!r.class_member.empty()) out << ' ' << r.class_member;
            out << (r.ok() ? "" : " CHECKS-FAILED") << '\n';
        }
    } else {
        emit_records(recs, g, out);
    }
    if (!ok) err << "search: at least one maximal instance failed a check\n";
    return ok ? kExitOk : kExitVerificationFailed;
}

int cmd_ell(const Global& g, std::string method, std::ostream& out, std::ostream& err) {
    const auto K = field_for(g);
    const int n = K->n();
    if (method.empty()) method = n >= 22 && !g.long_run ? "lattice" : "both";
    const auto lattice = ell_n(*K, EllMethod::Lattice);
    std::optional<EllRecord> brute;
    if (method != "lattice") brute = ell_n(*K, EllMethod::Brute, {jobs_for(g), g.long_run, false});
    const EllRecord& main = method == "brute" ? *brute : lattice;
    const bool agree = !brute || brute->ell_n == lattice.ell_n;
    const auto suff = sufficient_condition(n);
    const bool exceeds = n % 2 == 0 && main.ell_n > n / 2;
    if (g.format == "json") {
        json j;
        j["schema"] = kRecordSchema;
        j["n"] = n;
        j["ell"] = main.ell_n;
        j["method"] = method;
        j["lattice"] = lattice.ell_n;
        j["brute"] = brute ? json(brute->ell_n) : json(nullptr);
        j["f_gamma"] = main.f_gamma.to_string();
        j["witness"] = brute && brute->witness ? json(hex(*brute->witness)) : json(nullptr);
        j["exceeds_m"] = n % 2 == 0 ? json(exceeds) : json(nullptr);
        j["sufficient_condition"] = suff.guaranteed;
        j["sufficient_reason"] = suff.reason;
        out << j.dump() << '\n';
    } else if (g.format == "csv") {
        out << "n,ell,method,lattice,brute,f_gamma,exceeds_m\n"
            << n << ',' << main.ell_n << ',' << method << ',' << lattice.ell_n << ',' << (brute ? std::to_string(brute->ell_n) : "")
            << ',' << main.f_gamma.to_string() << ',' << (exceeds ? "true" : "false") << '\n';
    } else {
        out << "ell=" << main.ell_n << '\n';
        out << "n=" << n << " method=" << method << " f_gamma=" << main.f_gamma.to_string();
        if (brute && brute->witness) out << " witness=" << hex(*brute->witness);
        out << '\n' << "sufficient condition: " << (suff.guaranteed ? "holds" : "does not hold") << " (" << suff.reason << ")\n";
    }
    if (n % 2 == 0 && !exceeds)
        err << "warning: l(" << n << ") = " << main.ell_n << " <= m = " << n / 2
            << "; results that need l(n) > m are inapplicable at this n\n";
    if (!agree) err << "error: brute force gives " << brute->ell_n << ", divisor lattice gives " << lattice.ell_n << '\n';
    return agree ? kExitOk : kExitVerificationFailed;
}

int cmd_table1(const Global& g, int from, int to, std::ostream& out, std::ostream& err) {
    std::vector<int> ns;
    if (g.n) {
        ns = {*g.n};
    } else {
        for (int n = from; n <= to; n += 2) ns.push_back(n);
    }
    for (int n : ns) {
        if (n % 2 || n < 4) throw UsageError("table1 covers even n >= 4, got " + std::to_string(n));
        if (n > 30) throw UsageError("table1 covers n <= 30");
        if (n >= 22 && !g.long_run) throw ResourceGateError("table1 at n=" + std::to_string(n) + " is a long run", "--long-run");
    }
    const auto& expected = expected_table1();
    bool ok = true;
    if (g.format == "csv") out << "n,ell,brute,expected,match,elapsed_ms\n";
    for (int n : ns) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto K = g.modulus.empty() || !g.n ? make_field(n) : field_for(g);
        const int lattice = ell_n(*K, EllMethod::Lattice).ell_n;
        const int brute = ell_n(*K, EllMethod::Brute, {jobs_for(g), g.long_run, false}).ell_n;
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        const auto it = expected.find(n);
        const int* exp = it == expected.end() ? nullptr : &it->second;
        const bool match = lattice == brute && (!exp || *exp == lattice);
        ok = ok && match;
        if (g.format == "json") {
            json j;
            j["schema"] = kRecordSchema;
            j["n"] = n;
            j["ell"] = lattice;
            j["brute"] = brute;
            j["expected"] = exp ? json(*exp) : json(nullptr);
            j["match"] = match;
            j["elapsed_ms"] = ms;
            out << j.dump() << '\n';
        } else if (g.format == "csv") {
            out << n << ',' << lattice << ',' << brute << ',' << (exp ? std::to_string(*exp) : "") << ','
                << (match ? "true" : "false") << ',' << ms << '\n';
        } else {
            out << "n=" << n << " ell=" << lattice << " brute=" << brute << " expected=" << (exp ? std::to_string(*exp) : "-")
                << ' ' << (match ? "match" : "MISMATCH") << " elapsed_ms=" << ms << '\n';
        }
    }
    if (!ok) err << "table1: mismatch against the published values\n";
    return ok ? kExitOk : kExitVerificationFailed;
}

int cmd_stick(const Global& g, std::optional<std::int64_t> d1, std::optional<std::int64_t> d2, std::optional<std::int64_t> mono,
              bool valuation, std::ostream& out) {
    const auto K = field_for(g);
    const bool monomial = mono.has_value();
    if (!monomial && (!d1 || !d2)) throw UsageError("stick needs --d1 and --d2, or --monomial");
    const std::int64_t e1 = monomial ? *mono : *d1, e2 = monomial ? 0 : *d2;
    if (K->n() > 16 && !g.long_run) throw ResourceGateError("nu scan at n=" + std::to_string(K->n()) + " is a long run", "--long-run");
    const auto rec = nu_and_minimizers(*K, e1, e2, {jobs_for(g), monomial});
    bool ok = true;
    std::optional<std::uint64_t> deg;
    if (!monomial) {
        deg = degree_bound_violations(K->n(), rec.d1, rec.d2);
        ok = ok && *deg == 0;
    }
    std::optional<GcdLedger> ledger;
    if (!monomial && K->n() % 2 == 0) ledger = gcd_ledger(*K, rec);
    std::optional<ValuationReport> val;
    if (valuation) {
        const auto F = monomial ? VectorialFn::monomial(K, e1) : VectorialFn::binomial(K, e1, e2);
        val = verify_valuation_law(F, rec, jobs_for(g), g.long_run);
        ok = ok && val->holds();
    }
    auto pairs = [](const std::vector<IndexPair>& v) {
        json a = json::array();
        for (const auto& p : v) a.push_back(json::array({p.first, p.second}));
        return a;
    };
    if (g.format == "text") {
        out << "n=" << rec.n << " d1=" << rec.d1 << (monomial ? "" : " d2=" + std::to_string(rec.d2)) << " nu=" << rec.nu
            << " lower_bound=" << rec.lower_bound << " |J|=" << rec.minimizers.size() << " |J0|=" << rec.j0_slice.size()
            << " doubling_closed=" << (rec.doubling_closed ? "true" : "false") << '\n';
        out << "J:";
        for (const auto& p : rec.minimizers) out << " (" << p.first << ',' << p.second << ')';
        out << '\n';
        if (deg) out << "degree_bound violations: " << *deg << '\n';
        if (ledger && ledger->witness_found)
            out << "ledger: j=" << ledger->j << " t=" << ledger->t << " k=" << ledger->k << " u=" << ledger->u << " r=" << ledger->r
                << " gcd(d2-d1,N)=" << ledger->gcd_d_n << " formula=" << ledger->gcd_formula
                << " holds=" << (ledger->holds() ? "true" : "false") << '\n';
        if (val)
            out << "valuation law: " << val->pairs_checked << " pairs, " << val->strict_pairs << " strict, "
                << val->bound_violations << " bound violations, " << val->law_violations << " law violations\n";
    } else {
        json j;
        j["schema"] = kRecordSchema;
        j["n"] = rec.n;
        j["d1"] = rec.d1;
        j["d2"] = monomial ? json(nullptr) : json(rec.d2);
        j["nu"] = rec.nu;
        j["lower_bound"] = rec.lower_bound;
        j["minimizers"] = pairs(rec.minimizers);
        j["j0"] = pairs(rec.j0_slice);
        j["h_exponents"] = rec.h_exponents;
        j["doubling_closed"] = rec.doubling_closed;
        j["degree_bound_violations"] = deg ? json(*deg) : json(nullptr);
        if (ledger && ledger->witness_found)
            j["ledger"] = {{"j", ledger->j}, {"t", ledger->t}, {"k", ledger->k}, {"u", ledger->u}, {"r", ledger->r},
                           {"holds", ledger->holds()}};
        else
            j["ledger"] = nullptr;
        if (val)
            j["valuation"] = {{"pairs", val->pairs_checked}, {"strict", val->strict_pairs}, {"bound_violations", val->bound_violations},
                              {"law_violations", val->law_violations}, {"holds", val->holds()}};
        else
            j["valuation"] = nullptr;
        if (g.format == "csv")
            out << "n,d1,d2,nu,lower_bound,minimizers,j0,doubling_closed\n"
                << rec.n << ',' << rec.d1 << ',' << (monomial ? "" : std::to_string(rec.d2)) << ',' << rec.nu << ','
                << rec.lower_bound << ',' << rec.minimizers.size() << ',' << rec.j0_slice.size() << ','
                << (rec.doubling_closed ? "true" : "false") << '\n';
        else
            out << j.dump() << '\n';
    }
    return ok ? kExitOk : kExitVerificationFailed;
}

int cmd_gauss(const Global& g, std::optional<int> kappa, std::optional<std::int64_t> index, std::ostream& out) {
    const auto K = field_for(g);
    if (K->n() > kMaxPadicDegree && !g.long_run)
        throw ResourceGateError("Gauss sums beyond n=" + std::to_string(kMaxPadicDegree) + " are a long run", "--long-run");
    const PadicContext P(K, kappa.value_or(K->n() + 2));
    const auto rep = verify_stickelberger_and_fourier(P, jobs_for(g));
    if (g.format == "json") {
        json j;
        j["schema"] = kRecordSchema;
        j["n"] = rep.n;
        j["kappa"] = rep.kappa;
        j["congruence_failures"] = rep.congruence_failures;
        j["valuation_mismatches"] = rep.valuation_mismatches;
        j["product_failures"] = rep.product_failures;
        j["fourier_failures"] = rep.fourier_failures;
        j["teichmuller_failures"] = rep.teichmuller_failures;
        j["inconclusive"] = rep.inconclusive;
        j["holds"] = rep.holds();
        out << j.dump() << '\n';
        if (index) {
            const auto& s = rep.sums[static_cast<std::size_t>(gauss_sum(P, *index).j)];
            json v;
            v["j"] = s.j;
            v["wt"] = std::popcount(s.j);
            v["valuation"] = s.valuation ? json(*s.valuation) : json(nullptr);
            v["conclusive"] = s.conclusive;
            v["value"] = s.value;
            out << v.dump() << '\n';
        }
    } else if (g.format == "csv") {
        out << "j,wt,valuation,conclusive\n";
        for (const auto& s : rep.sums)
            out << s.j << ',' << std::popcount(s.j) << ',' << (s.valuation ? std::to_string(*s.valuation) : "") << ','
                << (s.conclusive ? "true" : "false") << '\n';
    } else {
        out << "n=" << rep.n << " kappa=" << rep.kappa << " sums=" << rep.sums.size() << " congruence_failures="
            << rep.congruence_failures << " valuation_mismatches=" << rep.valuation_mismatches
            << " product_failures=" << rep.product_failures << " fourier_failures=" << rep.fourier_failures
            << " teichmuller_failures=" << rep.teichmuller_failures << (rep.inconclusive ? " (inconclusive precision)" : "")
            << '\n';
        if (index) {
            const auto s = gauss_sum(P, *index);
            out << "G(omega^-" << s.j << ") = " << P.to_string(s.value) << " mod 2^" << rep.kappa << ", v2 = "
                << (s.valuation ? std::to_string(*s.valuation) : ">= kappa") << ", wt2 = " << std::popcount(s.j) << '\n';
        }
    }
    return rep.holds() ? kExitOk : kExitVerificationFailed;
}

int cmd_verify(const Global& g, const std::string& suite, bool inject, std::ostream& out, std::ostream& err) {
    auto K = field_for(g);
    if (inject) K = K->corrupted_copy_for_testing();
    const auto results = run_suite(K, suite, jobs_for(g), g.long_run);
    int failed = 0, flagged = 0;
    if (g.format == "csv") out << "suite,check,status,detail\n";
    for (const auto& r : results) {
        failed += r.status == "fail";
        flagged += r.status == "flag";
        if (g.format == "json") {
            json j;
            j["suite"] = r.suite;
            j["check"] = r.check;
            j["status"] = r.status;
            j["detail"] = r.detail;
            out << j.dump() << '\n';
        } else if (g.format == "csv") {
            out << r.suite << ',' << r.check << ',' << r.status << ',' << r.detail << '\n';
        } else {
            std::string tag = r.status;
            std::transform(tag.begin(), tag.end(), tag.begin(), ::toupper);
            out << tag << ' ' << r.suite << '/' << r.check << (r.detail.empty() ? "" : ": " + r.detail) << '\n';
        }
    }
    err << "verify: " << results.size() << " checks, " << failed << " failed, " << flagged << " flagged\n";
    return failed ? kExitVerificationFailed : kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Vectorial Boolean binomials over F_2^n: bentness, Stickelberger valuations and l(n)", "vbf"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--n", g.n, "extension degree n");
    app.add_option("--modulus", g.modulus, "field modulus in hex, e.g. 0x43 (default: least irreducible)");
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--jobs", g.jobs, "worker threads (default: VBF_JOBS or all cores)");
    app.add_option("--cache", g.cache, "directory for cached analysis records");
    app.add_flag("--long-run", g.long_run, "lift the default resource gates");

    std::uint32_t d1 = 0, d2 = 0;
    int max_weight = 0, from = 4, to = 16;
    std::string method, suite = "all";
    std::optional<std::int64_t> sd1, sd2, mono, index;
    std::optional<int> kappa;
    bool valuation = false, inject = false;

    auto* field = app.add_subcommand("field", "describe the field model");
    auto* analyze = app.add_subcommand("analyze", "analyze x^d1 + x^d2");
    analyze->add_option("--d1", d1)->required();
    analyze->add_option("--d2", d2)->required();
    auto* search = app.add_subcommand("search", "exhaustive search for maximal binomials");
    search->add_option("--max-weight", max_weight, "only exponents of binary weight <= K (0: all)");
    auto* ell = app.add_subcommand("ell", "l(n): least Frobenius-orbit dependency of a field generator");
    ell->add_option("--method", method)->check(CLI::IsMember({"lattice", "brute", "both"}));
    auto* table1 = app.add_subcommand("table1", "reproduce the l(n) table");
    table1->add_option("--from", from);
    table1->add_option("--to", to);
    auto* stick = app.add_subcommand("stick", "nu, its minimizers and the gcd ledger");
    stick->add_option("--d1", sd1);
    stick->add_option("--d2", sd2);
    stick->add_option("--monomial", mono, "analyze x^d instead of a binomial");
    stick->add_flag("--valuation", valuation, "also check the 2-adic valuation law on every Walsh value");
    auto* gauss = app.add_subcommand("gauss", "2-adic Gauss sums, Stickelberger congruence and Fourier inversion");
    gauss->add_option("--kappa", kappa, "2-adic precision (default n + 2)");
    gauss->add_option("--j", index, "print one Gauss sum");
    auto* verify = app.add_subcommand("verify", "self-check suites");
    verify->add_option("--suite", suite)->check(CLI::IsMember([] {
        auto names = suite_names();
        names.push_back("all");
        return names;
    }()));
    verify->add_flag("--inject-fault", inject, "run against a deliberately corrupted multiplication table");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*field) return cmd_field(g, out);
        if (*analyze) return cmd_analyze(g, d1, d2, out);
        if (*search) return cmd_search(g, max_weight, out, err);
        if (*ell) return cmd_ell(g, method, out, err);
        if (*table1) return cmd_table1(g, from, to, out, err);
        if (*stick) return cmd_stick(g, sd1, sd2, mono, valuation, out);
        if (*gauss) return cmd_gauss(g, kappa, index, out);
        if (*verify) return cmd_verify(g, suite, inject, out, err);
    } catch (const ResourceGateError& e) {
        err << "refused: " << e.what() << "; rerun with " << e.required_flag() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConstructionError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UnsupportedError& e) {
        err << "unsupported: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace vbf
