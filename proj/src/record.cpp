#include "vbf/record.hpp"

#include "vbf/errors.hpp"

#include <json.hpp>

#include <sstream>

namespace vbf {

using json = nlohmann::ordered_json;

namespace {

// Integers that fit in int64 are numbers, anything wider stays a string.
json integer_value(const std::string& dec) {
    if (dec.empty()) return nullptr;
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(dec, &pos);
        if (pos == dec.size()) return v;
    } catch (const std::out_of_range&) {
    }
    return dec;
}

std::string integer_text(const json& j) {
    if (j.is_null()) return {};
    if (j.is_string()) return j.get<std::string>();
    return std::to_string(j.get<long long>());
}

template <class T>
json opt(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> get_opt(const json& j) {
    return j.is_null() ? std::nullopt : std::optional<T>(j.get<T>());
}

json to_json(const AnalysisRecord& r) {
    json j;
    j["schema"] = r.schema;
    j["tool_version"] = r.tool_version;
    j["n"] = r.n;
    j["modulus"] = r.modulus;
    j["d1"] = r.d1;
    j["d2"] = r.d2;
    j["label"] = r.label;
    j["maximal"] = r.maximal;
    j["sf_size"] = r.sf_size;
    j["sf_is_subspace"] = r.sf_is_subspace;
    j["sf_is_subfield"] = r.sf_is_subfield;
    j["sf_equals_subfield"] = r.sf_equals_subfield;
    j["nonlinearity"] = r.nonlinearity;
    j["delta"] = r.delta;
    j["image_size"] = r.image_size;
    j["c"] = opt(r.c);
    j["s"] = opt(r.s);
    j["nu"] = r.nu;
    if (r.ledger) {
        json l;
        l["j"] = r.ledger->j;
        l["t"] = r.ledger->t;
        l["k"] = r.ledger->k;
        l["u"] = r.ledger->u;
        l["r"] = r.ledger->r;
        l["holds"] = r.ledger->holds;
        j["ledger"] = l;
    } else {
        j["ledger"] = nullptr;
    }
    json bounds = json::array();
    for (const auto& b : r.bound_checks) {
        json e;
        e["name"] = b.name;
        e["applicable"] = b.applicable;
        e["relation"] = b.relation;
        e["lhs"] = integer_value(b.lhs);
        e["rhs"] = integer_value(b.rhs);
        e["holds"] = opt(b.holds);
        e["reason"] = b.reason;
        bounds.push_back(std::move(e));
    }
    j["bound_checks"] = std::move(bounds);
    j["class_label"] = r.class_label;
    j["class_member"] = r.class_member;
    j["witness"] = opt(r.witness);
    j["plateaued"] = r.plateaued;
    j["T"] = r.T;
    j["ell_n"] = r.ell_n;
    j["ell_exceeds_m"] = r.ell_exceeds_m;
    json checks = json::object();
    for (const auto& [k, v] : r.checks) checks[k] = v;
    j["checks"] = std::move(checks);
    return j;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

template <class T>
std::string opt_text(const std::optional<T>& v) {
    return v ? std::to_string(*v) : std::string{};
}

}  // namespace

bool AnalysisRecord::ok() const {
    for (const auto& [k, v] : checks)
        if (v == "fail") return false;
    return true;
}

std::string to_json_line(const AnalysisRecord& r) { return to_json(r).dump(); }

AnalysisRecord record_from_json(const std::string& line) {
    AnalysisRecord r;
    try {
        const json j = json::parse(line);
        if (j.at("schema").get<int>() != kRecordSchema) throw UsageError("unknown record schema");
        r.tool_version = j.at("tool_version").get<std::string>();
        r.n = j.at("n").get<int>();
        r.modulus = j.at("modulus").get<std::string>();
        r.d1 = j.at("d1").get<std::uint32_t>();
        r.d2 = j.at("d2").get<std::uint32_t>();
        r.label = j.at("label").get<std::string>();
        r.maximal = j.at("maximal").get<bool>();
        r.sf_size = j.at("sf_size").get<std::uint64_t>();
        r.sf_is_subspace = j.at("sf_is_subspace").get<bool>();
        r.sf_is_subfield = j.at("sf_is_subfield").get<bool>();
        r.sf_equals_subfield = j.at("sf_equals_subfield").get<bool>();
        r.nonlinearity = j.at("nonlinearity").get<std::int64_t>();
        r.delta = j.at("delta").get<int>();
        r.image_size = j.at("image_size").get<std::uint64_t>();
        r.c = get_opt<std::uint64_t>(j.at("c"));
        r.s = get_opt<std::uint64_t>(j.at("s"));
        r.nu = j.at("nu").get<int>();
        if (const auto& l = j.at("ledger"); !l.is_null())
            r.ledger = LedgerRecord{l.at("j").get<std::uint32_t>(), l.at("t").get<std::uint64_t>(), l.at("k").get<std::int64_t>(),
                                    l.at("u").get<std::uint64_t>(), l.at("r").get<std::uint64_t>(), l.at("holds").get<bool>()};
        for (const auto& e : j.at("bound_checks")) {
            BoundRecord b;
            b.name = e.at("name").get<std::string>();
            b.applicable = e.at("applicable").get<bool>();
            b.relation = e.at("relation").get<std::string>();
            b.lhs = integer_text(e.at("lhs"));
            b.rhs = integer_text(e.at("rhs"));
            b.holds = get_opt<bool>(e.at("holds"));
            b.reason = e.at("reason").get<std::string>();
            r.bound_checks.push_back(std::move(b));
        }
        r.class_label = j.at("class_label").get<std::string>();
        r.class_member = j.at("class_member").get<std::string>();
        r.witness = get_opt<std::string>(j.at("witness"));
        r.plateaued = j.at("plateaued").get<bool>();
        r.T = j.at("T").get<std::int64_t>();
        r.ell_n = j.at("ell_n").get<int>();
        r.ell_exceeds_m = j.at("ell_exceeds_m").get<bool>();
        for (const auto& [k, v] : j.at("checks").items()) r.checks.emplace_back(k, v.get<std::string>());
    } catch (const json::exception& e) {
        throw UsageError(std::string("malformed record: ") + e.what());
    }
    return r;
}

std::string csv_header() {
    return "schema,tool_version,n,modulus,d1,d2,label,maximal,sf_size,sf_is_subspace,sf_is_subfield,sf_equals_subfield,"
           "nonlinearity,delta,image_size,c,s,nu,ledger_j,ledger_t,ledger_k,ledger_u,ledger_r,ledger_holds,"
           "bounds_applicable,bounds_held,class_label,class_member,plateaued,T,ell_n,ell_exceeds_m,checks_failed";
}

std::string to_csv_row(const AnalysisRecord& r) {
    int applicable = 0, held = 0;
    for (const auto& b : r.bound_checks)
        if (b.applicable) {
            ++applicable;
            held += b.holds.value_or(false);
        }
    std::string failed;
    for (const auto& [k, v] : r.checks)
        if (v == "fail") failed += (failed.empty() ? "" : ";") + k;
    std::ostringstream os;
    os << r.schema << ',' << r.tool_version << ',' << r.n << ',' << r.modulus << ',' << r.d1 << ',' << r.d2 << ','
       << r.label << ',' << yes_no(r.maximal) << ',' << r.sf_size << ',' << yes_no(r.sf_is_subspace) << ','
       << yes_no(r.sf_is_subfield) << ',' << yes_no(r.sf_equals_subfield) << ',' << r.nonlinearity << ',' << r.delta
       << ',' << r.image_size << ',' << opt_text(r.c) << ',' << opt_text(r.s) << ',' << r.nu << ',';
    if (r.ledger)
        os << r.ledger->j << ',' << r.ledger->t << ',' << r.ledger->k << ',' << r.ledger->u << ',' << r.ledger->r << ','
           << yes_no(r.ledger->holds) << ',';
    else
        os << ",,,,,,";
    os << applicable << ',' << held << ',' << r.class_label << ',' << r.class_member << ',' << yes_no(r.plateaued) << ','
       << r.T << ',' << r.ell_n << ',' << yes_no(r.ell_exceeds_m) << ',' << failed;
    return os.str();
}

std::string to_text(const AnalysisRecord& r) {
    std::ostringstream os;
    os << "F = " << r.label << " over F_2^" << r.n << " (modulus " << r.modulus << ")\n";
    os << "  #S_F = " << r.sf_size << (r.maximal ? " (maximal)" : "") << ", subspace " << yes_no(r.sf_is_subspace)
       << ", subfield " << yes_no(r.sf_is_subfield) << ", S_F = F_2^" << r.n / 2 << " " << yes_no(r.sf_equals_subfield) << "\n";
    os << "  N_F = " << r.nonlinearity << ", delta = " << r.delta << ", #Im = " << r.image_size;
    if (r.s) os << ", s = " << *r.s;
    if (r.c) os << ", c = " << *r.c;
    os << "\n  nu = " << r.nu << ", T = " << r.T << ", plateaued " << yes_no(r.plateaued) << ", l(n) = " << r.ell_n
       << (r.ell_exceeds_m ? " > m" : " <= m") << "\n";
    if (r.ledger)
        os << "  ledger: j = " << r.ledger->j << ", t = " << r.ledger->t << ", k = " << r.ledger->k << ", u = " << r.ledger->u
           << ", r = " << r.ledger->r << ", holds " << yes_no(r.ledger->holds) << "\n";
    os << "  class: " << r.class_label;
    if (!r.class_member.empty()) os << " (" << r.class_member << ")";
    os << "\n";
    if (r.witness) os << "  witness: " << *r.witness << "\n";
    for (const auto& b : r.bound_checks) {
        os << "  bound " << b.name << ": ";
        if (b.applicable)
            os << b.lhs << ' ' << b.relation << ' ' << b.rhs << (b.holds.value_or(false) ? " holds" : " VIOLATED");
        else
            os << "inapplicable (" << b.reason << ")";
        os << "\n";
    }
    for (const auto& [k, v] : r.checks) os << "  check " << k << ": " << v << "\n";
    return os.str();
}

}  // namespace vbf
