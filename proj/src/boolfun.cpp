#include "vbf/boolfun.hpp"

#include "vbf/errors.hpp"
#include "vbf/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <numeric>
#include <set>

namespace vbf {

namespace {

void check_exponent(std::int64_t d, std::uint32_t order, const char* name) {
    if (d < 1 || d >= static_cast<std::int64_t>(order))
        throw UsageError(std::string(name) + "=" + std::to_string(d) + " outside [1, " + std::to_string(order - 1) + "]");
}

void require_spectrum_budget(int n, bool allow_large) {
    if (n > kMaxDefaultSpectrumDegree && !allow_large)
        throw ResourceGateError("full Walsh spectrum for n=" + std::to_string(n) + " exceeds the default budget (n <= 16)",
                                "--long-run");
}

bool row_is_bent(std::span<const std::int32_t> row, int n) {
    const std::int32_t t = std::int32_t{1} << (n / 2);
    for (auto w : row)
        if (w != t && w != -t) return false;
    return true;
}

}  // namespace

FrobeniusOrbits frobenius_orbits(const FieldContext& K, bool reduce) {
    FrobeniusOrbits o;
    const std::uint32_t q = K.size();
    if (!reduce) {
        o.reps.resize(q);
        std::iota(o.reps.begin(), o.reps.end(), Elem{0});
        o.sizes.assign(q, 1);
        return o;
    }
    for (Elem a = 0; a < q; ++a) {
        Elem y = K.square(a);
        std::uint32_t size = 1;
        bool least = true;
        while (y != a) {
            if (y < a) {
                least = false;
                break;
            }
            y = K.square(y);
            ++size;
        }
        if (least) {
            o.reps.push_back(a);
            o.sizes.push_back(size);
        }
    }
    return o;
}

std::vector<Elem> frobenius_orbit(const FieldContext& K, Elem a) {
    std::vector<Elem> out{a};
    for (Elem y = K.square(a); y != a; y = K.square(y)) out.push_back(y);
    return out;
}

std::uint64_t gcd3(std::uint64_t a, std::uint64_t b, std::uint64_t c) { return std::gcd(std::gcd(a, b), c); }

VectorialFn VectorialFn::binomial(FieldPtr field, std::int64_t d1, std::int64_t d2) {
    const auto N = field->order();
    check_exponent(d1, N, "d1");
    check_exponent(d2, N, "d2");
    if (d1 == d2) throw UsageError("d1 = d2 gives the zero function");
    VectorialFn f;
    f.field_ = std::move(field);
    f.kind_ = Kind::Binomial;
    f.d1_ = static_cast<std::uint32_t>(d1);
    f.d2_ = static_cast<std::uint32_t>(d2);
    f.label_ = "x^" + std::to_string(d1) + "+x^" + std::to_string(d2);
    if (f.field_->n() <= kMaxTableFnDegree) {
        f.table_.resize(f.field_->size());
        for (Elem x = 0; x < f.field_->size(); ++x) f.table_[x] = f.evaluate(x);
    }
    f.finish();
    return f;
}

VectorialFn VectorialFn::monomial(FieldPtr field, std::int64_t d) {
    check_exponent(d, field->order(), "d");
    std::vector<Elem> t(field->size());
    for (Elem x = 0; x < field->size(); ++x) t[x] = field->pow(x, d);
    auto f = from_table(std::move(field), std::move(t), "x^" + std::to_string(d));
    f.monomial_ = static_cast<std::uint32_t>(d);
    f.d1_ = static_cast<std::uint32_t>(d);
    return f;
}

VectorialFn VectorialFn::from_table(FieldPtr field, std::vector<Elem> table, std::string label) {
    if (table.size() != field->size()) throw UsageError("truth table size must be 2^n");
    for (Elem v : table)
        if (!field->is_valid(v)) throw UsageError("truth table entry outside the field");
    VectorialFn f;
    f.field_ = std::move(field);
    f.kind_ = Kind::Table;
    f.table_ = std::move(table);
    f.label_ = label.empty() ? "table" : std::move(label);
    f.finish();
    return f;
}

Elem VectorialFn::evaluate(Elem x) const {
    if (kind_ == Kind::Binomial) return field_->pow(x, d1_) ^ field_->pow(x, d2_);
    return table_[x];
}

void VectorialFn::finish() {
    if (kind_ == Kind::Binomial) {
        frobenius_commuting_ = true;  // power maps commute with squaring
        return;
    }
    frobenius_commuting_ = true;
    for (Elem x = 0; x < field_->size(); ++x)
        if (table_[field_->square(x)] != field_->square(table_[x])) {
            frobenius_commuting_ = false;
            break;
        }
}

std::span<const Elem> VectorialFn::table() const {
    if (table_.empty())
        throw ResourceGateError("truth table not materialized for n=" + std::to_string(field_->n()), "--long-run");
    return table_;
}

void fwht(std::span<std::int32_t> v) {
    const std::size_t len = v.size();
    for (std::size_t h = 1; h < len; h <<= 1)
        for (std::size_t i = 0; i < len; i += h << 1)
            for (std::size_t j = i; j < i + h; ++j) {
                const std::int32_t x = v[j], y = v[j + h];
                v[j] = x + y;
                v[j + h] = x - y;
            }
}

void walsh_row_into(const VectorialFn& F, Elem a, WalshScratch& scratch) {
    const FieldContext& K = F.field();
    const std::uint32_t q = K.size();
    scratch.spectrum.resize(q);
    scratch.row.resize(q);
    const Elem mask = K.trace_dual(a);
    if (F.has_table()) {
        auto t = F.table();
        for (Elem x = 0; x < q; ++x) scratch.spectrum[x] = 1 - 2 * FieldContext::parity(mask & t[x]);
    } else {
        for (Elem x = 0; x < q; ++x) scratch.spectrum[x] = 1 - 2 * FieldContext::parity(mask & F(x));
    }
    fwht(scratch.spectrum);
    for (Elem b = 0; b < q; ++b) scratch.row[b] = scratch.spectrum[K.trace_dual(b)];
}

std::vector<std::int32_t> walsh_row(const VectorialFn& F, Elem a) {
    WalshScratch s;
    walsh_row_into(F, a, s);
    return std::move(s.row);
}

std::optional<int> plateau_amount(std::span<const std::int32_t> row, int n) {
    std::int64_t amp = 0;
    for (auto w : row) {
        const std::int64_t v = w < 0 ? -static_cast<std::int64_t>(w) : w;
        if (v == 0) continue;
        if (amp == 0)
            amp = v;
        else if (v != amp)
            return std::nullopt;
    }
    if (amp == 0 || !std::has_single_bit(static_cast<std::uint64_t>(amp))) return std::nullopt;
    const int e = std::countr_zero(static_cast<std::uint64_t>(amp));
    return 2 * e - n;
}

namespace {

struct RowStats {
    bool bent = false;
    std::optional<int> plateau;
    std::int64_t max_abs = 0;
    unsigned __int128 fourth = 0;
    std::int32_t w0 = 0;
    std::map<std::int64_t, std::uint64_t> abs_counts;
};

}  // namespace

SpectralSummary spectral_summary(const VectorialFn& F, const SpectralOptions& opts) {
    const FieldContext& K = F.field();
    const int n = K.n();
    require_spectrum_budget(n, opts.allow_large);
    const std::uint32_t q = K.size();
    const FrobeniusOrbits orb = frobenius_orbits(K, F.commutes_with_frobenius());

    std::vector<RowStats> stats(orb.reps.size());
    const unsigned jobs = resolve_jobs(opts.jobs);
    std::vector<WalshScratch> scratch(jobs);
    parallel_for(orb.reps.size(), jobs, [&](std::size_t lo, std::size_t hi, unsigned w) {
        for (std::size_t i = lo; i < hi; ++i) {
            walsh_row_into(F, orb.reps[i], scratch[w]);
            const auto& row = scratch[w].row;
            RowStats& st = stats[i];
            st.bent = n % 2 == 0 && row_is_bent(row, n);
            st.plateau = plateau_amount(row, n);
            st.w0 = row[0];
            for (auto v : row) {
                const std::int64_t a = v < 0 ? -static_cast<std::int64_t>(v) : v;
                st.max_abs = std::max(st.max_abs, a);
                const auto sq = static_cast<unsigned __int128>(a * a);
                st.fourth += sq * sq;
                ++st.abs_counts[a];
            }
        }
    });

    SpectralSummary s;
    s.n = n;
    s.bent_classification_supported = n % 2 == 0;
    s.plateau.assign(q, std::nullopt);
    s.sos.assign(q, 0);
    s.zero_column.assign(q, 0);
    s.is_plateaued_fn = true;
    std::vector<bool> nonbent(q, false);
    const int m = n / 2;
    for (std::size_t i = 0; i < orb.reps.size(); ++i) {
        const RowStats& st = stats[i];
        const Elem rep = orb.reps[i];
        const auto members = F.commutes_with_frobenius() ? frobenius_orbit(K, rep) : std::vector<Elem>{rep};
        const std::uint64_t nu = static_cast<std::uint64_t>(st.fourth >> n);
        for (Elem a : members) {
            s.plateau[a] = st.plateau;
            s.sos[a] = nu;
            s.zero_column[a] = st.w0;
            nonbent[a] = !st.bent;
        }
        if (rep == 0) continue;
        s.max_abs_walsh = std::max(s.max_abs_walsh, st.max_abs);
        s.sos_total += static_cast<unsigned __int128>(nu) * members.size();
        if (!st.plateau) s.is_plateaued_fn = false;
        for (auto [v, c] : st.abs_counts) s.abs_walsh_multiset[v] += c * members.size();
        if (s.bent_classification_supported && K.in_subfield(rep, m)) {
            s.max_sq_subfield = std::max(s.max_sq_subfield, st.max_abs * st.max_abs);
            if (st.w0 != 0) s.T += static_cast<std::int64_t>(members.size());
        }
    }
    if (s.bent_classification_supported)
        for (Elem a = 0; a < q; ++a)
            if (nonbent[a]) s.nonbent.push_back(a);
    s.nonlinearity = (std::int64_t{1} << (n - 1)) - s.max_abs_walsh / 2;
    return s;
}

std::vector<Elem> nonbent_set_wht(const VectorialFn& F, unsigned jobs) {
    const FieldContext& K = F.field();
    if (K.n() % 2) throw UsageError("bent classification needs even n");
    const FrobeniusOrbits orb = frobenius_orbits(K, F.commutes_with_frobenius());
    jobs = resolve_jobs(jobs);
    std::vector<char> flag(orb.reps.size(), 0);
    std::vector<WalshScratch> scratch(jobs);
    parallel_for(orb.reps.size(), jobs, [&](std::size_t lo, std::size_t hi, unsigned w) {
        for (std::size_t i = lo; i < hi; ++i) {
            walsh_row_into(F, orb.reps[i], scratch[w]);
            flag[i] = !row_is_bent(scratch[w].row, K.n());
        }
    });
    std::vector<Elem> out;
    for (std::size_t i = 0; i < orb.reps.size(); ++i)
        if (flag[i]) {
            if (F.commutes_with_frobenius()) {
                auto members = frobenius_orbit(K, orb.reps[i]);
                out.insert(out.end(), members.begin(), members.end());
            } else {
                out.push_back(orb.reps[i]);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t nonbent_count_upto(const VectorialFn& F, std::uint64_t limit, unsigned jobs) {
    const FieldContext& K = F.field();
    if (K.n() % 2) throw UsageError("bent classification needs even n");
    const FrobeniusOrbits orb = frobenius_orbits(K, F.commutes_with_frobenius());
    jobs = resolve_jobs(jobs);
    std::atomic<std::uint64_t> count{0};
    std::vector<WalshScratch> scratch(jobs);
    parallel_for(orb.reps.size(), jobs, [&](std::size_t lo, std::size_t hi, unsigned w) {
        for (std::size_t i = lo; i < hi; ++i) {
            if (count.load(std::memory_order_relaxed) > limit) return;
            walsh_row_into(F, orb.reps[i], scratch[w]);
            if (!row_is_bent(scratch[w].row, K.n())) count.fetch_add(orb.sizes[i], std::memory_order_relaxed);
        }
    });
    return std::min<std::uint64_t>(count.load(), limit + 1);
}

SubspaceCheck check_subspace(std::span<const Elem> S) {
    SubspaceCheck r;
    if (S.empty()) return r;
    const std::set<Elem> members(S.begin(), S.end());
    // Greedy echelon basis keyed by leading bit.
    std::map<int, Elem, std::greater<>> pivots;
    std::vector<Elem> basis;
    for (Elem v : members) {
        Elem x = v;
        for (auto& [bit, p] : pivots)
            if ((x >> bit) & 1u) x ^= p;
        if (x == 0) continue;
        const int lead = 31 - std::countl_zero(x);
        for (auto& [bit, p] : pivots)
            if ((p >> lead) & 1u) p ^= x;
        pivots[lead] = x;
        basis.push_back(v);
    }
    // S lies in its span; equality of sizes together with 0 in S means closure.
    const bool closed = members.count(0) && members.size() == (std::size_t{1} << basis.size());
    r.is_subspace = closed;
    if (closed) r.basis = std::move(basis);
    return r;
}

DiffReport diff_report(const VectorialFn& F, unsigned jobs) {
    const FieldContext& K = F.field();
    const std::uint32_t q = K.size();
    auto table = F.table();
    const FrobeniusOrbits orb = frobenius_orbits(K, F.commutes_with_frobenius());
    struct RowInfo {
        int max = 0;
        bool zero_hit = false, even = true, sum_ok = true;
        std::map<int, std::uint64_t> counts;
    };
    std::vector<RowInfo> info(orb.reps.size());
    jobs = resolve_jobs(jobs);
    std::vector<std::vector<std::uint32_t>> buf(jobs, std::vector<std::uint32_t>(q));
    parallel_for(orb.reps.size(), jobs, [&](std::size_t lo, std::size_t hi, unsigned w) {
        auto& cnt = buf[w];
        for (std::size_t i = lo; i < hi; ++i) {
            const Elem a = orb.reps[i];
            if (a == 0) continue;
            std::fill(cnt.begin(), cnt.end(), 0u);
            for (Elem x = 0; x < q; ++x) ++cnt[table[x ^ a] ^ table[x]];
            RowInfo& r = info[i];
            std::uint64_t sum = 0;
            for (Elem b = 0; b < q; ++b) {
                const auto c = cnt[b];
                sum += c;
                r.max = std::max<int>(r.max, static_cast<int>(c));
                if (c & 1u) r.even = false;
                ++r.counts[static_cast<int>(c)];
            }
            r.zero_hit = cnt[0] > 0;
            r.sum_ok = sum == q;
        }
    });
    DiffReport d;
    d.ddt_row_max.assign(q, 0);
    for (std::size_t i = 0; i < orb.reps.size(); ++i) {
        const Elem rep = orb.reps[i];
        if (rep == 0) continue;
        const RowInfo& r = info[i];
        const auto members = F.commutes_with_frobenius() ? frobenius_orbit(K, rep) : std::vector<Elem>{rep};
        for (Elem a : members) {
            d.ddt_row_max[a] = r.max;
            if (r.zero_hit) d.delta_set.push_back(a);
        }
        d.delta = std::max(d.delta, r.max);
        d.entries_even = d.entries_even && r.even;
        d.rows_sum_to_size = d.rows_sum_to_size && r.sum_ok;
        for (auto [v, c] : r.counts) d.spectrum[v] += c * members.size();
    }
    std::sort(d.delta_set.begin(), d.delta_set.end());
    d.is_apn = d.delta == 2;
    return d;
}

ImageReport image_report(const VectorialFn& F) {
    const FieldContext& K = F.field();
    const std::uint32_t q = K.size();
    auto table = F.table();
    std::vector<std::uint32_t> pre(q, 0);
    for (Elem x = 0; x < q; ++x) ++pre[table[x]];
    ImageReport r;
    for (auto c : pre) {
        if (c) ++r.image_size;
        r.collisions += static_cast<std::uint64_t>(c) * c;
    }
    r.zero_preimage = pre[0];
    const std::uint64_t q2 = static_cast<std::uint64_t>(q) * q;
    r.collision_bound_holds = r.collisions * r.image_size >= q2;
    if (F.is_binomial()) {
        const std::uint64_t s = gcd3(F.d1(), F.d2(), K.order());
        r.s = s;
        if (auto m = K.m(); m && s > 1) {
            const std::uint64_t sub = (std::uint64_t{1} << *m) - 1;
            if (sub % s == 0) {
                std::set<Elem> classes;
                for (std::uint64_t i = 1; i <= (std::uint64_t{1} << *m); ++i)
                    classes.insert(K.pow(F(K.primitive_pow(static_cast<std::int64_t>(i))), static_cast<std::int64_t>(sub / s)));
                r.c = classes.size();
                r.formula_size = sub * *r.c / s + 1;
                r.agrees = *r.formula_size == r.image_size;
            }
        }
    }
    return r;
}

ExplicitImageCheck explicit_image_check(const FieldPtr& field, int l) {
    const auto m = field->m();
    if (!m) throw UsageError("explicit image formula needs even n");
    if (l < 0 || l >= *m) throw UsageError("l must satisfy 0 <= l < m");
    ExplicitImageCheck c;
    c.n = field->n();
    c.l = l;
    const std::int64_t d1 = (std::int64_t{1} << l) + 1;
    const std::int64_t d2 = (std::int64_t{1} << l) + (std::int64_t{1} << *m);
    auto F = VectorialFn::binomial(field, d1, d2);
    c.direct = image_report(F).image_size;
    const std::uint64_t big = (std::uint64_t{1} << c.n) - (std::uint64_t{1} << *m);
    c.gcd_value = std::gcd((std::uint64_t{1} << l) + 1, (std::uint64_t{1} << *m) - 1);
    c.gcd_formula = 1 + big / c.gcd_value;
    // v_2(0) is infinite, so l = 0 always lands in the first case.
    const int v2m = std::countr_zero(static_cast<unsigned>(*m));
    const bool first_case = l == 0 || v2m <= std::countr_zero(static_cast<unsigned>(l));
    c.dichotomy_formula = first_case ? big + 1 : big / 3 + 1;
    c.gcd_formula_holds = c.direct == c.gcd_formula;
    c.dichotomy_holds = c.direct == c.dichotomy_formula;
    return c;
}

}  // namespace vbf
