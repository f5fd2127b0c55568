#pragma once

#include "vbf/gf2n.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vbf {

/// Truth tables are materialized up to this degree; larger binomials evaluate on demand.
inline constexpr int kMaxTableFnDegree = 24;
/// Full Walsh spectra beyond this degree need an explicit opt-in.
inline constexpr int kMaxDefaultSpectrumDegree = 16;

/// A map F_{2^n} -> F_{2^n}: either the binomial x^d1 + x^d2 or an arbitrary truth table.
class VectorialFn {
public:
    enum class Kind { Binomial, Table };

    /// Exponents must lie in [1, 2^n - 2] and differ (UsageError otherwise).
    static VectorialFn binomial(FieldPtr field, std::int64_t d1, std::int64_t d2);
    /// Table-kind power map x^d, labelled "x^d".
    static VectorialFn monomial(FieldPtr field, std::int64_t d);
    static VectorialFn from_table(FieldPtr field, std::vector<Elem> table, std::string label = {});

    const FieldContext& field() const { return *field_; }
    const FieldPtr& field_ptr() const { return field_; }
    Kind kind() const { return kind_; }
    bool is_binomial() const { return kind_ == Kind::Binomial; }
    /// Binomial exponents, or (d, 0) for monomial tables; zero otherwise.
    std::uint32_t d1() const { return d1_; }
    std::uint32_t d2() const { return d2_; }
    std::optional<std::uint32_t> monomial_exponent() const { return monomial_; }
    const std::string& label() const { return label_; }

    Elem operator()(Elem x) const { return table_.empty() ? evaluate(x) : table_[x]; }
    bool has_table() const { return !table_.empty(); }
    /// Throws ResourceGateError when the table was not materialized.
    std::span<const Elem> table() const;

    /// F(x^2) = F(x)^2 for every x.
    bool commutes_with_frobenius() const { return frobenius_commuting_; }

private:
    VectorialFn() = default;
    Elem evaluate(Elem x) const;
    void finish();

    FieldPtr field_;
    Kind kind_ = Kind::Table;
    std::uint32_t d1_ = 0, d2_ = 0;
    std::optional<std::uint32_t> monomial_;
    std::vector<Elem> table_;
    std::string label_;
    bool frobenius_commuting_ = false;
};

struct FrobeniusOrbits {
    std::vector<Elem> reps;             // least element of each orbit, ascending
    std::vector<std::uint32_t> sizes;
};
/// Orbits of x -> x^2; with reduce = false every element is its own representative.
FrobeniusOrbits frobenius_orbits(const FieldContext& K, bool reduce = true);
/// a, a^2, a^4, ... until it cycles.
std::vector<Elem> frobenius_orbit(const FieldContext& K, Elem a);

/// In-place unnormalized Walsh-Hadamard transform; size must be a power of two.
void fwht(std::span<std::int32_t> v);

/// W_{F_a}(b) = sum_x (-1)^{Tr(a F(x)) + Tr(b x)} for every b, indexed by b.
std::vector<std::int32_t> walsh_row(const VectorialFn& F, Elem a);

/// Reusable buffers for repeated row computations on one thread.
struct WalshScratch {
    std::vector<std::int32_t> spectrum;
    std::vector<std::int32_t> row;
};
/// Fills scratch.row with W_{F_a}(b), indexed by b.
void walsh_row_into(const VectorialFn& F, Elem a, WalshScratch& scratch);

/// Plateau amount k when the row takes values in {0, +-2^{(n+k)/2}}.
std::optional<int> plateau_amount(std::span<const std::int32_t> row, int n);

struct SpectralOptions {
    unsigned jobs = 0;
    /// Required for n > 16.
    bool allow_large = false;
};

struct SpectralSummary {
    int n = 0;
    /// False for odd n: S_F, T and subfield maxima are then left empty.
    bool bent_classification_supported = false;
    /// S_F = {a : F_a is not bent}, ascending.
    std::vector<Elem> nonbent;
    /// N_F = 2^{n-1} - max_{a != 0, b} |W| / 2.
    std::int64_t nonlinearity = 0;
    std::int64_t max_abs_walsh = 0;
    /// Plateau amount per component a (a = 0 included).
    std::vector<std::optional<int>> plateau;
    /// Every nonzero component is plateaued.
    bool is_plateaued_fn = false;
    /// Sum-of-square indicator nu(F_u) = 2^{-n} sum_v W^4, per u.
    std::vector<std::uint64_t> sos;
    /// sum over u != 0 of nu(F_u).
    unsigned __int128 sos_total = 0;
    /// W_{F_a}(0) per a.
    std::vector<std::int32_t> zero_column;
    /// #{u in F_{2^m}^* : W_{F_u}(0) != 0}
    std::int64_t T = 0;
    /// max over u in F_{2^m}^*, v of W_{F_u}(v)^2.
    std::int64_t max_sq_subfield = 0;
    /// |W| value -> multiplicity over all a != 0 and all b.
    std::map<std::int64_t, std::uint64_t> abs_walsh_multiset;
};

/// One pass over every component; rows of a and a^2 are related by a
/// permutation of b when F commutes with Frobenius, so only orbit
/// representatives are transformed in that case.
SpectralSummary spectral_summary(const VectorialFn& F, const SpectralOptions& opts = {});

/// S_F via the WHT with a short-circuiting bent test per component.
std::vector<Elem> nonbent_set_wht(const VectorialFn& F, unsigned jobs = 0);
/// #S_F, but stops counting once it exceeds limit (returns limit + 1 then).
std::uint64_t nonbent_count_upto(const VectorialFn& F, std::uint64_t limit, unsigned jobs = 0);

struct SubspaceCheck {
    bool is_subspace = false;
    std::vector<Elem> basis;
};
/// True iff S contains 0 and is closed under addition; returns a basis when true.
SubspaceCheck check_subspace(std::span<const Elem> S);

struct DiffReport {
    /// max_{a != 0, b} #{x : F(x+a) + F(x) = b}
    int delta = 0;
    /// Delta = {x + y : x != y, F(x) = F(y)}, ascending.
    std::vector<Elem> delta_set;
    /// max_b delta_{a,b} per a (entry 0 unused).
    std::vector<int> ddt_row_max;
    bool is_apn = false;
    bool entries_even = true;
    bool rows_sum_to_size = true;
    /// DDT entry value -> multiplicity over a != 0.
    std::map<int, std::uint64_t> spectrum;
};
DiffReport diff_report(const VectorialFn& F, unsigned jobs = 0);

struct ImageReport {
    std::uint64_t image_size = 0;
    /// gcd(d1, d2, 2^n - 1) for binomials.
    std::optional<std::uint64_t> s;
    /// #{F(g^i)^{(2^m-1)/s} : 1 <= i <= 2^m} for a fixed primitive g; needs s | 2^m - 1.
    std::optional<std::uint64_t> c;
    /// (2^m - 1) c / s + 1
    std::optional<std::uint64_t> formula_size;
    std::optional<bool> agrees;
    /// #{(x, y) : F(x) = F(y)}
    std::uint64_t collisions = 0;
    /// collisions >= 2^{2n} / #Im(F)
    bool collision_bound_holds = false;
    /// #F^{-1}(0)
    std::uint64_t zero_preimage = 0;
};
ImageReport image_report(const VectorialFn& F);

/// Image size of x^{2^l+1} + x^{2^l+2^m} against the gcd formula and its {1, 3} case split.
struct ExplicitImageCheck {
    int n = 0, l = 0;
    std::uint64_t direct = 0;
    std::uint64_t gcd_value = 0;          // gcd(2^l + 1, 2^m - 1)
    std::uint64_t gcd_formula = 0;        // 1 + (2^n - 2^m) / gcd
    std::uint64_t dichotomy_formula = 0;  // from the v_2(m) vs v_2(l) split
    bool gcd_formula_holds = false;
    bool dichotomy_holds = false;
};
ExplicitImageCheck explicit_image_check(const FieldPtr& field, int l);

std::uint64_t gcd3(std::uint64_t a, std::uint64_t b, std::uint64_t c);

}  // namespace vbf
