#pragma once

#include "vbf/boolfun.hpp"
#include "vbf/stickelberger.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vbf {

/// l(n) > m, via the divisor-lattice method (cached per n).
bool ell_exceeds_m(int n);

struct MaximalityReport {
    std::uint64_t sf_size = 0;
    std::vector<Elem> nonbent;
    bool maximal = false;
    bool sf_is_subspace = false;
    /// S_F equals some subfield F_{2^d}.
    bool sf_is_subfield = false;
    bool sf_equals_subfield = false;  // S_F = F_{2^m}
    /// #S_F >= 2^m, and maximal implies an m-dimensional subspace.
    bool subspace_criterion_holds = false;
    /// Checked when l(n) > m, F commutes with Frobenius and F is maximal.
    std::optional<bool> subfield_assertion_holds;
    std::string path;  // "kernel" or "wht"
};

/// Needs even n. Uses kernel ranks for quadratic binomials, the WHT otherwise.
MaximalityReport maximality_check(const VectorialFn& F, unsigned jobs = 0, bool allow_large = false);

struct FamilyMember {
    std::string family;   // "pott", "pott-i0", "cor-pott", "qua", "hu", "hu-contrast"
    int i = 0;
    VectorialFn fn;
    /// Verdict the family asserts; absent when only measured.
    std::optional<bool> expected_maximal;
};

struct FamilyResult {
    FamilyMember member;
    bool measured_maximal = false;
    bool sf_equals_subfield = false;
    bool agrees = true;
    /// cor-pott only: x^{1+2^{m-i}} + x^{2^{m-i}+2^m} composed with x^{2^{m+i}}.
    std::optional<bool> witness_holds;
};

std::vector<FamilyMember> family_catalog(const FieldPtr& K);
std::vector<FamilyResult> run_family_catalog(const FieldPtr& K, unsigned jobs = 0);

struct StructureReport {
    bool applicable = false;
    std::string skip_reason;
    std::uint64_t s = 0;
    bool s_divides_sub = false;          // s | 2^m - 1
    bool zero_column_plus = false;       // W_{F_a}(0) = 2^m for a outside F_{2^m}
    bool zero_column_mod_s = false;      // W_{F_a}(0) = 1 mod s for every a
    bool difference_divisible = false;   // (2^m - 1) | (d2 - d1)
    bool s_equals_gcd_d1 = false;        // s = gcd(d1, 2^m - 1)
    std::optional<GcdLedger> ledger;
    bool holds() const {
        return !applicable || (s_divides_sub && zero_column_plus && zero_column_mod_s && difference_divisible &&
                               s_equals_gcd_d1 && ledger && ledger->holds());
    }
};

/// zero_column: W_{F_a}(0) per a. rec: the nu record of (d1, d2).
StructureReport structure_checks(const VectorialFn& F, bool maximal, const std::vector<std::int32_t>& zero_column,
                                 const StickelbergerRecord& rec);

struct Fingerprint {
    std::map<std::int64_t, std::uint64_t> walsh_multiset;
    std::map<int, std::uint64_t> diff_spectrum;
    std::uint64_t image_size = 0;
    bool operator==(const Fingerprint&) const = default;
};
Fingerprint fingerprint(const VectorialFn& F, unsigned jobs = 0);

/// G(x) = c2 F(c1 x^{2^j1})^{2^j2} + c3 x^{2^j3}
struct Witness {
    Elem c1 = 1, c2 = 1, c3 = 0;
    int j1 = 0, j2 = 0, j3 = 0;
    /// "c1=0x.. c2=0x.. c3=0x.. j1=.. j2=.. j3=.."
    std::string describe() const;
};

/// Searches the restricted transform group above for G in terms of F.
std::optional<Witness> find_witness(const VectorialFn& F, const VectorialFn& G);
bool witness_maps(const VectorialFn& F, const VectorialFn& G, const Witness& w);

struct EquivalenceReport {
    /// Walsh |W| multisets and DDT spectra agree (both EA invariants).
    bool consistent = false;
    /// Image sizes agree (an affine-equivalence invariant only).
    bool image_equal = false;
    std::optional<Witness> witness;
    /// A witness together with a fingerprint difference would contradict invariance.
    bool sound = true;
    std::string verdict() const { return consistent ? "consistent" : "distinguished"; }
};
EquivalenceReport equivalence_fingerprint(const VectorialFn& F, const VectorialFn& G, bool search_witness = true,
                                          unsigned jobs = 0);

struct ClassVerdict {
    std::string label = "unclassified";  // "monomial-class", "binomial-class", "unclassified"
    std::string member;                  // canonical representative matched
    std::optional<int> l;
    std::optional<Witness> witness;
};
/// Matches a maximal F against x^{2^m+1} and x^{2^l+1} + x^{2^l+2^m}, 0 <= l < m.
ClassVerdict classify_maximal(const VectorialFn& F, unsigned jobs = 0);

struct BoundCheck {
    std::string name;
    bool applicable = false;
    std::string reason;         // why inapplicable
    __int128 lhs = 0, rhs = 0;  // holds iff lhs >= rhs (or lhs <= rhs for "<=")
    std::string relation = ">=";
    bool holds = false;
};

struct BoundInputs {
    const VectorialFn* F = nullptr;
    const SpectralSummary* spectral = nullptr;
    const DiffReport* diff = nullptr;
    const ImageReport* image = nullptr;
    bool maximal = false;
    bool ell_exceeds_m = false;
};
std::vector<BoundCheck> bounds_report(const BoundInputs& in);

struct SearchOptions {
    int max_weight = 0;  // 0: no filter
    unsigned jobs = 0;
    bool allow_large = false;
};

struct SearchHit {
    std::uint32_t d1 = 0, d2 = 0;
    bool maximal = false;
    std::string path;
};

/// Canonical representative of (d1, d2) under doubling mod N and swapping: the least sorted pair.
std::pair<std::uint32_t, std::uint32_t> canonical_pair(std::uint32_t d1, std::uint32_t d2, int n);

/// Every canonical pair d1 < d2, in ascending order, with its maximality verdict.
std::vector<SearchHit> search_binomials(const FieldPtr& K, const SearchOptions& opts);

}  // namespace vbf
