#pragma once

#include "vbf/boolfun.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace vbf {

/// Hamming weight of j mod 2^n - 1 (wt2(0) = 0).
int wt2(std::int64_t j, int n);

/// (x mod N) in [0, N)
std::uint64_t mod_n(std::int64_t x, std::uint64_t N);

using IndexPair = std::pair<std::uint32_t, std::uint32_t>;

struct StickelbergerRecord {
    int n = 0;
    std::uint32_t d1 = 0, d2 = 0;
    /// nu = min of V(j1, j2) = wt(j1) + wt(j2) + wt(-d1 j1 - d2 j2) over (j1, j2) != (0, 0)
    int nu = 0;
    /// ceil(n / max(wt(d1), wt(d2)))
    int lower_bound = 0;
    /// J, ascending.
    std::vector<IndexPair> minimizers;
    /// J^0 = {(j1, j2) in J : d1 j1 + d2 j2 = 0 mod N}
    std::vector<IndexPair> j0_slice;
    /// Exponents with coefficient 1 in sum_{J^0} x^{j1 + j2} (integer exponents), ascending.
    std::vector<std::uint64_t> h_exponents;
    /// {j1 + j2 : (j1, j2) in J^0}
    std::set<std::uint64_t> sumset;
    bool doubling_closed = false;
    bool monomial_mode = false;
};

struct NuOptions {
    unsigned jobs = 0;
    /// Fix j2 = 0 and drop the d2 term.
    bool monomial = false;
};

/// Exhaustive scan of V over Z_N x Z_N minus the origin. d2 is ignored in monomial mode.
StickelbergerRecord nu_and_minimizers(const FieldContext& K, std::int64_t d1, std::int64_t d2, const NuOptions& opts = {});

/// g_a(b) = sum_J a^{j1+j2} b^{(-d1 j1 - d2 j2)_N} with 0^0 = 1.
Elem g_value(const FieldContext& K, const StickelbergerRecord& rec, Elem a, Elem b);

struct ValuationReport {
    std::uint64_t pairs_checked = 0;
    std::uint64_t strict_pairs = 0;        // v2(W) > nu
    std::uint64_t bound_violations = 0;    // v2(W) < nu
    std::uint64_t law_violations = 0;      // strictness disagrees with g_a(b) = 0
    std::uint64_t non_binary_g = 0;        // g_a(b) outside F_2
    std::vector<std::string> samples;      // first few violations
    bool holds() const { return bound_violations == 0 && law_violations == 0 && non_binary_g == 0; }
};

/// Checks v2(W_{F_a}(b)) >= nu and the strictness criterion for all a != 0, b.
ValuationReport verify_valuation_law(const VectorialFn& F, const StickelbergerRecord& rec, unsigned jobs = 0,
                                     bool allow_large = false);

struct HPolyReport {
    std::vector<std::uint64_t> exponents;   // integer exponents, ascending
    std::uint64_t degree = 0;
    bool compared = false;                  // false when the hypotheses gate is closed
    std::string skip_reason;
    bool identity_holds = false;            // h = sum_{i=1}^{2^m} x^{i(2^m-1)}
    bool degree_holds = false;              // deg h = 2^n - 2^m
    bool sumset_contains = false;           // V contains every i(2^m-1)
    bool reduced_matches = false;           // same polynomial after reducing exponents mod N
};

/// hypotheses: F maximal, both exponents of 2-adic weight 2, and ell(n) > m.
HPolyReport h_polynomial(const StickelbergerRecord& rec, bool hypotheses);

struct GcdLedger {
    bool witness_found = false;
    std::uint32_t j = 0;
    std::vector<std::uint32_t> all_witnesses;
    std::uint64_t s = 0, t = 0, u = 0, r = 0;
    std::int64_t k = 0;
    bool k_integral = false;       // (2^m-1)/t divides d2 - d1
    bool a1_holds = false;         // (d2-d1) j = d2 (2^m-1) mod N
    bool u_r_coprime = false;
    std::uint64_t gcd_d_n = 0;     // gcd(d2 - d1, N)
    std::uint64_t gcd_formula = 0; // ((2^m-1)/t) u r
    bool gcd_identity = false;
    bool holds() const { return witness_found && k_integral && a1_holds && u_r_coprime && gcd_identity; }
};

/// Needs even n; picks the least j in [0, 2^m-1] with (j, 2^m-1-j) in J.
GcdLedger gcd_ledger(const FieldContext& K, const StickelbergerRecord& rec);

/// Count of 0 < j < N, (2^m+1) not dividing j, with wt2((2^m-1) j) != m.
std::uint64_t log_ladder_violations(int n);

/// Count of (j1, j2) with (j1+j2)_N >= 2^n - 2^m + 1 and V(j1, j2) <= m.
std::uint64_t degree_bound_violations(int n, std::int64_t d1, std::int64_t d2);

}  // namespace vbf
