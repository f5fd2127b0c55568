#pragma once

#include "vbf/gf2poly.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

namespace vbf {

/// Element of F_{2^n}: coefficient bitvector in the polynomial basis 1, x, ..., x^{n-1}.
using Elem = std::uint32_t;

class FieldContext;
using FieldPtr = std::shared_ptr<const FieldContext>;

/// Smallest and largest supported extension degree.
inline constexpr int kMinDegree = 2;
inline constexpr int kMaxDegree = 30;
/// Log/antilog tables are built up to this degree; above it multiplication is carry-less.
inline constexpr int kMaxTableDegree = 20;

/// Immutable description of F_{2^n} = F_2[x]/(modulus).
///
/// Multiplication goes through log/antilog tables for n <= 20 and through a
/// carry-less multiply with reduction otherwise. All methods are const and
/// thread-safe.
class FieldContext {
public:
    /// Throws UsageError when n is outside [2, 30] and ConstructionError when the
    /// modulus is reducible or of the wrong degree.
    FieldContext(int n, Gf2Poly modulus);

    int n() const { return n_; }
    /// n/2 for even n.
    std::optional<int> m() const { return n_ % 2 == 0 ? std::optional<int>(n_ / 2) : std::nullopt; }
    /// Multiplicative group order 2^n - 1.
    std::uint32_t order() const { return order_; }
    /// Number of elements 2^n.
    std::uint32_t size() const { return order_ + 1; }
    Gf2Poly modulus() const { return modulus_; }
    bool has_tables() const { return !exp_.empty(); }

    static Elem add(Elem a, Elem b) { return a ^ b; }
    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        if (has_tables()) return exp_[log_[a] + log_[b]];
        return clmul_reduce(a, b);
    }
    Elem square(Elem a) const { return mul(a, a); }
    /// x^e with 0^0 = 1 and 0^e = 0 for e > 0; exponents of nonzero bases are
    /// reduced mod 2^n - 1. Throws DomainError for 0 to a negative power.
    Elem pow(Elem x, std::int64_t e) const;
    /// Throws DomainError for 0.
    Elem inv(Elem x) const;
    /// x^(2^k)
    Elem frobenius(Elem x, int k = 1) const;
    /// Absolute trace Tr_{2^n/2}(x) in {0, 1}.
    int trace(Elem x) const { return parity(x & trace_mask_); }

    /// Bit i of the result is Tr(b * x^i), so Tr(b*y) = parity(trace_dual(b) & y).
    Elem trace_dual(Elem b) const;

    /// Least primitive element (generator of the multiplicative group) by integer value.
    Elem primitive() const { return primitive_; }
    /// primitive()^k, k reduced mod 2^n - 1.
    Elem primitive_pow(std::int64_t k) const;
    /// primitive()^k for 0 <= k < 2(2^n - 1) straight from the antilog table (requires has_tables()).
    Elem antilog(std::uint32_t k) const { return exp_[k]; }
    /// Discrete log base primitive(); throws DomainError for 0.
    std::uint32_t log(Elem x) const;

    /// x lies in F_{2^d} (requires d | n).
    bool in_subfield(Elem x, int d) const { return frobenius(x, d) == x; }
    /// Elements of F_{2^d}, ascending.
    std::vector<Elem> subfield_elements(int d) const;
    /// F_2(g) = F_{2^n}: g lies in no maximal proper subfield.
    bool is_field_generator(Elem g) const;

    bool is_valid(Elem x) const { return x <= order_; }

    /// Copy with a deliberately broken multiplication table, for fault-injection tests.
    FieldPtr corrupted_copy_for_testing() const;

    static int parity(std::uint32_t v) { return __builtin_parity(v); }

private:
    Elem clmul_reduce(Elem a, Elem b) const;

    int n_;
    std::uint32_t order_;
    Gf2Poly modulus_;
    std::uint32_t trace_mask_ = 0;
    Elem primitive_ = 0;
    std::vector<Elem> trace_dual_basis_;  // trace_dual(x^j), j < n
    std::vector<Elem> trace_dual_table_;  // n <= kMaxTableDegree
    std::vector<Elem> exp_;               // 2 * order_ entries
    std::vector<std::uint32_t> log_;
};

/// Builds F_{2^n} over the registry default modulus.
FieldPtr make_field(int n);
/// Builds F_{2^n} over an explicit modulus.
FieldPtr make_field(int n, Gf2Poly modulus);

/// Contents of the checked-in modulus table: lines "n=<int> modulus=0x<hex>".
std::string_view builtin_modulus_registry();
/// Parses registry text; throws UsageError on malformed lines.
std::map<int, Gf2Poly> parse_modulus_registry(std::string_view text);
/// Registry modulus for n: the least irreducible of degree n.
Gf2Poly default_modulus(int n);
/// Renders a registry covering [lo, hi] with freshly computed least irreducibles.
std::string render_modulus_registry(int lo, int hi);

/// F_2-linear field isomorphism between two models of F_{2^n}, fixed by sending
/// the source generator x to the least root of the source modulus in the target.
class FieldIsomorphism {
public:
    FieldIsomorphism(const FieldContext& from, const FieldContext& to);
    Elem operator()(Elem x) const;
    Elem root() const { return basis_images_.size() > 1 ? basis_images_[1] : 1; }

private:
    std::vector<Elem> basis_images_;
};

}  // namespace vbf
