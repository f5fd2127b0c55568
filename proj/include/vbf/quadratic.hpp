#pragma once

#include "vbf/boolfun.hpp"

#include <utility>
#include <vector>

namespace vbf {

/// x -> sum_i c_i x^{2^i}
struct LinearizedPoly {
    std::vector<Elem> coeffs;  // size n

    Elem apply(const FieldContext& K, Elem x) const;
    bool is_zero() const;
    /// dim_F2 of the kernel of the induced map.
    int kernel_dim(const FieldContext& K) const;
};

/// wt_2 of d mod N equals 1 or 2 for both exponents.
bool is_quadratic_binomial(const VectorialFn& F);

/// (u, v) with d = 2^u + 2^v, u > v; (u, u) for weight-1 exponents.
std::pair<int, int> split_exponent(std::uint32_t d, int n);

/// L_a with Tr(a(F(x+z) + F(x) + F(z))) = Tr(z L_a(x)). Throws UnsupportedError
/// for exponents of 2-adic weight above 2.
LinearizedPoly derive_La(const VectorialFn& F, Elem a);

/// B_a(x, z) = F_a(x + z) + F_a(x) + F_a(z), straight from the definition.
int bilinear_form(const VectorialFn& F, Elem a, Elem x, Elem z);

struct QuadraticScan {
    std::vector<Elem> nonbent;     // ascending
    std::vector<int> kernel_dim;   // per a; equals the plateau amount of F_a
};

/// Kernel rank of L_a for every a.
QuadraticScan nonbent_set_quadratic(const VectorialFn& F, unsigned jobs = 0);

/// #S_F through kernel ranks, stopping once it exceeds limit (returns limit + 1 then).
std::uint64_t quadratic_nonbent_count_upto(const VectorialFn& F, std::uint64_t limit, unsigned jobs = 0);

}  // namespace vbf
