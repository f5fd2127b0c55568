#pragma once

#include "vbf/gf2n.hpp"
#include "vbf/gf2poly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vbf {

struct EllGamma {
    int ell = 0;
    /// Monic annihilator of least degree: f(sigma) gamma = 0.
    Gf2Poly f;
};

/// Rank of gamma, gamma^2, gamma^4, ... and the first linear dependency among them.
EllGamma ell_gamma(const FieldContext& K, Elem gamma);

/// sum_i f_i gamma^{2^i}
Elem apply_sigma_poly(const FieldContext& K, Gf2Poly f, Elem gamma);

enum class EllMethod { Brute, Lattice };

struct EllOptions {
    unsigned jobs = 0;
    /// Required for brute force at n >= 22.
    bool allow_large = false;
    /// Keep l(gamma) per orbit representative (brute force only).
    bool keep_per_gamma = false;
};

struct EllRecord {
    int n = 0;
    int ell_n = 0;
    EllMethod method = EllMethod::Brute;
    std::map<Elem, int> per_gamma;
    /// A generator attaining the minimum (brute force only).
    std::optional<Elem> witness;
    /// Annihilator of the witness (brute) or the first qualifying divisor (lattice).
    Gf2Poly f_gamma;
};

EllRecord ell_n(const FieldContext& K, EllMethod method, const EllOptions& opts = {});

/// Irreducible factorization of x^n - 1 through x^n - 1 = (x^b - 1)^{2^a}, n = 2^a b.
std::vector<Gf2Factor> factor_x_n_minus_one(int n);

/// Monic divisors of x^n - 1, ascending by degree then value.
std::vector<Gf2Poly> divisors_x_n_minus_one(int n);

/// #{gamma : f_gamma = f and F_2(gamma) = F_{2^n}} for a divisor f of x^n - 1,
/// by inclusion-exclusion over kernel dimensions.
std::uint64_t generators_with_annihilator(int n, Gf2Poly f);

struct SufficientCondition {
    bool guaranteed = false;
    std::string reason;
    /// Lower bound on l(n) implied by the condition.
    std::optional<int> bound;
};

/// n = 2p with 2 primitive mod the odd prime p, or n a power of two.
SufficientCondition sufficient_condition(int n);

/// Published l(n) for even n in [4, 26].
const std::map<int, int>& expected_table1();

}  // namespace vbf
