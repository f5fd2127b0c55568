#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace vbf {

/// Polynomial over F_2 of degree at most 63, coefficient i stored in bit i.
class Gf2Poly {
public:
    constexpr Gf2Poly() = default;
    constexpr explicit Gf2Poly(std::uint64_t bits) : bits_(bits) {}

    static constexpr Gf2Poly zero() { return Gf2Poly{0}; }
    static constexpr Gf2Poly one() { return Gf2Poly{1}; }
    static constexpr Gf2Poly x() { return Gf2Poly{2}; }
    /// x^k
    static Gf2Poly monomial(int k);
    /// x^n - 1
    static Gf2Poly x_pow_minus_one(int n);

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool is_zero() const { return bits_ == 0; }
    /// -1 for the zero polynomial.
    int degree() const;
    bool coeff(int i) const { return (bits_ >> i) & 1u; }

    friend constexpr Gf2Poly operator+(Gf2Poly a, Gf2Poly b) { return Gf2Poly{a.bits_ ^ b.bits_}; }
    friend constexpr Gf2Poly operator-(Gf2Poly a, Gf2Poly b) { return a + b; }
    /// Throws UsageError when the product degree exceeds 63.
    friend Gf2Poly operator*(Gf2Poly a, Gf2Poly b);
    friend Gf2Poly operator%(Gf2Poly a, Gf2Poly b) { return divmod(a, b).second; }
    friend Gf2Poly operator/(Gf2Poly a, Gf2Poly b) { return divmod(a, b).first; }
    friend constexpr bool operator==(Gf2Poly a, Gf2Poly b) = default;
    /// Orders by degree first, then by coefficient bits.
    friend std::strong_ordering operator<=>(Gf2Poly a, Gf2Poly b);

    /// (quotient, remainder); divisor must be nonzero.
    static std::pair<Gf2Poly, Gf2Poly> divmod(Gf2Poly a, Gf2Poly b);
    static Gf2Poly gcd(Gf2Poly a, Gf2Poly b);
    static Gf2Poly mulmod(Gf2Poly a, Gf2Poly b, Gf2Poly f);
    static Gf2Poly powmod(Gf2Poly a, std::uint64_t e, Gf2Poly f);
    Gf2Poly derivative() const;
    bool divides(Gf2Poly other) const { return !is_zero() && (other % *this).is_zero(); }

    /// Rabin's irreducibility test.
    bool is_irreducible() const;

    /// "x^4+x+1"
    std::string to_string() const;
    /// "0x13"
    std::string to_hex() const;

private:
    std::uint64_t bits_ = 0;
};

/// Irreducible factor with multiplicity.
struct Gf2Factor {
    Gf2Poly poly;
    int multiplicity = 0;
};

/// Complete factorization of a nonzero polynomial into monic irreducibles:
/// squarefree split, then distinct-degree, then equal-degree (trace splitting).
/// Factors are sorted ascending; units are dropped.
std::vector<Gf2Factor> factor(Gf2Poly f);

/// Least irreducible polynomial of exact degree n by integer value.
Gf2Poly least_irreducible(int n);

/// Distinct prime divisors of n, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace vbf
