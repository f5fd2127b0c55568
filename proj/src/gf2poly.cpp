#include "vbf/gf2poly.hpp"

#include "vbf/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <map>

namespace vbf {

Gf2Poly Gf2Poly::monomial(int k) {
    if (k < 0 || k > 63) throw UsageError("monomial degree out of range");
    return Gf2Poly{std::uint64_t{1} << k};
}

Gf2Poly Gf2Poly::x_pow_minus_one(int n) { return monomial(n) + one(); }

int Gf2Poly::degree() const { return bits_ == 0 ? -1 : 63 - std::countl_zero(bits_); }

Gf2Poly operator*(Gf2Poly a, Gf2Poly b) {
    if (a.is_zero() || b.is_zero()) return Gf2Poly{};
    if (a.degree() + b.degree() > 63) throw UsageError("F2[x] product exceeds degree 63");
    std::uint64_t r = 0, x = a.bits_, y = b.bits_;
    while (y) {
        if (y & 1u) r ^= x;
        y >>= 1;
        x <<= 1;
    }
    return Gf2Poly{r};
}

std::strong_ordering operator<=>(Gf2Poly a, Gf2Poly b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    return a.bits_ <=> b.bits_;
}

std::pair<Gf2Poly, Gf2Poly> Gf2Poly::divmod(Gf2Poly a, Gf2Poly b) {
    if (b.is_zero()) throw DomainError("division by the zero polynomial");
    const int db = b.degree();
    std::uint64_t q = 0, r = a.bits_;
    for (int dr = a.degree(); dr >= db; dr = Gf2Poly{r}.degree()) {
        q |= std::uint64_t{1} << (dr - db);
        r ^= b.bits_ << (dr - db);
    }
    return {Gf2Poly{q}, Gf2Poly{r}};
}

Gf2Poly Gf2Poly::gcd(Gf2Poly a, Gf2Poly b) {
    while (!b.is_zero()) {
        a = a % b;
        std::swap(a, b);
    }
    return a;
}

Gf2Poly Gf2Poly::mulmod(Gf2Poly a, Gf2Poly b, Gf2Poly f) {
    // Shift-and-add with reduction after every step keeps degrees below deg f.
    const int df = f.degree();
    if (df < 1) return Gf2Poly{};
    a = a % f;
    b = b % f;
    const std::uint64_t top = std::uint64_t{1} << df;
    std::uint64_t r = 0, x = a.bits_, y = b.bits_;
    while (y) {
        if (y & 1u) r ^= x;
        y >>= 1;
        x <<= 1;
        if (x & top) x ^= f.bits_;
    }
    return Gf2Poly{r};
}

Gf2Poly Gf2Poly::powmod(Gf2Poly a, std::uint64_t e, Gf2Poly f) {
    Gf2Poly result = one() % f, base = a % f;
    while (e) {
        if (e & 1u) result = mulmod(result, base, f);
        base = mulmod(base, base, f);
        e >>= 1;
    }
    return result;
}

Gf2Poly Gf2Poly::derivative() const {
    // d/dx x^i = i x^{i-1}; only odd i survive in characteristic 2.
    return Gf2Poly{(bits_ >> 1) & 0x5555555555555555ull};
}

namespace {

// x^(2^k) mod f
Gf2Poly frobenius_power_of_x(int k, Gf2Poly f) {
    Gf2Poly r = Gf2Poly::x() % f;
    for (int i = 0; i < k; ++i) r = Gf2Poly::mulmod(r, r, f);
    return r;
}

// Square root of a polynomial whose derivative vanishes (only even powers present).
Gf2Poly sqrt_even(Gf2Poly f) {
    std::uint64_t r = 0;
    for (int i = 0; i <= f.degree(); i += 2)
        if (f.coeff(i)) r |= std::uint64_t{1} << (i / 2);
    return Gf2Poly{r};
}

// Splits a squarefree product of irreducibles of common degree d.
void equal_degree_split(Gf2Poly f, int d, std::vector<Gf2Poly>& out) {
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    // Deterministic sweep over candidate polynomials a; the trace map
    // a + a^2 + ... + a^(2^(d-1)) is 0 or 1 modulo each factor, so some a splits f.
    for (std::uint64_t cand = 2; cand < (std::uint64_t{1} << f.degree()); ++cand) {
        Gf2Poly a{cand}, t = a, acc = a;
        for (int i = 1; i < d; ++i) {
            t = Gf2Poly::mulmod(t, t, f);
            acc = acc + t;
        }
        Gf2Poly g = Gf2Poly::gcd(f, acc);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, out);
            equal_degree_split(f / g, d, out);
            return;
        }
    }
    throw ConstructionError("equal-degree factorization failed to split " + f.to_string());
}

// Squarefree f -> irreducible factors.
void factor_squarefree(Gf2Poly f, std::vector<Gf2Poly>& out) {
    Gf2Poly rest = f;
    for (int d = 1; 2 * d <= rest.degree(); ++d) {
        Gf2Poly xp = frobenius_power_of_x(d, rest);
        Gf2Poly g = Gf2Poly::gcd(rest, xp + Gf2Poly::x());
        if (g.degree() > 0) {
            equal_degree_split(g, d, out);
            rest = rest / g;
        }
    }
    if (rest.degree() > 0) out.push_back(rest);
}

void factor_rec(Gf2Poly f, int mult, std::map<std::uint64_t, int>& acc) {
    if (f.degree() < 1) return;
    Gf2Poly df = f.derivative();
    if (df.is_zero()) {
        factor_rec(sqrt_even(f), 2 * mult, acc);
        return;
    }
    Gf2Poly g = Gf2Poly::gcd(f, df);
    Gf2Poly squarefree_part = f / g;
    std::vector<Gf2Poly> irr;
    factor_squarefree(squarefree_part, irr);
    for (auto p : irr) acc[p.bits()] += mult;
    // g carries every repeated factor with multiplicity reduced by one (or the
    // full multiplicity for factors whose exponent is even).
    factor_rec(g, mult, acc);
}

}  // namespace

bool Gf2Poly::is_irreducible() const {
    const int n = degree();
    if (n < 1) return false;
    if (n == 1) return true;
    if (!coeff(0)) return false;
    if (frobenius_power_of_x(n, *this) != x() % *this) return false;
    for (auto p : prime_factors(static_cast<std::uint64_t>(n))) {
        Gf2Poly h = frobenius_power_of_x(n / static_cast<int>(p), *this) + x();
        if (gcd(*this, h).degree() != 0) return false;
    }
    return true;
}

std::string Gf2Poly::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        if (!coeff(i)) continue;
        if (!s.empty()) s += "+";
        if (i == 0)
            s += "1";
        else if (i == 1)
            s += "x";
        else
            s += "x^" + std::to_string(i);
    }
    return s;
}

std::string Gf2Poly::to_hex() const {
    char buf[24];
    std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(bits_));
    return buf;
}

std::vector<Gf2Factor> factor(Gf2Poly f) {
    if (f.is_zero()) throw DomainError("cannot factor the zero polynomial");
    std::map<std::uint64_t, int> acc;
    factor_rec(f, 1, acc);
    std::vector<Gf2Factor> out;
    for (auto [bits, mult] : acc) out.push_back({Gf2Poly{bits}, mult});
    std::sort(out.begin(), out.end(), [](const Gf2Factor& a, const Gf2Factor& b) { return a.poly < b.poly; });
    return out;
}

Gf2Poly least_irreducible(int n) {
    if (n < 1 || n > 62) throw UsageError("degree out of range");
    const std::uint64_t lo = std::uint64_t{1} << n;
    for (std::uint64_t v = lo; v < (lo << 1); ++v)
        if (Gf2Poly{v}.is_irreducible()) return Gf2Poly{v};
    throw ConstructionError("no irreducible polynomial found");
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        ps.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

}  // namespace vbf
