#include "vbf/errors.hpp"
#include "vbf/gf2poly.hpp"

#include <doctest.h>

using vbf::Gf2Poly;

TEST_CASE("arithmetic basics") {
    Gf2Poly a{0b111}, b{0b11};  // x^2+x+1, x+1
    CHECK((a * b).bits() == 0b1001);  // x^3+1
    auto [q, r] = Gf2Poly::divmod(Gf2Poly{0b1001}, b);
    CHECK(q == a);
    CHECK(r.is_zero());
    CHECK(Gf2Poly::gcd(Gf2Poly{0b1001}, Gf2Poly{0b101}) == b);  // gcd(x^3+1, (x+1)^2)
    CHECK(Gf2Poly{0x13}.to_string() == "x^4+x+1");
    CHECK(Gf2Poly{0x13}.to_hex() == "0x13");
    CHECK_THROWS_AS(Gf2Poly::divmod(a, Gf2Poly{}), vbf::DomainError);
}

TEST_CASE("irreducibility agrees with trial division") {
    // Trial division by every polynomial of degree 1..deg/2.
    auto trial = [](Gf2Poly f) {
        if (f.degree() < 1) return false;
        for (std::uint64_t g = 2; Gf2Poly{g}.degree() * 2 <= f.degree(); ++g)
            if ((f % Gf2Poly{g}).is_zero()) return false;
        return true;
    };
    for (std::uint64_t v = 2; v < (1u << 11); ++v) CHECK(Gf2Poly{v}.is_irreducible() == trial(Gf2Poly{v}));
    CHECK_FALSE(Gf2Poly{0b10101}.is_irreducible());  // x^4+x^2+1 = (x^2+x+1)^2
}

TEST_CASE("factorization reassembles and yields irreducibles") {
    for (std::uint64_t v = 2; v < (1u << 12); v += 7) {
        Gf2Poly f{v};
        auto fs = vbf::factor(f);
        Gf2Poly prod = Gf2Poly::one();
        for (auto& fac : fs) {
            CHECK(fac.poly.is_irreducible());
            for (int i = 0; i < fac.multiplicity; ++i) prod = prod * fac.poly;
        }
        CHECK(prod == f);
    }
}

TEST_CASE("x^n - 1 factorizations") {
    // x^15 - 1 over F_2: x+1, x^2+x+1, three quartics.
    auto fs = vbf::factor(Gf2Poly::x_pow_minus_one(15));
    REQUIRE(fs.size() == 5);
    for (auto& f : fs) CHECK(f.multiplicity == 1);
    // x^12 - 1 = (x^3 - 1)^4 = (x+1)^4 (x^2+x+1)^4
    auto g = vbf::factor(Gf2Poly::x_pow_minus_one(12));
    REQUIRE(g.size() == 2);
    CHECK(g[0].poly == Gf2Poly{0b11});
    CHECK(g[0].multiplicity == 4);
    CHECK(g[1].poly == Gf2Poly{0b111});
    CHECK(g[1].multiplicity == 4);
}

TEST_CASE("least irreducibles") {
    CHECK(vbf::least_irreducible(4) == Gf2Poly{0x13});
    CHECK(vbf::least_irreducible(8) == Gf2Poly{0x11b});
    CHECK(vbf::prime_factors(63) == std::vector<std::uint64_t>{3, 7});
}
