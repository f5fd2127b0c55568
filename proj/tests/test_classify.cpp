#include "oracle.hpp"

#include "vbf/classify.hpp"
#include "vbf/errors.hpp"

#include <doctest.h>

#include <bit>

using namespace vbf;

namespace {

oracle::Field oracle_field(const FieldContext& K) { return {K.n(), K.modulus().bits()}; }

bool oracle_maximal(const FieldContext& K, long long d1, long long d2) {
    const auto f = oracle_field(K);
    return oracle::nonbent_set(f, oracle::binomial_table(f, d1, d2)).size() == (1u << (K.n() / 2));
}

}  // namespace

TEST_CASE("maximality of the worked instances") {
    auto K6 = make_field(6);
    auto r = maximality_check(VectorialFn::binomial(K6, 3, 10));
    CHECK(r.maximal);
    CHECK(r.sf_size == 8);
    CHECK(r.sf_is_subspace);
    CHECK(r.sf_equals_subfield);
    CHECK(r.path == "kernel");
    CHECK(r.subspace_criterion_holds);
    REQUIRE(r.subfield_assertion_holds);
    CHECK(*r.subfield_assertion_holds);

    auto K4 = make_field(4);
    auto x5 = maximality_check(VectorialFn::monomial(K4, 5));
    CHECK(x5.maximal);
    CHECK(x5.path == "wht");
    CHECK(x5.sf_equals_subfield);

    auto r24 = maximality_check(VectorialFn::binomial(K6, 3, 24));
    CHECK_FALSE(r24.maximal);
    CHECK(r24.sf_size == oracle::nonbent_set(oracle_field(*K6), oracle::binomial_table(oracle_field(*K6), 3, 24)).size());

    CHECK_THROWS_AS(maximality_check(VectorialFn::binomial(make_field(5), 3, 10)), UsageError);
}

TEST_CASE("family catalog agrees with measurement and the oracle") {
    for (int n : {4, 6, 8}) {
        auto K = make_field(n);
        for (const auto& r : run_family_catalog(K, 2)) {
            INFO(n, " ", r.member.family, " i=", r.member.i);
            CHECK(r.agrees);
            if (n <= 6 && r.member.fn.is_binomial()) CHECK(r.measured_maximal == oracle_maximal(*K, r.member.fn.d1(), r.member.fn.d2()));
            if (r.member.family == "cor-pott") {
                REQUIRE(r.witness_holds);
                CHECK(*r.witness_holds);
            }
            if (r.measured_maximal && r.member.fn.commutes_with_frobenius()) CHECK(r.sf_equals_subfield);
        }
    }
    auto K6 = make_field(6);
    CHECK_FALSE(maximality_check(VectorialFn::monomial(K6, 27)).maximal);
}

TEST_CASE("structure checks on a maximal instance with s > 1") {
    auto K = make_field(8);
    auto F = VectorialFn::binomial(K, 5, 20);
    auto sp = spectral_summary(F);
    auto rec = nu_and_minimizers(*K, 5, 20);
    auto st = structure_checks(F, true, sp.zero_column, rec);
    REQUIRE(st.applicable);
    CHECK(st.s == 5);
    CHECK(st.holds());
    REQUIRE(st.ledger);
    CHECK(st.ledger->j == 3);

    auto skipped = structure_checks(VectorialFn::binomial(make_field(6), 3, 10), true,
                                    spectral_summary(VectorialFn::binomial(make_field(6), 3, 10)).zero_column,
                                    nu_and_minimizers(*make_field(6), 3, 10));
    CHECK_FALSE(skipped.applicable);
    CHECK(skipped.skip_reason == "s = 1");
    CHECK(skipped.holds());
}

TEST_CASE("witness search and fingerprints") {
    auto K = make_field(8);
    auto mono = VectorialFn::monomial(K, 17);
    auto bin = VectorialFn::binomial(K, 5, 20);
    auto eq = equivalence_fingerprint(mono, bin, false);
    CHECK(eq.verdict() == "distinguished");
    CHECK(eq.sound);

    // A known transform of F must be recovered and verified.
    auto F = VectorialFn::binomial(K, 3, 48);
    const Elem c1 = 7, c2 = 11, c3 = 3;
    std::vector<Elem> t(K->size());
    for (Elem x = 0; x < K->size(); ++x)
        t[x] = K->mul(c2, K->frobenius(F(K->mul(c1, K->frobenius(x, 2))), 5)) ^ K->mul(c3, K->frobenius(x, 1));
    auto G = VectorialFn::from_table(K, t);
    auto w = find_witness(F, G);
    REQUIRE(w);
    CHECK(witness_maps(F, G, *w));
    auto e2 = equivalence_fingerprint(F, G);
    CHECK(e2.consistent);
    CHECK(e2.image_equal == (image_report(F).image_size == image_report(G).image_size));
}

TEST_CASE("classification of maximal instances") {
    auto K6 = make_field(6);
    auto v = classify_maximal(VectorialFn::binomial(K6, 3, 10));
    CHECK(v.label == "binomial-class");
    REQUIRE(v.l);
    CHECK(*v.l == 1);
    CHECK(v.witness);

    auto K8 = make_field(8);
    auto h = classify_maximal(VectorialFn::monomial(K8, 34));
    CHECK(h.label == "monomial-class");
    CHECK(h.witness);
}

TEST_CASE("bounds hold on maximal instances and report hypotheses") {
    for (int n : {6, 8}) {
        auto K = make_field(n);
        for (auto hit : search_binomials(K, {2, 0, false})) {
            if (!hit.maximal) continue;
            auto F = VectorialFn::binomial(K, hit.d1, hit.d2);
            auto sp = spectral_summary(F);
            auto df = diff_report(F);
            auto im = image_report(F);
            CHECK(df.delta == oracle::diff_uniformity(oracle_field(*K), oracle::binomial_table(oracle_field(*K), hit.d1, hit.d2)));
            for (const auto& b : bounds_report({&F, &sp, &df, &im, true, ell_exceeds_m(n)})) {
                INFO(n, " (", hit.d1, ",", hit.d2, ") ", b.name);
                if (b.applicable)
                    CHECK(b.holds);
                else
                    CHECK_FALSE(b.reason.empty());
            }
        }
    }
}

TEST_CASE("search over weight-2 binomials") {
    auto K = make_field(6);
    auto hits = search_binomials(K, {2, 1, false});
    std::set<std::pair<std::uint32_t, std::uint32_t>> maximal;
    for (auto& h : hits)
        if (h.maximal) maximal.insert({h.d1, h.d2});
    for (auto [a, b] : {std::pair{2u, 9u}, std::pair{3u, 10u}, std::pair{5u, 12u}}) CHECK(maximal.count(canonical_pair(a, b, 6)));
    CHECK_FALSE(maximal.count(canonical_pair(3, 24, 6)));

    // Every canonical pair against the oracle.
    for (auto& h : hits) {
        INFO(h.d1, " ", h.d2);
        CHECK(h.maximal == oracle_maximal(*K, h.d1, h.d2));
        CHECK(canonical_pair(h.d1, h.d2, 6) == std::pair{h.d1, h.d2});
    }
    auto again = search_binomials(K, {2, 4, false});
    REQUIRE(again.size() == hits.size());
    for (std::size_t i = 0; i < hits.size(); ++i) CHECK((again[i].d1 == hits[i].d1 && again[i].maximal == hits[i].maximal));

    auto all4 = search_binomials(make_field(4), {0, 2, false});
    for (auto& h : all4) CHECK(h.maximal == oracle_maximal(*make_field(4), h.d1, h.d2));

    CHECK_THROWS_AS(search_binomials(make_field(16), {0, 1, false}), ResourceGateError);
}

TEST_CASE("canonical pair") {
    CHECK(canonical_pair(10, 3, 6) == std::pair{3u, 10u});
    CHECK(canonical_pair(6, 20, 6) == std::pair{3u, 10u});
    CHECK(canonical_pair(40, 12, 6) == std::pair{3u, 10u});
}
