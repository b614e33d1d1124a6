#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dellns/finite_verify.hpp"
#include "dellns/symfunc.hpp"

using namespace dellns;

namespace {

void expect_all_pass(const Report& rep) {
    for (const CaseResult& c : rep.cases) {
        CAPTURE(c.input);
        CAPTURE(c.layer.first);
        CAPTURE(c.layer.second);
        CHECK(c.pass);
    }
    CHECK(rep.all_pass());
}

}  // namespace

TEST_CASE("inverse application matches series inversion") {
    // D^{-1} applied to a vector, then D applied back, returns the vector
    for (std::size_t nvars : {1u, 2u}) {
        SeriesOp d = d_n_generating(nvars, 1);
        auto [a, b] = d.support();
        XPoly f = power_sum(nvars, 1) + monomial_symmetric(nvars, {1, 1});
        const int lo = -3, hi = 3;
        OmegaUSeries<XPoly> h = apply_inverse(d, f, lo - b, hi - a);
        OmegaUSeries<XPoly> back = apply_series(d, h);
        OmegaUSeries<XPoly> expect = OmegaUSeries<XPoly>::windowed(1, lo, hi);
        expect.set(0, 0, f);
        CHECK(back.agrees_with(expect, lo, hi));
    }
}

TEST_CASE("ordered-product factorization of the generating function") {
    expect_all_pass(verify_theorem5(1, 1, 3));
    expect_all_pass(verify_theorem5(2, 1, 3));
    expect_all_pass(verify_theorem5(3, 1, 2));
}

TEST_CASE("sum form of the ratio generating function") {
    expect_all_pass(verify_theorem6(1, 1, 2));
    expect_all_pass(verify_theorem6(2, 1, 2));
    expect_all_pass(verify_theorem6(3, 0, 3));
}

TEST_CASE("matrix-resolvent form of the ratio generating function") {
    expect_all_pass(verify_resolvent(1, 1, 2));
    expect_all_pass(verify_resolvent(2, 1, 2));
    expect_all_pass(verify_resolvent(3, 0, 2));
}

TEST_CASE("rational exchange identity, first form") {
    expect_all_pass(verify_identity_C1(2, 10, 11));
    expect_all_pass(verify_identity_C1(3, 10, 12));
    expect_all_pass(verify_identity_C1(4, 8, 13));
    expect_all_pass(verify_identity_C1(5, 5, 14));
}

TEST_CASE("rational exchange identity, second form") {
    expect_all_pass(verify_identity_C2(2, 10, 21));
    expect_all_pass(verify_identity_C2(3, 10, 22));
    expect_all_pass(verify_identity_C2(4, 8, 23));
    expect_all_pass(verify_identity_C2(5, 5, 24));
}

TEST_CASE("commutator probe on square-free monomials") {
    expect_all_pass(squarefree_commutativity_probe(2, 1));
    expect_all_pass(squarefree_commutativity_probe(3, 1));
}
