#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dellns/param.hpp"
#include "dellns/series.hpp"

using namespace dellns;

using S = OmegaUSeries<ParamScalar>;

namespace {

// theta series in the scalar argument a: sum_n w^{(n^2-n)/2} (-u a)^n ...
S theta_of(int order, const ParamScalar& a) {
    return ptheta_series<ParamScalar>(order, [&](int n) {
        ParamScalar p = ParamScalar::one();
        ParamScalar base = n >= 0 ? a : a.inv();
        for (int i = 0; i < std::abs(n); ++i) p *= base;
        return p;
    });
}

std::mt19937 rng(777);

S random_entire(int order, int max_terms) {
    std::uniform_int_distribution<int> nt(0, max_terms);
    std::uniform_int_distribution<int> kk(0, order);
    std::uniform_int_distribution<int> nn(-3, 3);
    std::uniform_int_distribution<int> cf(-4, 4);
    std::uniform_int_distribution<int> eq(-2, 2);
    S s = S::entire(order);
    int n = nt(rng);
    for (int i = 0; i < n; ++i)
        s.add_to(kk(rng), nn(rng), qs(eq(rng)) * ParamScalar(Rat(cf(rng))));
    return s;
}

// invertible: unit constant term, omega^0 layer in n >= 0
S random_invertible(int order, int max_terms) {
    std::uniform_int_distribution<int> nt(0, max_terms);
    std::uniform_int_distribution<int> kk(0, order);
    std::uniform_int_distribution<int> nn(-3, 3);
    std::uniform_int_distribution<int> cf(-4, 4);
    std::uniform_int_distribution<int> et(-2, 2);
    S s = S::one(order, ParamScalar::one());
    int n = nt(rng);
    for (int i = 0; i < n; ++i) {
        int k = kk(rng), m = nn(rng);
        if (k == 0) m = std::abs(m);
        if (k == 0 && m == 0) continue;
        s.add_to(k, m, ts(et(rng)) * ParamScalar(Rat(cf(rng))));
    }
    return s;
}

}  // namespace

TEST_CASE("theta weights") {
    auto w0 = ptheta_weights(0);
    REQUIRE(w0.size() == 2);
    CHECK(w0[0].n == 0);
    CHECK(w0[0].k == 0);
    CHECK(w0[0].sign == 1);
    CHECK(w0[1].n == 1);
    CHECK(w0[1].k == 0);
    CHECK(w0[1].sign == -1);

    auto w1 = ptheta_weights(1);
    REQUIRE(w1.size() == 4);  // n = -1, 0, 1, 2
    CHECK(w1[0].n == -1);
    CHECK(w1[0].k == 1);
    CHECK(w1[0].sign == -1);
    CHECK(w1[3].n == 2);
    CHECK(w1[3].k == 1);
    CHECK(w1[3].sign == 1);

    auto w3 = ptheta_weights(3);
    bool has_3 = false, has_m2 = false;
    for (auto& w : w3) {
        if (w.n == 3) {
            has_3 = true;
            CHECK(w.k == 3);
            CHECK(w.sign == -1);
        }
        if (w.n == -2) {
            has_m2 = true;
            CHECK(w.k == 3);
            CHECK(w.sign == 1);
        }
    }
    CHECK(has_3);
    CHECK(has_m2);
}

TEST_CASE("theta series at low order") {
    // order 0: 1 - u
    S t0 = theta_of(0, ParamScalar::one());
    CHECK(t0.coeff(0, 0) == ParamScalar::one());
    CHECK(t0.coeff(0, 1) == -ParamScalar::one());
    // order 1: 1 - u + omega*(u^2 - u^-1)
    S t1 = theta_of(1, ParamScalar::one());
    CHECK(t1.coeff(1, 2) == ParamScalar::one());
    CHECK(t1.coeff(1, -1) == -ParamScalar::one());
    CHECK(t1.coeff(1, 0).is_zero());
    CHECK(t1.coeff(1, 1).is_zero());
    // argument q: coefficient of u^n picks up q^n
    S tq = theta_of(1, qs(1));
    CHECK(tq.coeff(0, 1) == -qs(1));
    CHECK(tq.coeff(1, 2) == qs(2));
    CHECK(tq.coeff(1, -1) == -qs(-1));
}

TEST_CASE("series arithmetic windows") {
    S a = S::entire(2);
    a.set(0, 0, ParamScalar::one());
    a.set(1, -1, qs(1));
    S w = S::windowed(2, -2, 3);
    w.set(0, 2, ts(1));
    w.set(2, -2, qs(-1));

    S p = a * w;
    CHECK(!p.is_entire());
    // a has support [-1, 0], so validity shrinks to [-2 + 0, 3 + (-1)]
    CHECK(p.window_lo() == -2);
    CHECK(p.window_hi() == 2);
    CHECK(p.coeff(0, 2) == ts(1));
    CHECK(p.coeff(1, 1) == qs(1) * ts(1));
    CHECK(p.coeff(2, -2) == qs(-1));
    CHECK_THROWS(p.coeff(0, 3));

    S ww = S::windowed(2, 0, 1);
    CHECK_THROWS(w * ww);

    // omega truncation in products
    S b = S::entire(2);
    b.set(2, 0, ParamScalar::one());
    S c = S::entire(2);
    c.set(1, 0, ParamScalar::one());
    CHECK((b * c).is_zero());  // omega^3 truncated away

    // restriction
    S r = w.restricted(-1, 2);
    CHECK(r.window_lo() == -1);
    CHECK(r.window_hi() == 2);
    CHECK(r.coeff(0, 2) == ts(1));
    CHECK_THROWS(w.restricted(-3, 3));
}

TEST_CASE("entire ring laws (randomized)") {
    for (int it = 0; it < 60; ++it) {
        S a = random_entire(2, 5), b = random_entire(2, 5), c = random_entire(2, 5);
        CHECK((a * b).agrees_with(b * a, -9, 9));
        CHECK(((a * b) * c).agrees_with(a * (b * c), -12, 12));
        CHECK((a * (b + c)).agrees_with(a * b + a * c, -9, 9));
        CHECK((a + b).agrees_with(b + a, -9, 9));
    }
}

TEST_CASE("series inversion round trip") {
    for (int order = 0; order <= 3; ++order) {
        for (int it = 0; it < 25; ++it) {
            S s = random_invertible(order, 5);
            const int lo = -6, hi = 6;
            // margin so the product is still exact on [lo, hi]
            auto [a, b] = s.support();
            S inv = series_invert(s, lo - std::max(0, b), hi - std::min(0, a),
                                  ParamScalar::one());
            S prod = s * inv;
            S one = S::one(order, ParamScalar::one());
            CHECK(prod.agrees_with(one, lo, hi));
        }
    }
}

TEST_CASE("theta inversion identity") {
    // theta(u) * theta(u)^{-1} = 1 exactly on the window
    for (int order = 0; order <= 3; ++order) {
        S th = theta_of(order, qs(-1) * ts(2));
        auto [a, b] = th.support();
        S inv = series_invert(th, -6 - std::max(0, b), 6 - std::min(0, a),
                              ParamScalar::one());
        CHECK((th * inv).agrees_with(S::one(order, ParamScalar::one()), -6, 6));
    }
}

TEST_CASE("shift and truncate") {
    S a = S::entire(2);
    a.set(0, 1, qs(1));
    a.set(1, 0, ts(1));
    S sh = a.shifted(1, -2);
    CHECK(sh.coeff(1, -1) == qs(1));
    CHECK(sh.coeff(2, -2) == ts(1));
    S tr = a.truncated(0);
    CHECK(tr.omega_order() == 0);
    CHECK(tr.coeff(0, 1) == qs(1));
}
