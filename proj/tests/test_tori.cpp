#include <doctest.h>

#include <cmath>

#include "lbt/dynamics.hpp"
#include "lbt/tori.hpp"

using namespace lbt;
using namespace lbt::tori;

TEST_CASE("roots of P(t) = t^2 - h1 t + h2") {
    auto r = roots_from_h(0.0, -0.25);
    REQUIRE(r.has_value());
    CHECK(r->first == doctest::Approx(-0.5));
    CHECK(r->second == doctest::Approx(0.5));
    auto d = roots_from_h(1.0, 0.25);
    REQUIRE(d.has_value());
    CHECK(d->first == doctest::Approx(0.5));
    CHECK(d->second == doctest::Approx(0.5));
    CHECK(!roots_from_h(0.0, 1.0).has_value());
}

TEST_CASE("case classification") {
    auto t = profiles::make_cf1();
    CHECK(classify_case(-0.5, 0.5, t) == CaseTag::A);
    CHECK(classify_case(-0.5, 1.5, t) == CaseTag::B);
    CHECK(classify_case(0.2, 0.5, t) == CaseTag::C);
    CHECK(classify_case(0.5, 1.5, t) == CaseTag::D);
    CHECK(classify_case(0.0, 0.5, t) == CaseTag::Degenerate);
    CHECK(classify_case(-0.5, 2.5, t) == CaseTag::Degenerate);
}

TEST_CASE("torus points carry the prescribed integrals") {
    auto t = profiles::make_cf1();
    TorusSpec s = make_spec(t, -0.5, 0.5);
    REQUIRE(s.tag == CaseTag::A);

    auto xi = torus_point(t, s, 0.5 * M_PI, 0.0);
    CHECK(xi.p1 == doctest::Approx(std::sqrt(3.75)).epsilon(1e-13));
    CHECK(xi.p2 == doctest::Approx(0.5).epsilon(1e-13));

    // turning point: p2 vanishes where phi2 = k2
    double f2 = t.inverse_branch(2, s.k2);
    auto turn = torus_point(t, s, 1.0, f2);
    CHECK(std::abs(turn.p2) < 1e-7);

    // boundary integrals reproduce (h1, h2)
    for (double th1 : {0.3, 1.7, 4.0}) {
        for (double th2 : {0.0, 0.3, -0.5}) {
            if (!in_projection(t, s, th1, th2)) continue;
            auto p = torus_point(t, s, th1, th2);
            auto I = dynamics::boundary_integrals(t, p);
            CHECK(I[0] == doctest::Approx(s.h1()).epsilon(1e-12));
            CHECK(I[1] == doctest::Approx(s.h2()).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(torus_point(t, s, 0.0, 0.45 * t.omega2()), OutsideProjection);
}

TEST_CASE("case-B torus points") {
    auto t = profiles::make_cf1();
    TorusSpec s = make_spec(t, -0.5, 1.5);
    REQUIRE(s.tag == CaseTag::B);
    double f1 = t.inverse_branch(1, s.k2);
    CHECK(in_projection(t, s, 0.25 * t.omega1(), 1.0));
    CHECK(!in_projection(t, s, 0.5 * f1, 1.0));
    auto xi = torus_point(t, s, 0.25 * t.omega1(), 0.7);
    auto I = dynamics::boundary_integrals(t, xi);
    CHECK(I[0] == doctest::Approx(s.h1()).epsilon(1e-12));
    CHECK(I[1] == doctest::Approx(s.h2()).epsilon(1e-12));
}

TEST_CASE("Leray density values and symmetry") {
    auto t = profiles::make_cf1();
    TorusSpec s = make_spec(t, -0.5, 0.5);
    double lam = leray_density(t, s, 0.5 * M_PI, 0.0);
    CHECK(lam == doctest::Approx(2.0 / (std::sqrt(3.75) * 0.5)).epsilon(1e-12));
    // evenness in theta1
    CHECK(leray_density(t, s, 0.7, 0.2) ==
          doctest::Approx(leray_density(t, s, -0.7, 0.2)).epsilon(1e-12));
    // edge blow-up like (k2 - phi2)^{-1/2}
    double f2 = t.inverse_branch(2, s.k2);
    double prev = 0.0;
    for (double d : {1e-2, 1e-4, 1e-6}) {
        double lv = leray_density(t, s, 1.0, f2 - d);
        double scaled = lv * std::sqrt(s.k2 - t.phi(2, f2 - d));
        if (prev != 0.0) CHECK(scaled == doctest::Approx(prev).epsilon(1e-2));
        prev = scaled;
    }
    CHECK_THROWS_AS(leray_density(t, s, 1.0, f2), TurningPointSingularity);
}

TEST_CASE("Leray mass: positivity, two quadrature routes, sign invariance") {
    auto t = profiles::make_cf1();
    // positivity and two-route equality on a 5x5 case-A grid
    for (int i = 1; i <= 5; ++i) {
        for (int j = 1; j <= 5; ++j) {
            double k1 = -1.0 + i / 6.0, k2 = j / 6.0;
            TorusSpec s = make_spec(t, k1, k2);
            REQUIRE(s.tag == CaseTag::A);
            double mx = leray_mass(t, s);
            CHECK(mx > 0.0);
            double mt = leray_mass_theta(t, s);
            CHECK(mx == doctest::Approx(mt).epsilon(1e-8));
        }
    }
    // eps signs do not change the mass
    TorusSpec s = make_spec(t, -0.4, 0.6, -1, -1);
    TorusSpec sp = make_spec(t, -0.4, 0.6, +1, +1);
    CHECK(leray_mass(t, s) == doctest::Approx(leray_mass(t, sp)).epsilon(1e-14));

    // case B
    TorusSpec sb = make_spec(t, -0.5, 1.5);
    double mbx = leray_mass(t, sb), mbt = leray_mass_theta(t, sb);
    CHECK(mbx > 0.0);
    CHECK(mbx == doctest::Approx(mbt).epsilon(1e-8));
}

TEST_CASE("billiard iteration stays on the integral level set") {
    auto t = profiles::make_cf1();
    TorusSpec s = make_spec(t, -0.5, 0.5);
    auto xi = torus_point(t, s, 1.1, 0.1);
    for (int i = 0; i < 100; ++i) {
        xi = dynamics::billiard_map(t, xi, 1e-10);
        auto I = dynamics::boundary_integrals(t, xi);
        CHECK(std::abs(I[0] - s.h1()) < 1e-7);
        CHECK(std::abs(I[1] - s.h2()) < 1e-7);
    }
}
