#include <doctest.h>

#include <cmath>
#include <vector>

#include "lbt/covering.hpp"
#include "lbt/quadrature.hpp"
#include "lbt/radon.hpp"

using namespace lbt;
using namespace lbt::radon;

namespace {

tori::TorusSpec specA(const profiles::ProfileTriple& t) {
    return tori::make_spec(t, -0.5, 0.5);
}

} // namespace

TEST_CASE("mu weight: closed form and pointwise consistency") {
    auto t = profiles::make_cf1();
    auto s = specA(t);
    double m = mu_weight(t, MuChoice::NormalIncidence, s, 0.5 * M_PI, 0.5 * M_PI);
    CHECK(m == doctest::Approx(std::sqrt(6.0) / std::sqrt(0.75)).epsilon(1e-12));
    CHECK(mu_weight(t, MuChoice::Unit, s, 0.3, 0.2) == 1.0);

    // mu * |p3| = sqrt(Pi3) on the boundary
    for (double th1 : {0.3, 1.1, 2.9}) {
        for (double th2 : {0.0, 0.25, -0.4}) {
            if (!tori::in_projection(t, s, th1, th2)) continue;
            auto xi = tori::torus_point(t, s, th1, th2);
            double p3 = std::sqrt((s.k1 - t.nu3()) * (s.k2 - t.nu3()));
            covering::MetricCoeffs mc =
                covering::metric_coeffs(t, {th1, th2, t.halfwidth()});
            double mw = mu_weight(t, MuChoice::NormalIncidence, s, th1, th2);
            CHECK(mw * p3 == doctest::Approx(std::sqrt(mc.Pi3)).epsilon(1e-12));
            // pointwise covector variant agrees on the torus
            CHECK(mu_of_covector(t, MuChoice::NormalIncidence, xi) ==
                  doctest::Approx(mw).epsilon(1e-12));
        }
    }
}

TEST_CASE("named kernels and G-invariance validation") {
    auto t = profiles::make_cf1();
    CHECK(g_invariance_residual(t, kernel_by_name(t, "one")) < 1e-15);
    CHECK(g_invariance_residual(t, kernel_by_name(t, "trig")) < 1e-13);
    CHECK(g_invariance_residual(t, kernel_by_name(t, "product")) < 1e-13);
    CHECK(g_invariance_residual(t, kernel_by_name(t, "codd")) > 0.1);
    CHECK_THROWS_AS(kernel_by_name(t, "nonesuch"), OutOfRange);
}

TEST_CASE("Radon transform: constants, linearity, odd kernels") {
    auto t = profiles::make_cf1();
    auto s = specA(t);

    BoundaryFunction c3{[](double, double) { return 3.0; }, true};
    CHECK(radon_torus(t, c3, MuChoice::Unit, s) == doctest::Approx(3.0).epsilon(1e-10));

    // R(c, NormalIncidence) = c * R(1, NormalIncidence)
    double r1 = radon_torus(t, kernel_by_name(t, "one"), MuChoice::NormalIncidence, s);
    double r3 = radon_torus(t, c3, MuChoice::NormalIncidence, s);
    CHECK(r3 == doctest::Approx(3.0 * r1).epsilon(1e-10));

    // linearity
    auto Ka = kernel_by_name(t, "trig");
    auto Kb = kernel_by_name(t, "product");
    BoundaryFunction mix{[&](double a, double b) {
                             return 2.0 * Ka.eval(a, b) - 0.5 * Kb.eval(a, b);
                         },
                         true};
    double rmix = radon_torus(t, mix, MuChoice::Unit, s);
    double ra = radon_torus(t, Ka, MuChoice::Unit, s);
    double rb = radon_torus(t, Kb, MuChoice::Unit, s);
    CHECK(rmix == doctest::Approx(2.0 * ra - 0.5 * rb).epsilon(1e-9));

    // kernels odd under a single symmetry generator integrate to zero;
    // the theta2-odd registry kernel vanishes on both boundary cases
    auto codd = kernel_by_name(t, "codd");
    CHECK(std::abs(radon_torus(t, codd, MuChoice::Unit, s)) < 1e-10);
    auto sb = tori::make_spec(t, -0.5, 1.5);
    CHECK(std::abs(radon_torus(t, codd, MuChoice::Unit, sb)) < 1e-10);
    // a theta1-odd kernel kills the case-A transform (full-circle direction)
    BoundaryFunction codd1{[&](double a, double b) {
                               return std::sin(2.0 * M_PI * a / t.omega1()) *
                                      (1.0 + 0.5 * std::cos(4.0 * M_PI * b / t.omega2()));
                           },
                           false};
    CHECK(std::abs(radon_torus(t, codd1, MuChoice::Unit, s)) < 1e-10);
}

TEST_CASE("reduced kernel: reference value, sign, edge boundedness") {
    auto t = profiles::make_cf1();
    ReducedKernel k1 = reduce_kernel(t, kernel_by_name(t, "one"), MuChoice::Unit);
    CHECK(k1.eval(1.5, 0.5) == doctest::Approx(1.0).epsilon(1e-10));

    // positive kernel stays positive on the open rectangle
    for (double x1 : {1.1, 1.5, 1.9}) {
        for (double x2 : {0.1, 0.5, 0.9}) {
            CHECK(k1.eval(x1, x2) > 0.0);
        }
    }
    // the weighted product stays bounded toward the edges
    auto w = [&](double x1, double x2) {
        return std::sqrt((x1 - 1.0) * (2.0 - x1)) * std::sqrt(x2 * (1.0 - x2));
    };
    for (double d : {1e-3, 1e-5, 1e-7}) {
        CHECK(std::abs(k1.eval(1.0 + d, 0.5) * w(1.0 + d, 0.5)) < 10.0);
        CHECK(std::abs(k1.eval(1.5, d) * w(1.5, d)) < 10.0);
    }
}

TEST_CASE("two-route Radon equality on case-A and case-B grids") {
    auto t = profiles::make_cf1();
    const char* names[3] = {"one", "trig", "product"};
    for (const char* nm : names) {
        auto K = kernel_by_name(t, nm);
        for (double k1 : {-0.7, -0.5, -0.3}) {
            for (double k2 : {0.3, 0.5, 0.7}) {
                auto s = tori::make_spec(t, k1, k2);
                double rt = radon_torus(t, K, MuChoice::Unit, s);
                double rx = radon_torus_xspace(t, K, MuChoice::Unit, s);
                CHECK(rt == doctest::Approx(rx).epsilon(1e-7));
            }
            for (double k2 : {1.2, 1.5, 1.8}) {
                auto s = tori::make_spec(t, k1, k2);
                REQUIRE(s.tag == tori::CaseTag::B);
                double rt = radon_torus(t, K, MuChoice::Unit, s);
                double rx = radon_torus_xspace(t, K, MuChoice::Unit, s);
                CHECK(rt == doctest::Approx(rx).epsilon(1e-7));
            }
        }
    }
    // normal-incidence weight through both routes
    auto K = kernel_by_name(t, "trig");
    auto s = specA(t);
    CHECK(radon_torus(t, K, MuChoice::NormalIncidence, s) ==
          doctest::Approx(radon_torus_xspace(t, K, MuChoice::NormalIncidence, s))
              .epsilon(1e-7));
}

TEST_CASE("16 M_A equals the unnormalised torus integral") {
    auto t = profiles::make_cf1();
    auto s = specA(t);
    auto K = kernel_by_name(t, "trig");
    ReducedKernel rk = reduce_kernel(t, K, MuChoice::Unit);
    double m16 = 16.0 * M_case(t, s.tag, rk, s.k1, s.k2);
    double numerator =
        radon_torus(t, K, MuChoice::Unit, s) * tori::leray_mass_theta(t, s);
    CHECK(m16 == doctest::Approx(numerator).epsilon(1e-7));
    // zero kernel
    ReducedKernel z{[](double, double) { return 0.0; }};
    CHECK(M_case(t, s.tag, z, s.k1, s.k2) == 0.0);
}

TEST_CASE("M_A is analytic in kappa1: differentiated quadrature vs differences") {
    auto t = profiles::make_cf1();
    auto K = kernel_by_name(t, "product");
    ReducedKernel rk = reduce_kernel(t, K, MuChoice::Unit);
    double k1 = -2.0, k2 = 0.5;
    // second kappa1-derivative of the denominator weight
    auto d2weight = [&](double x1, double x2) {
        double u = (x1 - k1) * (x2 - k1);
        double up = -(x1 + x2 - 2.0 * k1);
        return 0.75 * std::pow(u, -2.5) * up * up - std::pow(u, -1.5);
    };
    quad::QuadratureSpec sx{t.nu1(), t.nu0(), quad::Singularity::InverseSqrt,
                            quad::Singularity::InverseSqrt};
    quad::QuadratureSpec sy{0.0, k2, quad::Singularity::InverseSqrt,
                            quad::Singularity::InverseSqrt};
    double dq = quad::integrate2(
                    [&](double x1, double x2) {
                        return rk.eval(x1, x2) * d2weight(x1, x2) /
                               std::sqrt((x1 - k2) * (k2 - x2));
                    },
                    sx, sy)
                    .value;
    const double h = 1e-3;
    double fd = (M_case(t, tori::CaseTag::A, rk, k1 + h, k2) -
                 2.0 * M_case(t, tori::CaseTag::A, rk, k1, k2) +
                 M_case(t, tori::CaseTag::A, rk, k1 - h, k2)) /
                (h * h);
    CHECK(fd == doctest::Approx(dq).epsilon(1e-5));
}

TEST_CASE("moments: basic values and the Fubini chain to moment(0,0)") {
    auto t = profiles::make_cf1();
    ReducedKernel z{[](double, double) { return 0.0; }};
    CHECK(moment(t, z, 0, 0) == 0.0);
    CHECK_THROWS_AS(moment(t, z, 1, 1), IndexOutOfRange);

    auto K = kernel_by_name(t, "trig");
    ReducedKernel rk = reduce_kernel(t, K, MuChoice::Unit);
    double m00 = moment(t, rk, 0, 0);
    CHECK(m00 > 0.0); // positive kernel

    // I(kappa1) = int int K1 / sqrt((x1-k)(x2-k)) dx: the chi == 1 Fubini
    // mean of the case integrals; moment(0,0) = lim -kappa1 I(kappa1)
    auto I = [&](double kk) {
        quad::QuadratureSpec sx{t.nu1(), t.nu0(), quad::Singularity::InverseSqrt,
                                quad::Singularity::InverseSqrt};
        quad::QuadratureSpec sy{0.0, t.nu1(), quad::Singularity::InverseSqrt,
                                quad::Singularity::InverseSqrt};
        return quad::integrate2(
                   [&](double x1, double x2) {
                       return rk.eval(x1, x2) / std::sqrt((x1 - kk) * (x2 - kk));
                   },
                   sx, sy)
            .value;
    };
    double ka = -1e3, kb = -1e4;
    double Qa = -ka * I(ka), Qb = -kb * I(kb);
    double za = 1.0 / ka, zb = 1.0 / kb;
    double Qstar = Qb + (Qb - Qa) * zb / (za - zb);
    CHECK(Qstar == doctest::Approx(m00).epsilon(1e-6));

    // Fubini interchange with a smooth interior test weight chi: the
    // kappa2-averaged case-A integrals equal the kernel integral against
    // the bridged weight W(x1,x2) = int chi(k2) dk2 / sqrt((x1-k2)(k2-x2))
    double kk = -2.0;
    const double a = 0.3, b = 0.95;
    auto chi = [&](double k2v) {
        double u = (k2v - a) * (b - k2v);
        return u * u;
    };
    quad::QuadratureSpec souter{a, b, quad::Singularity::None,
                                quad::Singularity::None};
    double lhs = quad::integrate_pass<double>(
        [&](double k2v) {
            return M_case(t, tori::CaseTag::A, rk, kk, k2v) * chi(k2v);
        },
        souter, 48);
    auto W = [&](double x1, double x2) {
        double lo = std::max(a, x2), hi = b;
        if (!(lo < hi)) return 0.0;
        quad::QuadratureSpec sw{lo, hi, quad::Singularity::InverseSqrt,
                                quad::Singularity::InverseSqrt};
        return quad::integrate_pass<double>(
            [&](double k2v) {
                return chi(k2v) / std::sqrt((x1 - k2v) * (k2v - x2));
            },
            sw, 64);
    };
    quad::QuadratureSpec sx{t.nu1(), t.nu0(), quad::Singularity::InverseSqrt,
                            quad::Singularity::InverseSqrt};
    quad::QuadratureSpec sy{0.0, b, quad::Singularity::InverseSqrt,
                            quad::Singularity::InverseSqrt};
    double rhs = quad::integrate2(
                     [&](double x1, double x2) {
                         return rk.eval(x1, x2) * W(x1, x2) /
                                std::sqrt((x1 - kk) * (x2 - kk));
                     },
                     sx, sy)
                     .value;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
}

TEST_CASE("case C and D reductions evaluate as pure quadratures") {
    auto t = profiles::make_cf1();
    ReducedKernel rk = reduce_kernel(t, kernel_by_name(t, "trig"), MuChoice::Unit);
    double mc = M_case(t, tori::CaseTag::C, rk, 0.25, 0.6);
    double md = M_case(t, tori::CaseTag::D, rk, 0.4, 1.5);
    CHECK(std::isfinite(mc));
    CHECK(std::isfinite(md));
    CHECK(mc > 0.0); // positive kernel, positive weight
    CHECK(md > 0.0);
}

TEST_CASE("rigidity certificate and moment-kill reconstruction") {
    auto t = profiles::make_cf1();
    auto rc0 = rigidity_certificate(t, 0);
    CHECK(rc0.dim == 1);
    CHECK(rc0.min_sv > 0.0);

    CHECK(monomial_count(4) == 9);
    auto rc4 = rigidity_certificate(t, 4);
    CHECK(rc4.dim == 9);
    CHECK(rc4.min_sv > 0.0);

    // degree-4 synthetic kernel: reconstruct its coefficients from moments
    int d = 4;
    std::vector<double> target(monomial_count(d), 0.0);
    target[0] = 0.4;
    target[2] = -0.7;
    target[3] = 0.25;
    target[5] = 0.1;
    target[8] = -0.05;
    auto psi = [&](double u, double v) {
        return eval_reconstruction(t, target, d, u, v);
    };
    auto coef = reconstruct_from_moments(t, psi, d);
    REQUIRE(coef.size() == target.size());
    double resid = 0.0;
    for (std::size_t i = 0; i < coef.size(); ++i)
        resid = std::max(resid, std::abs(coef[i] - target[i]));
    CHECK(resid < 1e-6);
}

TEST_CASE("periodic orbit means") {
    auto t = profiles::make_cf1();
    auto s = radon::find_rational_torus(t, 3, 4, 9);
    auto xi = tori::torus_point(t, s, 0.77, 0.1);

    // constants average to themselves on any periodic orbit
    BoundaryFunction c2{[](double, double) { return 2.0; }, true};
    CHECK(periodic_orbit_mean(t, c2, MuChoice::Unit, xi, 9) ==
          doctest::Approx(2.0).epsilon(1e-12));

    // reversal invariance: the eps2-flipped orbit through the reflected
    // start is the mirror image of the original orbit, and the momentum
    // flip at the same point retraces the same 9-cycle backwards
    auto K = kernel_by_name(t, "trig");
    double m1 = periodic_orbit_mean(t, K, MuChoice::Unit, xi, 9);
    tori::TorusSpec sr = s;
    sr.eps2 = -1;
    auto xir = tori::torus_point(t, sr, 0.77, -0.1);
    double m2 = periodic_orbit_mean(t, K, MuChoice::Unit, xir, 9);
    CHECK(m1 == doctest::Approx(m2).epsilon(1e-7));
    tori::TorusSpec st = s;
    st.eps1 = -1;
    st.eps2 = -1;
    auto xit = tori::torus_point(t, st, 0.77, 0.1);
    double m3 = periodic_orbit_mean(t, K, MuChoice::Unit, xit, 9);
    CHECK(m1 == doctest::Approx(m3).epsilon(1e-7));

    // a non-periodic start raises NotPeriodic
    auto bad = tori::torus_point(t, specA(t), 0.3, 0.0);
    CHECK_THROWS_AS(periodic_orbit_mean(t, kernel_by_name(t, "one"), MuChoice::Unit,
                                        bad, 3),
                    NotPeriodic);
}
