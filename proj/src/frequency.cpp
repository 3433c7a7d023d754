#include "lbt/frequency.hpp"

#include <cmath>

#include "lbt/dynamics.hpp"
#include "lbt/quadrature.hpp"

namespace lbt::freq {

namespace {

using quad::QuadratureSpec;
using quad::Singularity;

CaseTag boundary_case(const ProfileTriple& t, double k1, double k2) {
    CaseTag tag = tori::classify_case(k1, k2, t);
    if (tag != CaseTag::A && tag != CaseTag::B)
        throw OutOfRange("frequency: (kappa1, kappa2) must lie in case A or B interior");
    return tag;
}

// x1-integrals over the case-dependent range with rho1
double int_x1(const ProfileTriple& t, CaseTag tag, double k2,
              const std::function<double(double)>& f) {
    if (tag == CaseTag::A) {
        QuadratureSpec s{t.nu1(), t.nu0(), Singularity::InverseSqrt,
                         Singularity::InverseSqrt};
        return quad::integrate(f, s).value;
    }
    // case B: [k2, nu0]; rho1's nu1-edge sits just below the left endpoint
    return quad::integrate_graded_left(f, k2, t.nu0(), k2 - t.nu1(),
                                       Singularity::InverseSqrt,
                                       Singularity::InverseSqrt)
        .value;
}

double int_x2(const ProfileTriple& t, CaseTag tag, double k2,
              const std::function<double(double)>& f) {
    if (tag == CaseTag::A) {
        // [0, k2]; rho2's nu1-edge sits just above the right endpoint
        return quad::integrate_graded_right(f, 0.0, k2, t.nu1() - k2,
                                            Singularity::InverseSqrt,
                                            Singularity::InverseSqrt)
            .value;
    }
    QuadratureSpec s{0.0, t.nu1(), Singularity::InverseSqrt, Singularity::InverseSqrt};
    return quad::integrate(f, s).value;
}

double int_x3(const ProfileTriple& t, double k1, const std::function<double(double)>& f) {
    // rho3's singular edge at x = 0- sits at distance |k1| beyond the moving
    // endpoint; grade the panels when the gap closes
    return quad::integrate_graded_right(f, t.nu3(), k1, -k1, Singularity::None,
                                        Singularity::InverseSqrt)
        .value;
}

} // namespace

double action(const ProfileTriple& t, int k, double k1, double k2) {
    CaseTag tag = boundary_case(t, k1, k2);
    try {
        switch (k) {
            case 1:
                return (2.0 / M_PI) * int_x1(t, tag, k2, [&](double x) {
                           return std::sqrt((x - k1) * (x - k2)) * t.density_unguarded(1, x);
                       });
            case 2:
                return (2.0 / M_PI) * int_x2(t, tag, k2, [&](double x) {
                           return std::sqrt((x - k1) * (k2 - x)) * t.density_unguarded(2, x);
                       });
            case 3:
                return (1.0 / M_PI) * int_x3(t, k1, [&](double x) {
                           return std::sqrt((k1 - x) * (k2 - x)) * t.density_unguarded(3, x);
                       });
        }
    } catch (const NonConvergent& e) {
        throw QuadratureFailure(std::string("action: ") + e.what());
    }
    throw OutOfRange("action: k must be 1, 2 or 3");
}

double action_theta(const ProfileTriple& t, int k, double k1, double k2) {
    CaseTag tag = boundary_case(t, k1, k2);
    auto P = [&](double v) { return (v - k1) * (v - k2); };
    try {
        if (k == 1) {
            if (tag == CaseTag::A) {
                QuadratureSpec s{0.0, 0.25 * t.omega1(), Singularity::None,
                                 Singularity::None};
                return (4.0 / (2.0 * M_PI)) *
                       quad::integrate(
                           [&](double th) { return std::sqrt(P(t.phi(1, th))); }, s)
                           .value;
            }
            double f1 = t.inverse_branch(1, k2);
            QuadratureSpec s{f1, 0.25 * t.omega1(), Singularity::InverseSqrt,
                             Singularity::None};
            // libration over the band, two sweeps
            return (2.0 / (2.0 * M_PI)) * 2.0 *
                   quad::integrate([&](double th) { return std::sqrt(P(t.phi(1, th))); },
                                   s)
                       .value;
        }
        if (k == 2) {
            if (tag == CaseTag::A) {
                double f2 = t.inverse_branch(2, k2);
                QuadratureSpec s{0.0, f2, Singularity::None, Singularity::InverseSqrt};
                return (2.0 / M_PI) *
                       quad::integrate(
                           [&](double th) { return std::sqrt(-P(t.phi(2, th))); }, s)
                           .value;
            }
            QuadratureSpec s{0.0, 0.25 * t.omega2(), Singularity::None,
                             Singularity::None};
            return (4.0 / (2.0 * M_PI)) *
                   quad::integrate([&](double th) { return std::sqrt(-P(t.phi(2, th))); },
                                   s)
                       .value;
        }
        if (k == 3) {
            double f3 = t.inverse_branch(3, k1);
            QuadratureSpec s{f3, t.halfwidth(), Singularity::InverseSqrt,
                             Singularity::None};
            return (1.0 / M_PI) *
                   quad::integrate([&](double th) { return std::sqrt(P(t.phi(3, th))); },
                                   s)
                       .value;
        }
    } catch (const NonConvergent& e) {
        throw QuadratureFailure(std::string("action_theta: ") + e.what());
    }
    throw OutOfRange("action_theta: k must be 1, 2 or 3");
}

std::array<std::array<double, 2>, 3> action_grad(const ProfileTriple& t, double k1,
                                                 double k2) {
    CaseTag tag = boundary_case(t, k1, k2);
    std::array<std::array<double, 2>, 3> g{};
    try {
        g[0][0] = -(1.0 / M_PI) * int_x1(t, tag, k2, [&](double x) {
            return std::sqrt((x - k2) / (x - k1)) * t.density_unguarded(1, x);
        });
        g[0][1] = -(1.0 / M_PI) * int_x1(t, tag, k2, [&](double x) {
            return std::sqrt((x - k1) / (x - k2)) * t.density_unguarded(1, x);
        });
        g[1][0] = -(1.0 / M_PI) * int_x2(t, tag, k2, [&](double x) {
            return std::sqrt((k2 - x) / (x - k1)) * t.density_unguarded(2, x);
        });
        g[1][1] = (1.0 / M_PI) * int_x2(t, tag, k2, [&](double x) {
            return std::sqrt((x - k1) / (k2 - x)) * t.density_unguarded(2, x);
        });
        g[2][0] = (0.5 / M_PI) * int_x3(t, k1, [&](double x) {
            return std::sqrt((k2 - x) / (k1 - x)) * t.density_unguarded(3, x);
        });
        g[2][1] = (0.5 / M_PI) * int_x3(t, k1, [&](double x) {
            return std::sqrt((k1 - x) / (k2 - x)) * t.density_unguarded(3, x);
        });
    } catch (const NonConvergent& e) {
        throw QuadratureFailure(std::string("action_grad: ") + e.what());
    }
    return g;
}

std::pair<double, double> frequencies(const ProfileTriple& t, double k1, double k2) {
    auto g = action_grad(t, k1, k2);
    double m00 = g[0][0], m01 = g[1][0]; // row: d/dk1 of (J1, J2)
    double m10 = g[0][1], m11 = g[1][1];
    double r0 = -2.0 * M_PI * g[2][0], r1 = -2.0 * M_PI * g[2][1];
    double det = m00 * m11 - m01 * m10;
    double scale = std::abs(m00 * m11) + std::abs(m01 * m10);
    if (std::abs(det) < 1e-12 * scale)
        throw SingularSystem("frequencies: action-gradient matrix is singular");
    double o1 = (r0 * m11 - m01 * r1) / det;
    double o2 = (m00 * r1 - r0 * m10) / det;
    return {o1, o2};
}

// ---------------- closed forms by dual tensor quadrature ----------------

namespace {

Dual2 dual_density(const ProfileTriple& t, int k, const Dual2& x) {
    return compose(x, t.density_unguarded(k, x.v), t.density_deriv(k, x.v));
}

template <class F>
Dual2 tensor_dual(F&& f, int n) {
    const quad::GaussRule& rule = quad::gauss_rule(n);
    const double half = 0.25 * M_PI;
    Dual2 acc;
    for (int i = 0; i < n; ++i) {
        double a = half * (rule.x[i] + 1.0);
        Dual2 row;
        for (int j = 0; j < n; ++j) {
            double b = half * (rule.x[j] + 1.0);
            row = row + f(a, b) * rule.w[j];
        }
        acc = acc + row * rule.w[i];
    }
    return acc * (half * half);
}

template <class F>
Dual2 converge_dual(F&& f) {
    Dual2 prev = tensor_dual(f, 64);
    int n = 64;
    for (int d = 0; d < 3; ++d) {
        n *= 2;
        Dual2 cur = tensor_dual(f, n);
        bool ok = std::abs(cur.v - prev.v) < std::max(1e-11, 1e-9 * std::abs(cur.v)) &&
                  std::abs(cur.d1 - prev.d1) < std::max(1e-9, 1e-7 * std::abs(cur.d1)) &&
                  std::abs(cur.d2 - prev.d2) < std::max(1e-9, 1e-7 * std::abs(cur.d2));
        if (ok) return cur;
        prev = cur;
    }
    throw QuadratureFailure("closed_forms: dual tensor quadrature did not converge");
}

} // namespace

ClosedForms closed_forms(const ProfileTriple& t, double k1, double k2) {
    CaseTag tag = boundary_case(t, k1, k2);
    const double nu0 = t.nu0(), nu1 = t.nu1(), nu3 = t.nu3();
    Dual2 K1 = Dual2::seed1(k1), K2 = Dual2::seed2(k2);

    // x3 on [nu3, k1]: x3 = nu3 + (k1-nu3) sin^2, dx3/sqrt(k1-x3) absorbed
    auto x3_of = [&](double b) { double s = std::sin(b); return nu3 + (K1 - nu3) * (s * s); };
    auto j3_of = [&](double b) { return 2.0 * std::sin(b) * sqrt(K1 - nu3); };

    ClosedForms cf;
    if (tag == CaseTag::A) {
        // x2 on [0,k2]: x2 = k2 sin^2, dx2/sqrt(k2-x2) absorbed
        auto x2_of = [&](double a) { double s = std::sin(a); return K2 * (s * s); };
        auto j2_of = [&](double a) { return 2.0 * std::sin(a) * sqrt(K2); };
        // x1 on [nu1,nu0] (kappa-free): plain dx1
        auto x1_of = [&](double g) {
            double s = std::sin(g);
            return Dual2(nu1 + (nu0 - nu1) * s * s);
        };
        auto j1_of = [&](double g) { return Dual2((nu0 - nu1) * std::sin(2.0 * g)); };

        cf.A = converge_dual([&](double a, double b) {
            Dual2 x2 = x2_of(a), x3 = x3_of(b);
            return (x2 - x3) * dual_density(t, 2, x2) * dual_density(t, 3, x3) /
                   (sqrt(x2 - K1) * sqrt(K2 - x3)) * j2_of(a) * j3_of(b);
        });
        cf.B = converge_dual([&](double g, double b) {
            Dual2 x1 = x1_of(g), x3 = x3_of(b);
            return (x1 - x3) * dual_density(t, 1, x1) * dual_density(t, 3, x3) /
                   (sqrt((x1 - K1) * (x1 - K2)) * sqrt(K2 - x3)) * j1_of(g) * j3_of(b);
        });
        cf.D = converge_dual([&](double g, double a) {
            Dual2 x1 = x1_of(g), x2 = x2_of(a);
            return (x1 - x2) * dual_density(t, 1, x1) * dual_density(t, 2, x2) /
                   (sqrt((x1 - K1) * (x1 - K2)) * sqrt(x2 - K1)) * j1_of(g) * j2_of(a);
        });
    } else {
        // case B: x1 on [k2,nu0] with a plain (dual) jacobian so that the
        // kappa2-derivative of the integrand stays integrable; the
        // 1/sqrt(x1-k2) factor is kept explicit as (nu0-k2) sin^2 in dual
        // form. x2 runs over the full branch [0, nu1].
        auto x1_of = [&](double g) { double s = std::sin(g); return K2 + (nu0 - K2) * (s * s); };
        auto j1_of = [&](double g) { return (nu0 - K2) * std::sin(2.0 * g); };
        auto x1mk2 = [&](double g) { double s = std::sin(g); return (nu0 - K2) * (s * s); };
        auto x2_of = [&](double a) {
            double s = std::sin(a);
            return Dual2(nu1 * s * s);
        };
        auto j2_of = [&](double a) { return Dual2(nu1 * std::sin(2.0 * a)); };

        cf.A = converge_dual([&](double a, double b) {
            Dual2 x2 = x2_of(a), x3 = x3_of(b);
            return (x2 - x3) * dual_density(t, 2, x2) * dual_density(t, 3, x3) /
                   (sqrt((x2 - K1) * (K2 - x2)) * sqrt(K2 - x3)) * j2_of(a) * j3_of(b);
        });
        cf.B = converge_dual([&](double g, double b) {
            Dual2 x1 = x1_of(g), x3 = x3_of(b);
            return (x1 - x3) * dual_density(t, 1, x1) * dual_density(t, 3, x3) /
                   (sqrt((x1 - K1) * x1mk2(g)) * sqrt(K2 - x3)) * j1_of(g) * j3_of(b);
        });
        cf.D = converge_dual([&](double g, double a) {
            Dual2 x1 = x1_of(g), x2 = x2_of(a);
            return (x1 - x2) * dual_density(t, 1, x1) * dual_density(t, 2, x2) /
                   (sqrt((x1 - K1) * x1mk2(g)) * sqrt((x2 - K1) * (K2 - x2))) *
                   j1_of(g) * j2_of(a);
        });
    }
    return cf;
}

std::pair<double, double> frequencies_closed(const ProfileTriple& t, double k1,
                                             double k2) {
    ClosedForms cf = closed_forms(t, k1, k2);
    return {M_PI * cf.A.v / cf.D.v, M_PI * cf.B.v / cf.D.v};
}

double jacobian(const ProfileTriple& t, double k1, double k2) {
    ClosedForms cf = closed_forms(t, k1, k2);
    double D = cf.D.v;
    double m00 = cf.A.d1 * D - cf.A.v * cf.D.d1;
    double m01 = cf.A.d2 * D - cf.A.v * cf.D.d2;
    double m10 = cf.B.d1 * D - cf.B.v * cf.D.d1;
    double m11 = cf.B.d2 * D - cf.B.v * cf.D.d2;
    return M_PI * M_PI / (D * D * D * D) * (m00 * m11 - m01 * m10);
}

double normalized_jacobian(const ProfileTriple& t, double k1, double k2) {
    ClosedForms cf = closed_forms(t, k1, k2);
    double D = cf.D.v;
    double m00 = cf.A.d1 * D - cf.A.v * cf.D.d1;
    double m01 = cf.A.d2 * D - cf.A.v * cf.D.d2;
    double m10 = cf.B.d1 * D - cf.B.v * cf.D.d1;
    double m11 = cf.B.d2 * D - cf.B.v * cf.D.d2;
    return (m00 * m11 - m01 * m10) / (D * D);
}

// ---------------- boundary-limit functionals ----------------

// The edge integrals blow up logarithmically as kappa -> nu1-. They are
// computed in the square-root edge variable u anchored at nu1 so that all
// distances to the colliding branch points stay exact in floating point.

double edge_integral_1(const ProfileTriple& t, double kappa) {
    if (!(kappa < t.nu1())) throw OutOfRange("edge_integral_1: kappa < nu1 required");
    const double nu1 = t.nu1(), nu3 = t.nu3();
    double dk = nu1 - kappa;
    double U = std::sqrt(t.nu0() - nu1);
    // x = nu1 + u^2: int sqrt(x-nu3) rho1(x) 2u du / sqrt(u^2 + dk)
    return quad::integrate_graded_left(
               [&](double u) {
                   double d = u * u;
                   return std::sqrt(nu1 + d - nu3) * t.density_offset(1, true, d) *
                          2.0 * u / std::sqrt(d + dk);
               },
               0.0, U, std::sqrt(dk), Singularity::None, Singularity::InverseSqrt)
        .value;
}

double edge_integral_2(const ProfileTriple& t, double kappa) {
    if (!(kappa > 0.0 && kappa < t.nu1()))
        throw OutOfRange("edge_integral_2: kappa in (0, nu1) required");
    const double nu1 = t.nu1(), nu3 = t.nu3();
    double r = std::sqrt(nu1 - kappa);
    double U = std::sqrt(nu1);
    // x = nu1 - u^2: int sqrt(x-nu3) rho2(x) 2u du / sqrt((u-r)(u+r))
    return quad::integrate_graded_left(
               [&](double u) {
                   double d = u * u;
                   return std::sqrt(nu1 - d - nu3) * t.density_offset(2, false, d) *
                          2.0 * u / std::sqrt((u - r) * (u + r));
               },
               r, U, r, Singularity::InverseSqrt, Singularity::InverseSqrt)
        .value;
}

double boundary_rotation(const ProfileTriple& t, double kappa) {
    return 2.0 * edge_integral_1(t, kappa) / edge_integral_2(t, kappa);
}

std::pair<double, double> boundary_actions(const ProfileTriple& t, double kappa) {
    double delta = t.nu1() - kappa;
    double J1 = (8.0 / M_PI) *
                quad::integrate_graded_left(
                    [&](double x) {
                        return std::sqrt((x - t.nu3()) * (x - kappa)) * t.density_unguarded(1, x);
                    },
                    t.nu1(), t.nu0(), delta, Singularity::InverseSqrt,
                    Singularity::InverseSqrt)
                    .value;
    double J2 = (4.0 / M_PI) *
                quad::integrate_graded_right(
                    [&](double x) {
                        return std::sqrt((x - t.nu3()) * (kappa - x)) * t.density_unguarded(2, x);
                    },
                    0.0, kappa, delta, Singularity::InverseSqrt, Singularity::None)
                    .value;
    return {J1, J2};
}

double delta_limit(const ProfileTriple& t, double k2) {
    if (!(k2 > 0.0 && k2 < t.nu1()))
        throw OutOfRange("delta_limit: kappa2 in (0, nu1) required");
    double rho3_end = t.edge_data(3, true).G0; // regular value rho3(nu3)
    double h = 1e-4 * t.nu1();
    auto ratio = [&](double k) { return edge_integral_1(t, k) / edge_integral_2(t, k); };
    double dr = (ratio(k2 + h) - ratio(k2 - h)) / (2.0 * h);
    double E2 = edge_integral_2(t, k2);
    double pref = rho3_end / std::sqrt(k2 - t.nu3());
    return 2.0 * pref * pref * E2 * E2 * dr;
}

// ---------------- empirical rotation ----------------

EmpiricalRotation empirical_rotation(const ProfileTriple& t, const TorusSpec& spec, int n,
                                     double tol, double theta1_start, double theta2_start) {
    using dynamics::BoundaryCovector;
    if (spec.tag != CaseTag::A && spec.tag != CaseTag::B)
        throw OutOfRange("empirical_rotation: boundary cases only");
    const bool caseA = (spec.tag == CaseTag::A);
    const double om1 = t.omega1(), om2 = t.omega2();

    double th1 = theta1_start, th2 = theta2_start;
    if (!caseA && theta1_start == 0.0) th1 = 0.25 * om1; // band center
    BoundaryCovector xi = tori::torus_point(t, spec, th1, th2);

    // libration parameters
    double halfw, center;
    if (caseA) {
        halfw = t.inverse_branch(2, spec.k2);
        center = 0.0;
    } else {
        halfw = 0.25 * om1 - t.inverse_branch(1, spec.k2);
        center = 0.25 * om1;
    }

    double chi_prev = 0.0, chi_total = 0.0;
    bool chi_init = false;
    auto observe = [&](double, const dynamics::PhasePoint& z) {
        double q = caseA ? z.theta2 : z.theta1;
        double p = caseA ? z.p2 : z.p1;
        double s = (q - center) / halfw;
        s = std::min(1.0, std::max(-1.0, s));
        double ang = (p >= 0.0) ? std::asin(s) : (M_PI - std::asin(s));
        if (!chi_init) {
            chi_prev = ang;
            chi_init = true;
            return;
        }
        double d = ang - chi_prev;
        d = std::remainder(d, 2.0 * M_PI);
        chi_total += d;
        chi_prev = ang;
    };

    std::vector<double> S1(n + 1), S2(n + 1);
    double wind0 = caseA ? xi.theta1 : xi.theta2;
    S1[0] = 0.0;
    S2[0] = 0.0;
    for (int k = 1; k <= n; ++k) {
        xi = dynamics::billiard_map(t, xi, tol, observe);
        double wind = (caseA ? xi.theta1 : xi.theta2) - wind0;
        double w_cycles = wind / (caseA ? om1 : om2);
        double l_cycles = chi_total / (2.0 * M_PI);
        // S1 tracks the J1-cycle, S2 the J2-cycle
        if (caseA) {
            S1[k] = w_cycles;
            S2[k] = l_cycles;
        } else {
            S1[k] = l_cycles;
            S2[k] = w_cycles;
        }
    }

    auto ls_slope = [&](const std::vector<double>& S) {
        double kb = 0.5 * n;
        double num = 0.0, den = 0.0;
        for (int k = 0; k <= n; ++k) {
            num += (k - kb) * S[k];
            den += (k - kb) * (k - kb);
        }
        return num / den;
    };

    EmpiricalRotation er;
    er.w1 = ls_slope(S1);
    er.w2 = ls_slope(S2);
    er.w1_plain = S1[n] / n;
    er.w2_plain = S2[n] / n;
    er.bounces = n;
    return er;
}

FrequencyRecord record(const ProfileTriple& t, double k1, double k2) {
    FrequencyRecord r;
    r.k1 = k1;
    r.k2 = k2;
    r.tag = boundary_case(t, k1, k2);
    r.J1 = action(t, 1, k1, k2);
    r.J2 = action(t, 2, k1, k2);
    r.J3 = action(t, 3, k1, k2);
    r.dJ = action_grad(t, k1, k2);
    auto om = frequencies(t, k1, k2);
    r.Omega1 = om.first;
    r.Omega2 = om.second;
    r.jac = jacobian(t, k1, k2);
    return r;
}

} // namespace lbt::freq
