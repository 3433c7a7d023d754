#include "lbt/tori.hpp"

#include <cmath>

#include "lbt/quadrature.hpp"

namespace lbt::tori {

namespace {

double P_of(const TorusSpec& s, double v) { return (v - s.k1) * (v - s.k2); }

double reduce_centered(double x, double period) {
    return std::remainder(x, period); // in [-period/2, period/2]
}

} // namespace

std::optional<std::pair<double, double>> roots_from_h(double h1, double h2) {
    double disc = h1 * h1 - 4.0 * h2;
    if (disc < 0.0) return std::nullopt;
    double s = std::sqrt(disc);
    // larger-magnitude root first, companion via h2 to avoid cancellation
    double big = 0.5 * (h1 + std::copysign(s, h1));
    double small = (big == 0.0) ? 0.0 : h2 / big;
    if (small > big) std::swap(small, big);
    return std::make_pair(small, big);
}

CaseTag classify_case(double k1, double k2, const ProfileTriple& t) {
    const double tol = 1e-12;
    const double nu0 = t.nu0(), nu1 = t.nu1(), nu3 = t.nu3();
    if (k1 > k2) std::swap(k1, k2);
    if (k1 < nu3 - tol || k2 > nu0 + tol) return CaseTag::Degenerate;
    auto strict = [&](double lo, double v, double hi) {
        return v > lo + tol && v < hi - tol;
    };
    if (strict(nu3, k1, 0.0) && strict(0.0, k2, nu1)) return CaseTag::A;
    if (strict(nu3, k1, 0.0) && strict(nu1, k2, nu0)) return CaseTag::B;
    if (strict(0.0, k1, nu1) && strict(0.0, k2, nu1) && k2 - k1 > tol) return CaseTag::C;
    if (strict(0.0, k1, nu1) && strict(nu1, k2, nu0)) return CaseTag::D;
    return CaseTag::Degenerate;
}

TorusSpec make_spec(const ProfileTriple& t, double k1, double k2, int eps1, int eps2) {
    TorusSpec s;
    if (k1 > k2) std::swap(k1, k2);
    s.k1 = k1;
    s.k2 = k2;
    s.tag = classify_case(k1, k2, t);
    s.eps1 = eps1;
    s.eps2 = eps2;
    return s;
}

bool in_projection(const ProfileTriple& t, const TorusSpec& s, double theta1,
                   double theta2) {
    if (s.tag == CaseTag::A) {
        double f2 = t.inverse_branch(2, s.k2);
        return std::abs(reduce_centered(theta2, t.omega2())) <= f2;
    }
    if (s.tag == CaseTag::B) {
        double f1 = t.inverse_branch(1, s.k2);
        double th = reduce_centered(theta1 - 0.25 * t.omega1(), 0.5 * t.omega1());
        return std::abs(th) <= 0.25 * t.omega1() - f1;
    }
    throw OutsideProjection("projection region defined for boundary cases only");
}

BoundaryCovector torus_point(const ProfileTriple& t, const TorusSpec& s, double theta1,
                             double theta2) {
    if (s.tag != CaseTag::A && s.tag != CaseTag::B)
        throw OutsideProjection("torus_point: boundary cases only");
    if (!in_projection(t, s, theta1, theta2))
        throw OutsideProjection("torus_point: outside the projection region");
    double P1 = P_of(s, t.phi(1, theta1));
    double P2 = -P_of(s, t.phi(2, theta2));
    BoundaryCovector xi;
    xi.theta1 = theta1;
    xi.theta2 = theta2;
    xi.p1 = s.eps1 * std::sqrt(std::max(0.0, P1));
    xi.p2 = s.eps2 * std::sqrt(std::max(0.0, P2));
    xi.side = +1;
    return xi;
}

double leray_density(const ProfileTriple& t, const TorusSpec& s, double theta1,
                     double theta2) {
    if (s.tag != CaseTag::A && s.tag != CaseTag::B)
        throw OutsideProjection("leray_density: boundary cases only");
    double f1 = t.phi(1, theta1), f2 = t.phi(2, theta2);
    double P1 = P_of(s, f1), P2 = -P_of(s, f2);
    const double tiny = 1e-14 * std::max(1.0, t.nu0() * t.nu0());
    if (P1 < tiny || P2 < tiny)
        throw TurningPointSingularity("leray_density: turning-point edge");
    return (f1 - f2) / (std::sqrt(P1) * std::sqrt(P2));
}

double leray_mass(const ProfileTriple& t, const TorusSpec& s) {
    using quad::QuadratureSpec;
    using quad::Singularity;
    // 16 int int (x1 - x2) rho1 rho2 dx / (sqrt(P(x1)) sqrt(-P(x2)))
    // over the case-appropriate (x1, x2) rectangle
    QuadratureSpec sx, sy;
    if (s.tag == CaseTag::A) {
        sx = {t.nu1(), t.nu0(), Singularity::InverseSqrt, Singularity::InverseSqrt};
        sy = {0.0, s.k2, Singularity::InverseSqrt, Singularity::InverseSqrt};
    } else if (s.tag == CaseTag::B) {
        sx = {s.k2, t.nu0(), Singularity::InverseSqrt, Singularity::InverseSqrt};
        sy = {0.0, t.nu1(), Singularity::InverseSqrt, Singularity::InverseSqrt};
    } else {
        throw OutsideProjection("leray_mass: boundary cases only");
    }
    auto f = [&](double x1, double x2) {
        double den = std::sqrt((x1 - s.k1) * (x1 - s.k2)) *
                     std::sqrt((x2 - s.k1) * (s.k2 - x2));
        return (x1 - x2) * t.density_unguarded(1, x1) * t.density_unguarded(2, x2) / den;
    };
    try {
        return 16.0 * quad::integrate2(f, sx, sy).value;
    } catch (const NonConvergent& e) {
        throw QuadratureFailure(std::string("leray_mass: ") + e.what());
    }
}

double leray_mass_theta(const ProfileTriple& t, const TorusSpec& s) {
    using quad::QuadratureSpec;
    using quad::Singularity;
    try {
        if (s.tag == CaseTag::A) {
            double f2 = t.inverse_branch(2, s.k2);
            QuadratureSpec inner{0.0, f2, Singularity::None, Singularity::InverseSqrt};
            QuadratureSpec outer{0.0, 0.25 * t.omega1(), Singularity::None,
                                 Singularity::None};
            auto row = [&](double th1) {
                double f1v = t.phi(1, th1);
                double p1 = std::sqrt(P_of(s, f1v));
                return quad::integrate(
                           [&](double th2) {
                               double f2v = t.phi(2, th2);
                               return (f1v - f2v) / std::sqrt(-P_of(s, f2v));
                           },
                           inner)
                           .value /
                       p1;
            };
            return 16.0 * quad::integrate(row, outer).value;
        }
        if (s.tag == CaseTag::B) {
            double f1 = t.inverse_branch(1, s.k2);
            QuadratureSpec inner{f1, 0.25 * t.omega1(), Singularity::InverseSqrt,
                                 Singularity::None};
            QuadratureSpec outer{0.0, 0.25 * t.omega2(), Singularity::None,
                                 Singularity::None};
            auto row = [&](double th2) {
                double f2v = t.phi(2, th2);
                double p2 = std::sqrt(-P_of(s, f2v));
                return quad::integrate(
                           [&](double th1) {
                               double f1v = t.phi(1, th1);
                               return (f1v - f2v) / std::sqrt(P_of(s, f1v));
                           },
                           inner)
                           .value /
                       p2;
            };
            return 16.0 * quad::integrate(row, outer).value;
        }
    } catch (const NonConvergent& e) {
        throw QuadratureFailure(std::string("leray_mass_theta: ") + e.what());
    }
    throw OutsideProjection("leray_mass_theta: boundary cases only");
}

} // namespace lbt::tori
