#include "lbt/covering.hpp"

#include <algorithm>
#include <cmath>

namespace lbt::covering {

namespace {

double mod_positive(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0) r += period;
    return r;
}

// distance of x to the lattice {offset + k*period}
double lattice_distance(double x, double offset, double period) {
    return std::abs(std::remainder(x - offset, period));
}

} // namespace

CylinderPoint reduce(const ProfileTriple& t, CylinderPoint p) {
    p.theta1 = mod_positive(p.theta1, t.omega1());
    p.theta2 = mod_positive(p.theta2, t.omega2());
    return p;
}

double branch_tolerance(const ProfileTriple& t) {
    return 1e-9 * std::min(t.omega1(), t.omega2());
}

double branch_distance(const ProfileTriple& t, const CylinderPoint& p) {
    double d1a = lattice_distance(p.theta1, 0.0, 0.5 * t.omega1());
    double d1b = lattice_distance(p.theta2, 0.25 * t.omega2(), 0.5 * t.omega2());
    double s1 = std::hypot(d1a, d1b);
    double d2a = lattice_distance(p.theta2, 0.0, 0.5 * t.omega2());
    double s2 = std::hypot(d2a, p.theta3);
    return std::min(s1, s2);
}

PointClass classify_point(const ProfileTriple& t, const CylinderPoint& p, double tol) {
    double d1a = lattice_distance(p.theta1, 0.0, 0.5 * t.omega1());
    double d1b = lattice_distance(p.theta2, 0.25 * t.omega2(), 0.5 * t.omega2());
    if (d1a < tol && d1b < tol) return PointClass::S1Branch;
    double d2a = lattice_distance(p.theta2, 0.0, 0.5 * t.omega2());
    if (d2a < tol && std::abs(p.theta3) < tol) return PointClass::S2Branch;
    return PointClass::Regular;
}

PointClass classify_point(const ProfileTriple& t, const CylinderPoint& p) {
    return classify_point(t, p, branch_tolerance(t));
}

std::vector<CylinderPoint> group_orbit(const ProfileTriple& t, const CylinderPoint& p) {
    auto s1 = [&](CylinderPoint q) {
        return CylinderPoint{-q.theta1, 0.5 * t.omega2() - q.theta2, q.theta3};
    };
    auto s2 = [&](CylinderPoint q) {
        return CylinderPoint{q.theta1, -q.theta2, -q.theta3};
    };
    std::vector<CylinderPoint> orbit{reduce(t, p), reduce(t, s1(p)), reduce(t, s2(p)),
                                     reduce(t, s1(s2(p)))};
    // collapse duplicates at fixed points
    const double tol = branch_tolerance(t);
    std::vector<CylinderPoint> out;
    for (const auto& q : orbit) {
        bool dup = false;
        for (const auto& r : out) {
            if (lattice_distance(q.theta1, r.theta1, t.omega1()) < tol &&
                lattice_distance(q.theta2, r.theta2, t.omega2()) < tol &&
                std::abs(q.theta3 - r.theta3) < tol) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(q);
    }
    return out;
}

std::vector<std::array<double, 2>> symmetry_orbit_boundary(const ProfileTriple& t,
                                                           double theta1, double theta2) {
    // orbit under the 8-element group generated by the three boundary
    // isometries theta1 -> -theta1, theta1 -> omega1/2 - theta1,
    // theta2 -> -theta2 (the remaining listed reflection is their product
    // with the deck transformation and adds no new orbit points on Gamma)
    const double om1 = t.omega1(), om2 = t.omega2();
    std::vector<std::array<double, 2>> out;
    const double tol = branch_tolerance(t);
    auto push_unique = [&](double a, double b) {
        a = mod_positive(a, om1);
        b = mod_positive(b, om2);
        for (const auto& q : out)
            if (lattice_distance(a, q[0], om1) < tol && lattice_distance(b, q[1], om2) < tol)
                return;
        out.push_back({a, b});
    };
    for (int i = 0; i < 4; ++i) {
        double a = (i & 1) ? -theta1 : theta1;
        if (i & 2) a = 0.5 * om1 - a;
        for (int j = 0; j < 2; ++j) {
            double b = (j & 1) ? -theta2 : theta2;
            push_unique(a, b);
        }
    }
    return out;
}

MetricCoeffs metric_coeffs(const ProfileTriple& t, const CylinderPoint& p) {
    MetricCoeffs m;
    m.phi1 = t.phi(1, p.theta1);
    m.phi2 = t.phi(2, p.theta2);
    m.phi3 = t.phi(3, p.theta3);
    m.Pi1 = (m.phi1 - m.phi2) * (m.phi1 - m.phi3);
    m.Pi2 = (m.phi1 - m.phi2) * (m.phi2 - m.phi3);
    m.Pi3 = (m.phi1 - m.phi3) * (m.phi2 - m.phi3);
    return m;
}

std::array<double, 3> integral_coeffs_I1(const ProfileTriple& t, const CylinderPoint& p) {
    MetricCoeffs m = metric_coeffs(t, p);
    return {(m.phi2 + m.phi3) * m.Pi1, (m.phi1 + m.phi3) * m.Pi2,
            (m.phi1 + m.phi2) * m.Pi3};
}

std::array<double, 3> integral_coeffs_I2(const ProfileTriple& t, const CylinderPoint& p) {
    MetricCoeffs m = metric_coeffs(t, p);
    return {(m.phi2 * m.phi3) * m.Pi1, (m.phi1 * m.phi3) * m.Pi2,
            (m.phi1 * m.phi2) * m.Pi3};
}

PushforwardProbe pushforward_probe(const ProfileTriple& t, double x1, double x2,
                                   double x3) {
    if (std::abs(x1) >= 0.125 * t.omega1() || std::abs(x2) >= 0.125 * t.omega2())
        throw OutOfRange("pushforward_probe: chart bounds |x_k| < omega_k/8");
    PushforwardProbe r;
    // chart centered at theta1 = 0, theta2 = omega2/4
    double ph3 = t.phi(3, x3);
    r.g33 = (t.phi(1, x1) - ph3) * (t.phi(2, 0.25 * t.omega2() + x2) - ph3);
    double rr = x1 * x1 + x2 * x2;
    if (rr == 0.0) {
        // radial limit of the chart coefficients: g11 = g22 = (a1/4)(nu1 - phi3)
        double a1 = 0.5 * t.ddphi(1, 0.0);
        r.g11 = r.g22 = 0.25 * a1 * (t.nu1() - ph3);
        r.g12 = 0.0;
        r.A11 = r.A22 = t.nu1();
        r.A12 = 0.0;
        r.A33 = ph3;
        return r;
    }
    double ph1 = t.phi(1, x1);
    double ph2 = t.phi(2, 0.25 * t.omega2() + x2);
    double q = (ph1 - ph2) / rr;
    r.g11 = 0.25 * q * ((ph1 - ph3) * x1 * x1 + (ph2 - ph3) * x2 * x2) / rr;
    r.g22 = 0.25 * q * ((ph1 - ph3) * x2 * x2 + (ph2 - ph3) * x1 * x1) / rr;
    r.g12 = 0.25 * q * q * x1 * x2;
    r.A11 = (ph1 * x1 * x1 + ph2 * x2 * x2) / rr;
    r.A22 = (ph1 * x2 * x2 + ph2 * x1 * x1) / rr;
    r.A12 = q * x1 * x2;
    r.A33 = ph3;
    return r;
}

} // namespace lbt::covering
