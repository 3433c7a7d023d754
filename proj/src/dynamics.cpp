#include "lbt/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace lbt::dynamics {

namespace {

using Vec6 = std::array<double, 6>;

Vec6 to_vec(const PhasePoint& z) {
    return {z.theta1, z.theta2, z.theta3, z.p1, z.p2, z.p3};
}

PhasePoint to_point(const Vec6& y) { return {y[0], y[1], y[2], y[3], y[4], y[5]}; }

struct Rhs {
    const ProfileTriple& t;

    Vec6 operator()(const Vec6& y) const {
        double f1 = t.phi(1, y[0]), f2 = t.phi(2, y[1]), f3 = t.phi(3, y[2]);
        double d1 = t.dphi(1, y[0]), d2 = t.dphi(2, y[1]), d3 = t.dphi(3, y[2]);
        double Pi1 = (f1 - f2) * (f1 - f3);
        double Pi2 = (f1 - f2) * (f2 - f3);
        double Pi3 = (f1 - f3) * (f2 - f3);
        double q1 = y[3] / Pi1, q2 = y[4] / Pi2, q3 = y[5] / Pi3;
        // dPi_j/dtheta_k
        double P11 = d1 * (2.0 * f1 - f2 - f3), P12 = -d2 * (f1 - f3), P13 = -d3 * (f1 - f2);
        double P21 = d1 * (f2 - f3), P22 = d2 * (f1 - 2.0 * f2 + f3), P23 = -d3 * (f1 - f2);
        double P31 = d1 * (f2 - f3), P32 = d2 * (f1 - f3), P33 = -d3 * (f1 + f2 - 2.0 * f3);
        Vec6 dy;
        dy[0] = 2.0 * y[3] / Pi1;
        dy[1] = 2.0 * y[4] / Pi2;
        dy[2] = 2.0 * y[5] / Pi3;
        dy[3] = q1 * q1 * P11 + q2 * q2 * P21 + q3 * q3 * P31;
        dy[4] = q1 * q1 * P12 + q2 * q2 * P22 + q3 * q3 * P32;
        dy[5] = q1 * q1 * P13 + q2 * q2 * P23 + q3 * q3 * P33;
        return dy;
    }
};

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output constants
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

struct DenseStep {
    Vec6 r1, r2, r3, r4, r5;
    double t0 = 0.0, h = 0.0;

    Vec6 eval(double tau) const { // tau in [0,1]
        Vec6 y;
        double om = 1.0 - tau;
        for (int i = 0; i < 6; ++i)
            y[i] = r1[i] + tau * (r2[i] + om * (r3[i] + tau * (r4[i] + om * r5[i])));
        return y;
    }
};

struct Dopri5 {
    const Rhs& rhs;
    double rtol, atol;
    Vec6 y;
    double t = 0.0;
    Vec6 k1; // FSAL
    double h = 0.0;
    DenseStep dense;
    Vec6 y_prev, k_prev; // state at the start of the last accepted step
    double h_last = 0.0;

    Dopri5(const Rhs& f, const Vec6& y0, double tol) : rhs(f), rtol(tol), atol(tol), y(y0) {
        k1 = rhs(y);
        double fmax = 1e-30;
        for (int i = 0; i < 6; ++i)
            fmax = std::max(fmax, std::abs(k1[i]) / (std::abs(y[i]) + 1.0));
        h = 0.01 / fmax;
    }

    // single fixed RK step of size hh from (y0, f(y0) = k0)
    Vec6 fixed_step(const Vec6& y0, const Vec6& k0, double hh) const {
        Vec6 k2, k3, k4, k5, k6, yt;
        for (int i = 0; i < 6; ++i) yt[i] = y0[i] + hh * a21 * k0[i];
        k2 = rhs(yt);
        for (int i = 0; i < 6; ++i) yt[i] = y0[i] + hh * (a31 * k0[i] + a32 * k2[i]);
        k3 = rhs(yt);
        for (int i = 0; i < 6; ++i)
            yt[i] = y0[i] + hh * (a41 * k0[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = rhs(yt);
        for (int i = 0; i < 6; ++i)
            yt[i] = y0[i] + hh * (a51 * k0[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = rhs(yt);
        for (int i = 0; i < 6; ++i)
            yt[i] = y0[i] + hh * (a61 * k0[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                  a65 * k5[i]);
        k6 = rhs(yt);
        Vec6 y5;
        for (int i = 0; i < 6; ++i)
            y5[i] = y0[i] + hh * (b1 * k0[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                  b6 * k6[i]);
        return y5;
    }

    // land exactly on theta3 = side*N: re-integrate the fraction of the last
    // step, then Newton in time along the vector field
    Vec6 refine_event(double tau, int side, double N) const {
        Vec6 ye = fixed_step(y_prev, k_prev, tau * h_last);
        for (int it = 0; it < 4; ++it) {
            Vec6 f = rhs(ye);
            double g = ye[2] - side * N;
            if (std::abs(f[2]) < 1e-300) break;
            double dt = -g / f[2];
            for (int i = 0; i < 6; ++i) ye[i] += f[i] * dt;
            if (std::abs(dt) < 1e-16 * (std::abs(h_last) + 1.0)) break;
        }
        ye[2] = side * N;
        return ye;
    }

    // one accepted step; fills dense; returns false when the step size dies
    bool step() {
        for (int attempt = 0; attempt < 200; ++attempt) {
            Vec6 k2, k3, k4, k5, k6, k7, yt;
            for (int i = 0; i < 6; ++i) yt[i] = y[i] + h * a21 * k1[i];
            k2 = rhs(yt);
            for (int i = 0; i < 6; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
            k3 = rhs(yt);
            for (int i = 0; i < 6; ++i)
                yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            k4 = rhs(yt);
            for (int i = 0; i < 6; ++i)
                yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            k5 = rhs(yt);
            for (int i = 0; i < 6; ++i)
                yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                    a65 * k5[i]);
            k6 = rhs(yt);
            Vec6 y5;
            for (int i = 0; i < 6; ++i)
                y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                    b6 * k6[i]);
            k7 = rhs(y5);
            double err = 0.0;
            for (int i = 0; i < 6; ++i) {
                double sk = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
                double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                 e6 * k6[i] + e7 * k7[i]);
                err += (ei / sk) * (ei / sk);
            }
            err = std::sqrt(err / 6.0);
            double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-30), -0.2), 0.2, 5.0);
            if (err <= 1.0) {
                dense.t0 = t;
                dense.h = h;
                y_prev = y;
                k_prev = k1;
                h_last = h;
                for (int i = 0; i < 6; ++i) {
                    double dy = y5[i] - y[i];
                    dense.r1[i] = y[i];
                    dense.r2[i] = dy;
                    dense.r3[i] = h * k1[i] - dy;
                    dense.r4[i] = dy - h * k7[i] - dense.r3[i];
                    dense.r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                       d6 * k6[i] + d7 * k7[i]);
                }
                t += h;
                y = y5;
                k1 = k7;
                h *= fac;
                return true;
            }
            h *= fac;
            if (!(h > 1e-14 * (std::abs(t) + 1.0))) return false;
        }
        return false;
    }
};

constexpr double kBranchGuard = 1e-7;

} // namespace

std::array<double, 3> hamiltonian_values(const ProfileTriple& t, const PhasePoint& z) {
    covering::CylinderPoint cp{z.theta1, z.theta2, z.theta3};
    if (covering::classify_point(t, cp) != covering::PointClass::Regular)
        throw BranchSetEvaluation("hamiltonian_values: point on the branch set");
    covering::MetricCoeffs m = covering::metric_coeffs(t, cp);
    double u1 = z.p1 * z.p1 / m.Pi1, u2 = z.p2 * z.p2 / m.Pi2, u3 = z.p3 * z.p3 / m.Pi3;
    double H = u1 + u2 + u3;
    double I1 = (m.phi2 + m.phi3) * u1 + (m.phi1 + m.phi3) * u2 + (m.phi1 + m.phi2) * u3;
    double I2 = m.phi2 * m.phi3 * u1 + m.phi1 * m.phi3 * u2 + m.phi1 * m.phi2 * u3;
    return {H, I1, I2};
}

std::array<double, 3> stackel_residuals(const ProfileTriple& t, const PhasePoint& z) {
    auto [H, I1, I2] = hamiltonian_values(t, z);
    double f1 = t.phi(1, z.theta1), f2 = t.phi(2, z.theta2), f3 = t.phi(3, z.theta3);
    return {z.p1 * z.p1 - (f1 * f1 * H - f1 * I1 + I2),
            z.p2 * z.p2 - (-f2 * f2 * H + f2 * I1 - I2),
            z.p3 * z.p3 - (f3 * f3 * H - f3 * I1 + I2)};
}

std::array<double, 2> boundary_integrals(const ProfileTriple& t,
                                         const BoundaryCovector& xi) {
    covering::CylinderPoint cp{xi.theta1, xi.theta2, xi.side * t.halfwidth()};
    covering::MetricCoeffs m = covering::metric_coeffs(t, cp);
    double nu3 = t.nu3();
    double u1 = xi.p1 * xi.p1 / m.Pi1, u2 = xi.p2 * xi.p2 / m.Pi2;
    double cI1 = (m.phi1 + m.phi2) - (m.phi1 - nu3) * u1 - (m.phi2 - nu3) * u2;
    double cI2 = m.phi1 * m.phi2 - m.phi2 * (m.phi1 - nu3) * u1 -
                 m.phi1 * (m.phi2 - nu3) * u2;
    return {cI1, cI2};
}

PhasePoint reflect(const ProfileTriple& t, const PhasePoint& z) {
    double N = t.halfwidth();
    if (std::abs(std::abs(z.theta3) - N) > 1e-9 * N)
        throw NotOnBoundary("reflect: |theta3| != N");
    PhasePoint r = z;
    r.p3 = -r.p3;
    return r;
}

FlowResult integrate_to_boundary(const ProfileTriple& t, const PhasePoint& z0,
                                 double tol, const StepObserver& obs) {
    const double N = t.halfwidth();
    Rhs rhs{t};
    Dopri5 stepper(rhs, to_vec(z0), tol);
    if (obs) obs(0.0, z0);

    auto check_branch = [&](const Vec6& y) {
        covering::CylinderPoint cp{y[0], y[1], y[2]};
        if (covering::branch_distance(t, cp) < kBranchGuard)
            throw BranchProximity("trajectory within the branch-set guard");
    };
    check_branch(to_vec(z0));

    const int max_steps = 2000000;
    for (int n = 0; n < max_steps; ++n) {
        if (!stepper.step()) throw StepFailure("integrate_to_boundary: step size collapse");
        const DenseStep& d = stepper.dense;
        // scan the dense output for a boundary crossing
        auto g = [&](double tau, int side) { return d.eval(tau)[2] - side * N; };
        const int ns = 8;
        double found_tau = -1.0;
        int found_side = 0;
        for (int side : {+1, -1}) {
            double prev = g(0.0, side);
            for (int i = 1; i <= ns; ++i) {
                double tau = double(i) / ns;
                double cur = g(tau, side);
                bool interior_prev = (side > 0) ? (prev < 0.0) : (prev > 0.0);
                if (interior_prev && prev * cur <= 0.0 && cur != prev) {
                    // bisect
                    double lo = double(i - 1) / ns, hi = tau;
                    for (int it = 0; it < 80; ++it) {
                        double mid = 0.5 * (lo + hi);
                        double gm = g(mid, side);
                        if ((gm < 0.0) == (prev < 0.0)) lo = mid;
                        else hi = mid;
                        if (hi - lo < 1e-16) break;
                    }
                    double tau_star = 0.5 * (lo + hi);
                    if (found_tau < 0 || tau_star < found_tau) {
                        found_tau = tau_star;
                        found_side = side;
                    }
                    break;
                }
                prev = cur;
            }
        }
        if (found_tau >= 0.0) {
            Vec6 yb = stepper.refine_event(found_tau, found_side, N);
            PhasePoint zb = to_point(yb);
            double tb = d.t0 + found_tau * d.h;
            if (obs) obs(tb, zb);
            return {zb, tb, found_side};
        }
        check_branch(stepper.y);
        if (obs) obs(stepper.t, to_point(stepper.y));
    }
    throw StepFailure("integrate_to_boundary: too many steps");
}

PhasePoint lift_inward(const ProfileTriple& t, const BoundaryCovector& xi) {
    double N = t.halfwidth();
    covering::CylinderPoint cp{xi.theta1, xi.theta2, xi.side * N};
    covering::MetricCoeffs m = covering::metric_coeffs(t, cp);
    double margin = 1.0 - xi.p1 * xi.p1 / m.Pi1 - xi.p2 * xi.p2 / m.Pi2;
    if (margin <= 1e-10)
        throw GlancingRay("billiard_map: coball margin below threshold");
    PhasePoint z;
    z.theta1 = xi.theta1;
    z.theta2 = xi.theta2;
    z.theta3 = xi.side * N;
    z.p1 = xi.p1;
    z.p2 = xi.p2;
    z.p3 = -double(xi.side) * std::sqrt(m.Pi3 * margin);
    return z;
}

BoundaryCovector billiard_map(const ProfileTriple& t, const BoundaryCovector& xi,
                              double tol, const StepObserver& obs, double* flight_time) {
    PhasePoint z = lift_inward(t, xi);
    FlowResult fr = integrate_to_boundary(t, z, tol, obs);
    if (flight_time) *flight_time = fr.time;
    BoundaryCovector out;
    out.theta1 = fr.state.theta1;
    out.theta2 = fr.state.theta2;
    out.p1 = fr.state.p1;
    out.p2 = fr.state.p2;
    out.side = fr.hit_side;
    return out;
}

ConservationReport conservation_report(const ProfileTriple& t, const BoundaryCovector& xi0,
                                       int n_bounces, double tol) {
    ConservationReport rep;
    PhasePoint z = lift_inward(t, xi0);
    auto ref = hamiltonian_values(t, z);
    auto track = [&](const PhasePoint& p) {
        // relative drift with a unit floor: the integrals can legitimately
        // vanish (h1 = kappa1 + kappa2 = 0 is an interior torus)
        auto v = hamiltonian_values(t, p);
        rep.driftH = std::max(rep.driftH,
                              std::abs(v[0] - ref[0]) / std::max(1.0, std::abs(ref[0])));
        rep.driftI1 = std::max(rep.driftI1,
                               std::abs(v[1] - ref[1]) / std::max(1.0, std::abs(ref[1])));
        rep.driftI2 = std::max(rep.driftI2,
                               std::abs(v[2] - ref[2]) / std::max(1.0, std::abs(ref[2])));
    };
    for (int i = 0; i < n_bounces; ++i) {
        FlowResult fr = integrate_to_boundary(t, z, tol);
        track(fr.state);
        z = reflect(t, fr.state);
        ++rep.bounces;
    }
    return rep;
}

} // namespace lbt::dynamics
