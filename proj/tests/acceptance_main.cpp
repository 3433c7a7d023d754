// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Two checks are known-red on the reference table and are reported with
// their measured values: the pointwise rotation-function window (the
// approach of rho to 2 is logarithmic, so rho(nu1 - 1e-6) = 2.127) and the
// (1,0,3) rational-torus request (the case-A rotation image is a thin strip
// that contains no point with both coordinates in (1/3)Z; the nearest
// feasible resonance (3,4,9) is demonstrated instead).
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <vector>

#include "lbt/cli.hpp"
#include "lbt/covering.hpp"
#include "lbt/dynamics.hpp"
#include "lbt/frequency.hpp"
#include "lbt/legendre.hpp"
#include "lbt/profiles.hpp"
#include "lbt/quadrature.hpp"
#include "lbt/radon.hpp"
#include "lbt/tori.hpp"

using namespace lbt;

namespace {

int g_failures = 0;

void report(int num, const char* what, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s  (%s)\n", ok ? "PASS" : "FAIL", num, what,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double now_seconds() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

double rnd(std::uint64_t& s) {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return double(s >> 11) * 0x1.0p-53;
}

template <class Fn>
void parallel_over(int n, Fn&& fn) {
    int threads = std::min<unsigned>(std::thread::hardware_concurrency(), n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < int(threads); ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

// ---- criteria ----

void criterion1(const profiles::ProfileTriple& t) {
    double t0 = now_seconds();
    auto s = tori::make_spec(t, -0.5, 0.5);
    auto xi = tori::torus_point(t, s, 0.7, 0.1);
    auto rep = dynamics::conservation_report(t, xi, 100, 1e-10);
    double dt = now_seconds() - t0;
    bool ok = rep.driftH < 1e-7 && rep.driftI1 < 1e-7 && rep.driftI2 < 1e-7 && dt < 10.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "drift H=%.2e I1=%.2e I2=%.2e over 100 bounces, %.2f s", rep.driftH,
                  rep.driftI1, rep.driftI2, dt);
    report(1, "conservation over 100 bounces at tol 1e-10", ok, buf);
}

void criterion2(const profiles::ProfileTriple& t) {
    std::uint64_t sd = 0xfeed;
    bool bitwise = true;
    for (int i = 0; i < 200; ++i) {
        dynamics::PhasePoint z{t.omega1() * rnd(sd), t.omega2() * rnd(sd),
                               (2.0 * rnd(sd) - 1.0) * t.halfwidth(),
                               2.0 * rnd(sd) - 1.0, 2.0 * rnd(sd) - 1.0,
                               2.0 * rnd(sd) - 1.0};
        z.theta3 = (i % 2 ? 1.0 : -1.0) * t.halfwidth();
        covering::CylinderPoint cp{z.theta1, z.theta2, z.theta3};
        if (covering::branch_distance(t, cp) < 0.2) continue;
        auto a = dynamics::hamiltonian_values(t, z);
        auto b = dynamics::hamiltonian_values(t, dynamics::reflect(t, z));
        if (a[0] != b[0] || a[1] != b[1] || a[2] != b[2]) bitwise = false;
    }
    // Poisson brackets at 1000 regular points, H normalised to 1
    const double h = 1e-5;
    auto value = [&](int which, const dynamics::PhasePoint& z) {
        return dynamics::hamiltonian_values(t, z)[which];
    };
    auto bracket = [&](int fa, int fb, const dynamics::PhasePoint& z) {
        double acc = 0.0;
        for (int k = 0; k < 3; ++k) {
            dynamics::PhasePoint zp = z, zm = z;
            double* q[3] = {&zp.theta1, &zp.theta2, &zp.theta3};
            double* qm[3] = {&zm.theta1, &zm.theta2, &zm.theta3};
            *q[k] += h;
            *qm[k] -= h;
            double fa_q = (value(fa, zp) - value(fa, zm)) / (2 * h);
            double fb_q = (value(fb, zp) - value(fb, zm)) / (2 * h);
            zp = z;
            zm = z;
            double* p[3] = {&zp.p1, &zp.p2, &zp.p3};
            double* pm[3] = {&zm.p1, &zm.p2, &zm.p3};
            *p[k] += h;
            *pm[k] -= h;
            double fa_p = (value(fa, zp) - value(fa, zm)) / (2 * h);
            double fb_p = (value(fb, zp) - value(fb, zm)) / (2 * h);
            acc += fa_q * fb_p - fa_p * fb_q;
        }
        return acc;
    };
    double worst = 0.0;
    int done = 0;
    while (done < 1000) {
        dynamics::PhasePoint z{t.omega1() * rnd(sd), t.omega2() * rnd(sd),
                               1.9 * t.halfwidth() * (rnd(sd) - 0.5),
                               2.0 * rnd(sd) - 1.0, 2.0 * rnd(sd) - 1.0,
                               2.0 * rnd(sd) - 1.0};
        covering::CylinderPoint cp{z.theta1, z.theta2, z.theta3};
        if (covering::branch_distance(t, cp) < 0.25) continue;
        double H = value(0, z);
        if (H < 1e-6) continue;
        double c = 1.0 / std::sqrt(H);
        z.p1 *= c;
        z.p2 *= c;
        z.p3 *= c;
        worst = std::max({worst, std::abs(bracket(0, 1, z)), std::abs(bracket(0, 2, z)),
                          std::abs(bracket(1, 2, z))});
        ++done;
    }
    bool ok = bitwise && worst < 1e-9;
    char buf[120];
    std::snprintf(buf, sizeof(buf), "bitwise=%s, max |{.,.}| = %.2e at 1000 points",
                  bitwise ? "yes" : "no", worst);
    report(2, "reflection invariance and Poisson commutation", ok, buf);
}

void criterion3(const profiles::ProfileTriple&) {
    std::uint64_t sd = 0x12345;
    quad::QuadratureSpec s;
    s.at_a = quad::Singularity::InverseSqrt;
    s.at_b = quad::Singularity::InverseSqrt;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        double a = 3.0 * rnd(sd) + 1e-3, b = 3.0 * rnd(sd) + 1e-3;
        double x1 = std::max(a, b), x2 = std::min(a, b);
        int k = trial % 21;
        quad::QuadratureSpec sp = s;
        sp.a = x2;
        sp.b = x1;
        double scaled = quad::integrate(
                            [&](double z) {
                                return std::pow(z / x1, k) /
                                       std::sqrt((x1 - z) * (z - x2));
                            },
                            sp)
                            .value;
        double oracle = scaled * std::pow(x1, k);
        double closed = legendre::R_k(x1, x2, k);
        worst = std::max(worst,
                         std::abs(closed - oracle) / std::max(M_PI, std::abs(closed)));
    }
    double adams = 0.0;
    for (int m = 0; m <= 12; ++m)
        for (int k = 0; 2 * k <= m; ++k)
            for (int iz = 0; iz <= 40; ++iz) {
                double z = -1.0 + 2.0 * iz / 40.0;
                double lhs = legendre::legendre_P(k, z) * legendre::legendre_P(m - k, z);
                double rhs = 0.0;
                for (int r = 0; 2 * r <= m; ++r)
                    rhs += legendre::adams_coeff(m, k, r) *
                           legendre::legendre_P(m - 2 * r, z);
                adams = std::max(adams, std::abs(lhs - rhs));
            }
    bool ok = worst < 1e-9 && adams < 1e-12;
    char buf[140];
    std::snprintf(buf, sizeof(buf),
                  "max kernel resid %.2e (relative, floored at R0), Adams resid %.2e",
                  worst, adams);
    report(3, "Legendre kernel identity and Adams expansion", ok, buf);
}

void criterion4(const profiles::ProfileTriple& t) {
    const char* names[3] = {"one", "trig", "product"};
    struct Job {
        double k1, k2;
        const char* name;
    };
    std::vector<Job> jobs;
    for (const char* nm : names)
        for (double k1 : {-0.7, -0.5, -0.3}) {
            for (double k2 : {0.3, 0.5, 0.7}) jobs.push_back({k1, k2, nm});
            for (double k2 : {1.2, 1.5, 1.8}) jobs.push_back({k1, k2, nm});
        }
    std::vector<double> errs(jobs.size(), 1.0);
    parallel_over(int(jobs.size()), [&](int i) {
        auto K = radon::kernel_by_name(t, jobs[i].name);
        auto s = tori::make_spec(t, jobs[i].k1, jobs[i].k2);
        double rt = radon::radon_torus(t, K, radon::MuChoice::Unit, s);
        double rx = radon::radon_torus_xspace(t, K, radon::MuChoice::Unit, s);
        errs[i] = std::abs(rt - rx) / std::max(1e-30, std::abs(rt));
    });
    double worst = 0.0;
    for (double e : errs) worst = std::max(worst, e);
    bool ok = worst < 1e-7;
    char buf[120];
    std::snprintf(buf, sizeof(buf),
                  "max relative gap %.2e over 3x3 A + 3x3 B grids x 3 kernels", worst);
    report(4, "two-route Radon equality (theta vs x space)", ok, buf);
}

void criterion5(const profiles::ProfileTriple& t) {
    auto s = tori::make_spec(t, -0.4, 0.6);
    radon::BoundaryFunction c{[](double, double) { return 1.7; }, true};
    double rc = radon::radon_torus(t, c, radon::MuChoice::Unit, s);
    double rodd = radon::radon_torus(t, radon::kernel_by_name(t, "codd"),
                                     radon::MuChoice::Unit, s);
    bool ok = std::abs(rc - 1.7) < 1e-10 && std::abs(rodd) < 1e-10;
    char buf[120];
    std::snprintf(buf, sizeof(buf), "|R(c)-c| = %.2e, |R(odd)| = %.2e",
                  std::abs(rc - 1.7), std::abs(rodd));
    report(5, "Radon trivialities: constants and G-odd kernels", ok, buf);
}

void criterion6(const profiles::ProfileTriple& t) {
    struct Spec {
        double k1, k2;
    };
    std::vector<Spec> specs = {
        {-0.7, 0.3}, {-0.5, 0.5}, {-0.3, 0.7}, {-0.6, 0.6}, {-0.4, 0.4}};
    std::vector<double> errs(specs.size(), 1.0);
    parallel_over(int(specs.size()), [&](int i) {
        auto s = tori::make_spec(t, specs[i].k1, specs[i].k2);
        auto om = freq::frequencies(t, s.k1, s.k2);
        auto er = freq::empirical_rotation(t, s, 10000, 1e-10, 0.37 * t.omega1(), 0.0);
        errs[i] = std::max(std::abs(er.w1 - om.first / (2.0 * M_PI)),
                           std::abs(er.w2 - om.second / (2.0 * M_PI)));
    });
    double worst = 0.0;
    for (double e : errs) worst = std::max(worst, e);
    bool ok_a = worst < 1e-4;

    // the (1,0,3) request: no case-A torus of this table carries a rotation
    // vector with both coordinates in (1/3)Z (thin-strip image); report the
    // honest outcome and demonstrate the nearest feasible resonance (3,4,9)
    bool ok_b = false;
    std::string detail_b = "no solution";
    try {
        auto s = radon::find_rational_torus(t, 1, 0, 3);
        auto xi0 = tori::torus_point(t, s, 1.234, 0.05);
        auto xi = xi0;
        for (int j = 0; j < 3; ++j) xi = dynamics::billiard_map(t, xi, 1e-11);
        double gap = radon::covector_distance(t, xi, xi0);
        ok_b = gap < 1e-6;
        detail_b = "closure gap " + cli::format_double(gap);
    } catch (const Error& e) {
        detail_b = std::string("NoRoot: ") + e.what();
    }
    double gap9 = 1.0;
    try {
        auto s9 = radon::find_rational_torus(t, 3, 4, 9);
        auto xi0 = tori::torus_point(t, s9, 1.234, 0.05);
        auto xi = xi0;
        for (int j = 0; j < 9; ++j) xi = dynamics::billiard_map(t, xi, 1e-11);
        gap9 = radon::covector_distance(t, xi, xi0);
    } catch (const Error&) {
    }
    char buf[200];
    std::snprintf(buf, sizeof(buf), "max |w-Omega/2pi| = %.2e over 5 specs x 1e4 iterates",
                  worst);
    report(6, "frequency cross-validation (winding oracle)", ok_a, buf);
    std::snprintf(buf, sizeof(buf),
                  "%s; feasible resonance (3,4,9) closes after 9 to %.2e", detail_b.c_str(),
                  gap9);
    report(6, "rational torus (1,0,3) closing after 3 bounces", ok_b, buf);
}

void criterion7(const profiles::ProfileTriple& t) {
    double t0 = now_seconds();
    const int n = 10;
    std::vector<double> jac(n * n), fdrel(n * n);
    parallel_over(n * n, [&](int idx) {
        int i = idx / n, j = idx % n;
        double k1 = t.nu3() * (1.0 - (i + 1.0) / (n + 1.0));
        double k2 = t.nu1() * (j + 1.0) / (n + 1.0);
        double jq = freq::jacobian(t, k1, k2);
        const double h1 = 2e-5 * std::abs(t.nu3()), h2 = 2e-5 * t.nu1();
        auto pp = freq::frequencies(t, k1 + h1, k2);
        auto mm = freq::frequencies(t, k1 - h1, k2);
        auto p2 = freq::frequencies(t, k1, k2 + h2);
        auto m2 = freq::frequencies(t, k1, k2 - h2);
        double d11 = (pp.first - mm.first) / (2 * h1);
        double d21 = (pp.second - mm.second) / (2 * h1);
        double d12 = (p2.first - m2.first) / (2 * h2);
        double d22 = (p2.second - m2.second) / (2 * h2);
        double jfd = d11 * d22 - d12 * d21;
        jac[idx] = jq;
        fdrel[idx] = std::abs(jq - jfd) / std::max(1e-30, std::abs(jq));
    });
    double minj = 1e300, worstfd = 0.0;
    for (int i = 0; i < n * n; ++i) {
        minj = std::min(minj, std::abs(jac[i]));
        worstfd = std::max(worstfd, fdrel[i]);
    }
    double dt = now_seconds() - t0;
    bool ok = minj > 0.0 && worstfd < 1e-4 && dt < 60.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "min |J| = %.3e, max FD gap %.2e, %.1f s", minj,
                  worstfd, dt);
    report(7, "frequency-map non-degeneracy on a 10x10 grid", ok, buf);
}

void criterion8(const profiles::ProfileTriple& t) {
    double worst = 0.0;
    for (double k2 : {0.3, 0.5, 0.7}) {
        double delta = freq::delta_limit(t, k2);
        std::vector<double> xs, ys;
        for (int j = 2; j <= 4; ++j) {
            double k1 = t.nu3() + std::pow(10.0, -j);
            xs.push_back(std::sqrt(k1 - t.nu3()));
            ys.push_back(freq::normalized_jacobian(t, k1, k2));
        }
        double x0 = xs[0], x1 = xs[1], x2 = xs[2];
        double c0 = ys[0] * (x1 * x2) / ((x0 - x1) * (x0 - x2)) +
                    ys[1] * (x0 * x2) / ((x1 - x0) * (x1 - x2)) +
                    ys[2] * (x0 * x1) / ((x2 - x0) * (x2 - x1));
        worst = std::max(worst, std::abs(c0 - delta) / std::abs(delta));
    }
    bool ok = worst < 1e-3;
    char buf[120];
    std::snprintf(buf, sizeof(buf), "max Richardson gap %.2e at 3 kappa2 values", worst);
    report(8, "delta-limit consistency of the normalised Jacobian", ok, buf);
}

void criterion9(const profiles::ProfileTriple& t) {
    double r = freq::boundary_rotation(t, t.nu1() - 1e-6);
    bool ok_a = std::abs(r - 2.0) < 0.05;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "rho(nu1-1e-6) = %.5f (the approach to 2 is logarithmic: "
                  "|rho-2| < 0.05 needs nu1-kappa ~ 1e-36)",
                  r);
    report(9, "rotation-function value at nu1 - 1e-6 within 0.05 of 2", ok_a, buf);

    double G0 = t.edge_data(1, true).G0;
    double expect = 2.0 * G0 * std::sqrt(t.nu1() - t.nu3());
    std::vector<double> alphas, e1, e2;
    for (double d = 1e-6; d < 2e-3; d *= 4.0) {
        alphas.push_back(-d);
        e1.push_back(freq::edge_integral_1(t, t.nu1() - d));
        e2.push_back(freq::edge_integral_2(t, t.nu1() - d));
    }
    auto f1 = quad::fit_log_coefficient(alphas, e1);
    auto f2 = quad::fit_log_coefficient(alphas, e2);
    double g1 = std::abs(-f1.c - expect) / expect;
    double g2 = std::abs(-f2.c - expect) / expect;
    bool ok_b = g1 < 0.02 && g2 < 0.02;
    std::snprintf(buf, sizeof(buf),
                  "fitted log coefficients %.5f / %.5f vs 2 G(0) sqrt(nu1-nu3) = %.5f "
                  "(gaps %.1f%% / %.1f%%), ratio -> %.6f",
                  -f1.c, -f2.c, expect, 100 * g1, 100 * g2, f1.c / f2.c);
    report(9, "log blow-up coefficients of the boundary integrals within 2%", ok_b, buf);
}

void criterion10(const profiles::ProfileTriple& t) {
    auto rc = radon::rigidity_certificate(t, 8);
    int d = 4;
    std::vector<double> target(radon::monomial_count(d), 0.0);
    target[0] = 0.4;
    target[2] = -0.7;
    target[3] = 0.25;
    target[5] = 0.1;
    target[8] = -0.05;
    auto psi = [&](double u, double v) {
        return radon::eval_reconstruction(t, target, d, u, v);
    };
    auto coef = radon::reconstruct_from_moments(t, psi, d);
    double resid = 0.0;
    for (std::size_t i = 0; i < coef.size(); ++i)
        resid = std::max(resid, std::abs(coef[i] - target[i]));
    bool ok = rc.min_sv > 0.0 && resid < 1e-6;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "degree-8 Gram: dim %d, min sv %.3e (max %.3e); degree-4 "
                  "reconstruction resid %.2e",
                  rc.dim, rc.min_sv, rc.max_sv, resid);
    report(10, "rigidity certificate and moment reconstruction", ok, buf);
}

void criterion11(const profiles::ProfileTriple& t) {
    auto s = radon::find_rational_torus(t, 3, 4, 9);
    auto K = radon::kernel_by_name(t, "trig");
    double rad = radon::radon_torus(t, K, radon::MuChoice::Unit, s);
    const int starts = 200;
    std::uint64_t sd = 0x4242;
    std::vector<double> th1v(starts), chiv(starts);
    std::vector<int> quarter(starts);
    for (int i = 0; i < starts; ++i) {
        th1v[i] = t.omega1() * (i + rnd(sd)) / starts;
        chiv[i] = 0.5 * M_PI * std::fmod(0.6180339887498949 * i + rnd(sd), 1.0);
        quarter[i] = i % 4;
    }
    std::vector<double> means(starts), weights(starts, 0.0);
    parallel_over(starts, [&](int i) {
        double x2 = s.k2 * std::sin(chiv[i]) * std::sin(chiv[i]);
        double th2 = t.inverse_branch(2, x2);
        if (quarter[i] & 1) th2 = -th2;
        tori::TorusSpec si = s;
        si.eps2 = (quarter[i] < 2) ? +1 : -1;
        double ph1 = t.phi(1, th1v[i]);
        double p1sq = (ph1 - s.k1) * (ph1 - s.k2);
        double w = (ph1 - x2) / std::sqrt(p1sq) * t.density_unguarded(2, x2) * 2.0 *
                   std::sqrt(s.k2) * std::sin(chiv[i]) / std::sqrt(x2 - s.k1);
        try {
            auto xi = tori::torus_point(t, si, th1v[i], th2);
            means[i] = radon::periodic_orbit_mean(t, K, radon::MuChoice::Unit, xi, 9,
                                                  1e-10);
            weights[i] = w;
        } catch (const Error&) {
            weights[i] = 0.0;
        }
    });
    double wsum = 0.0, msum = 0.0;
    int used = 0;
    for (int i = 0; i < starts; ++i) {
        if (weights[i] == 0.0) continue;
        ++used;
        wsum += weights[i];
        msum += weights[i] * means[i];
    }
    double avg = msum / wsum;
    bool ok = used >= starts * 9 / 10 && std::abs(avg - rad) < 5e-3;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "orbit-mean average %.8f vs Radon %.8f (gap %.2e, %d/%d starts)", avg,
                  rad, std::abs(avg - rad), used, starts);
    report(11, "periodic-orbit means match the torus mean on a rational torus", ok, buf);
}

void criterion12() {
    namespace fs = std::filesystem;
    auto mkcfg = [&](const std::string& out) {
        cli::RunConfig cfg;
        cfg.command = "freq-scan";
        cfg.table_json =
            R"({"family":"trig","nu0":2,"nu1":1,"nu3":-1,"omega1":6.283185307179586,"omega2":6.283185307179586,"N":1})";
        cfg.out_dir = out;
        cfg.seed = 7;
        cfg.k1 = {-0.8, -0.2, 3};
        cfg.k2 = {0.2, 0.8, 3};
        return cfg;
    };
    int rc1 = cli::run(mkcfg("acc_out/det1"));
    int rc2 = cli::run(mkcfg("acc_out/det2"));
    auto slurp = [](const char* p) {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    std::string a = slurp("acc_out/det1/freq-scan.csv");
    std::string b = slurp("acc_out/det2/freq-scan.csv");
    bool ok = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
    char buf[120];
    std::snprintf(buf, sizeof(buf), "%zu bytes, identical=%s", a.size(),
                  a == b ? "yes" : "no");
    report(12, "CLI determinism: identical config+seed, identical bytes", ok, buf);
}

} // namespace

int main() {
    auto t = profiles::make_cf1();
    criterion1(t);
    criterion2(t);
    criterion3(t);
    criterion4(t);
    criterion5(t);
    criterion6(t);
    criterion7(t);
    criterion8(t);
    criterion9(t);
    criterion10(t);
    criterion11(t);
    criterion12();
    std::printf("%d criterion check(s) failed\n", g_failures);
    return g_failures;
}
