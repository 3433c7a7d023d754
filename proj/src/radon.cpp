#include "lbt/radon.hpp"

#include <algorithm>
#include <cmath>

#include "lbt/covering.hpp"
#include "lbt/legendre.hpp"
#include "lbt/quadrature.hpp"

namespace lbt::radon {

namespace {

using quad::QuadratureSpec;
using quad::Singularity;

double P_of(const TorusSpec& s, double v) { return (v - s.k1) * (v - s.k2); }

} // namespace

double g_invariance_residual(const ProfileTriple& t, const BoundaryFunction& K,
                             int grid) {
    // the full 16-image orbit (boundary symmetry group together with the
    // deck transformation) -- exactly the invariances the quarter-range
    // reductions rely on
    double worst = 0.0;
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            double a = t.omega1() * (i + 0.31) / grid;
            double b = t.omega2() * (j + 0.17) / grid;
            double v = K.eval(a, b);
            for (int ia = 0; ia < 4; ++ia) {
                double qa = (ia & 1) ? -a : a;
                if (ia & 2) qa = 0.5 * t.omega1() - qa;
                for (int jb = 0; jb < 4; ++jb) {
                    double qb = (jb & 1) ? -b : b;
                    if (jb & 2) qb = 0.5 * t.omega2() - qb;
                    worst = std::max(worst, std::abs(K.eval(qa, qb) - v));
                }
            }
        }
    }
    return worst;
}

BoundaryFunction kernel_by_name(const ProfileTriple& t, const std::string& name) {
    double w1 = 4.0 * M_PI / t.omega1(), w2 = 4.0 * M_PI / t.omega2();
    if (name == "one")
        return {[](double, double) { return 1.0; }, true};
    if (name == "trig")
        return {[=](double a, double b) {
                    return 1.0 + 0.5 * std::cos(w1 * a) + 0.3 * std::cos(w2 * b) +
                           0.2 * std::cos(w1 * a) * std::cos(w2 * b);
                },
                true};
    if (name == "product")
        return {[=](double a, double b) {
                    return (1.0 + 0.4 * std::cos(w1 * a)) * (1.0 - 0.25 * std::cos(w2 * b));
                },
                true};
    if (name == "codd")
        return {[=](double a, double b) {
                    return std::sin(0.5 * w2 * b) * (1.0 + 0.5 * std::cos(w1 * a));
                },
                false};
    throw OutOfRange("unknown kernel name: " + name);
}

double mu_weight(const ProfileTriple& t, MuChoice mu, const TorusSpec& s, double theta1,
                 double theta2) {
    if (mu == MuChoice::Unit) return 1.0;
    double nu3 = t.nu3();
    double num = std::sqrt((t.phi(1, theta1) - nu3) * (t.phi(2, theta2) - nu3));
    double den = std::sqrt((s.k1 - nu3) * (s.k2 - nu3));
    return num / den;
}

double mu_of_covector(const ProfileTriple& t, MuChoice mu, const BoundaryCovector& xi) {
    if (mu == MuChoice::Unit) return 1.0;
    covering::CylinderPoint cp{xi.theta1, xi.theta2, xi.side * t.halfwidth()};
    covering::MetricCoeffs m = covering::metric_coeffs(t, cp);
    double margin = 1.0 - xi.p1 * xi.p1 / m.Pi1 - xi.p2 * xi.p2 / m.Pi2;
    if (margin <= 0.0) throw GlancingRay("mu_of_covector: not in the open coball bundle");
    double p3 = std::sqrt(m.Pi3 * margin);
    return std::sqrt(m.Pi3) / p3;
}

namespace {

// numerator and Leray mass accumulated on the SAME nodes, so that ratios of
// constant (and symmetric-null) integrands cancel structurally instead of
// through two independent quadrature ladders
struct RadonPass {
    double num = 0.0;
    double mass = 0.0;
};

} // namespace

double radon_torus(const ProfileTriple& t, const BoundaryFunction& K, MuChoice mu,
                   const TorusSpec& s) {
    if (s.tag != CaseTag::A && s.tag != CaseTag::B)
        throw OutsideProjection("radon_torus: boundary cases only");
    // one fixed-resolution pass evaluating lambda once per node and
    // accumulating both K*mu*lambda and lambda
    auto pass = [&](int n) {
        RadonPass acc;
        auto accumulate = [&](double th1, double th2, double lam, double w) {
            acc.mass += lam * w;
            acc.num += K.eval(th1, th2) * mu_weight(t, mu, s, th1, th2) * lam * w;
        };
        if (s.tag == CaseTag::A) {
            double f2 = t.inverse_branch(2, s.k2);
            const double half = 0.25 * M_PI, len = 2.0 * f2;
            const double dpsi = 2.0 * half / n;
            for (int i = 0; i < n; ++i) {
                double th1 = t.omega1() * i / n;
                double f1v = t.phi(1, th1);
                double wrow = t.omega1() / n / std::sqrt(P_of(s, f1v));
                for (int j = 0; j < n; ++j) {
                    double psi = half * (2.0 * j + 1.0) / n;
                    double sn = std::sin(psi), cs = std::cos(psi);
                    double th2 = -f2 + len * sn * sn;
                    double f2v = t.phi(2, th2);
                    double lam = (f1v - f2v) / std::sqrt(-P_of(s, f2v));
                    accumulate(th1, th2, lam, wrow * dpsi * len * 2.0 * sn * cs);
                }
            }
        } else {
            double f1 = t.inverse_branch(1, s.k2);
            const double half = 0.25 * M_PI;
            const double lo = f1, hi = 0.5 * t.omega1() - f1, len = hi - lo;
            const double dpsi = 2.0 * half / n;
            for (int i = 0; i < n; ++i) {
                double th2 = t.omega2() * i / n;
                double f2v = t.phi(2, th2);
                double wrow = t.omega2() / n / std::sqrt(-P_of(s, f2v));
                for (int j = 0; j < n; ++j) {
                    double psi = half * (2.0 * j + 1.0) / n;
                    double sn = std::sin(psi), cs = std::cos(psi);
                    double th1 = lo + len * sn * sn;
                    double f1v = t.phi(1, th1);
                    double lam = (f1v - f2v) / std::sqrt(P_of(s, f1v));
                    accumulate(th1, th2, lam, wrow * dpsi * len * 2.0 * sn * cs);
                }
            }
        }
        return acc;
    };
    RadonPass prev = pass(64);
    int n = 64;
    for (int d = 0; d < 4; ++d) {
        n *= 2;
        RadonPass cur = pass(n);
        bool ok = std::abs(cur.num - prev.num) <
                      std::max(1e-11, 1e-9 * std::abs(cur.num)) &&
                  std::abs(cur.mass - prev.mass) <
                      std::max(1e-11, 1e-9 * std::abs(cur.mass));
        if (ok) return cur.num / cur.mass;
        prev = cur;
    }
    throw QuadratureFailure("radon_torus: quadrature did not converge");
}

ReducedKernel reduce_kernel(const ProfileTriple& t, const BoundaryFunction& K,
                            MuChoice mu) {
    double nu3 = t.nu3();
    bool normal = (mu == MuChoice::NormalIncidence);
    auto eval = [&t, K, nu3, normal](double x1, double x2) {
        double th1 = t.inverse_branch(1, x1);
        double th2 = t.inverse_branch(2, x2);
        double v = K.eval(th1, th2) * (x1 - x2) * t.density_unguarded(1, x1) * t.density_unguarded(2, x2);
        if (normal) v *= std::sqrt((x1 - nu3) * (x2 - nu3));
        return v;
    };
    return {eval};
}

double M_case(const ProfileTriple& t, CaseTag tag, const ReducedKernel& kernel, double k1,
              double k2) {
    const double nu0 = t.nu0(), nu1 = t.nu1();
    auto den = [&](double x1, double x2) {
        return std::sqrt((x1 - k1) * (x2 - k1)) * std::sqrt((x1 - k2) * (k2 - x2));
    };
    auto integrand = [&](double x1, double x2) {
        return kernel.eval(x1, x2) / den(x1, x2);
    };
    try {
        auto inner_int = [&](double x1, const QuadratureSpec& sy) {
            return quad::integrate([&](double x2) { return integrand(x1, x2); }, sy).value;
        };
        switch (tag) {
            case CaseTag::A: {
                // rho2's nu1-edge sits just above the moving x2-endpoint
                QuadratureSpec sx{nu1, nu0, Singularity::InverseSqrt,
                                  Singularity::InverseSqrt};
                auto inner = [&](double x1) {
                    return quad::integrate_graded_right(
                               [&](double x2) { return integrand(x1, x2); }, 0.0, k2,
                               nu1 - k2, Singularity::InverseSqrt,
                               Singularity::InverseSqrt)
                        .value;
                };
                return quad::integrate(inner, sx).value;
            }
            case CaseTag::B: {
                QuadratureSpec sy{0.0, nu1, Singularity::InverseSqrt,
                                  Singularity::InverseSqrt};
                return quad::integrate_graded_left(
                           [&](double x1) { return inner_int(x1, sy); }, k2, nu0,
                           k2 - nu1, Singularity::InverseSqrt, Singularity::InverseSqrt)
                    .value;
            }
            case CaseTag::C: {
                QuadratureSpec sy{k1, k2, Singularity::InverseSqrt,
                                  Singularity::InverseSqrt};
                QuadratureSpec sx{nu1, nu0, Singularity::InverseSqrt,
                                  Singularity::InverseSqrt};
                return quad::integrate([&](double x1) { return inner_int(x1, sy); }, sx)
                    .value;
            }
            case CaseTag::D: {
                QuadratureSpec sy{k1, nu1, Singularity::InverseSqrt,
                                  Singularity::InverseSqrt};
                return quad::integrate_graded_left(
                           [&](double x1) { return inner_int(x1, sy); }, k2, nu0,
                           k2 - nu1, Singularity::InverseSqrt, Singularity::InverseSqrt)
                    .value;
            }
            default:
                throw OutOfRange("M_case: degenerate case");
        }
    } catch (const NonConvergent& e) {
        throw QuadratureFailure(std::string("M_case: ") + e.what());
    }
}

double radon_torus_xspace(const ProfileTriple& t, const BoundaryFunction& K, MuChoice mu,
                          const TorusSpec& s) {
    ReducedKernel num = reduce_kernel(t, K, mu);
    static const BoundaryFunction unit{[](double, double) { return 1.0; }, true};
    ReducedKernel den = reduce_kernel(t, unit, MuChoice::Unit);
    double scale = 1.0;
    if (mu == MuChoice::NormalIncidence)
        scale = std::sqrt((s.k1 - t.nu3()) * (s.k2 - t.nu3()));
    return M_case(t, s.tag, num, s.k1, s.k2) /
           (scale * M_case(t, s.tag, den, s.k1, s.k2));
}

double moment(const ProfileTriple& t, const ReducedKernel& kernel, int m, int r) {
    if (m < 0 || r < 0 || 2 * r > m) throw IndexOutOfRange("moment: need 0 <= 2r <= m");
    QuadratureSpec sx{t.nu1(), t.nu0(), Singularity::InverseSqrt,
                      Singularity::InverseSqrt};
    QuadratureSpec sy{0.0, t.nu1(), Singularity::InverseSqrt, Singularity::InverseSqrt};
    auto f = [&](double x1, double x2) {
        double s1 = 0.5 * (x1 + x2);
        double s2sq = x1 * x2;
        return kernel.eval(x1, x2) * std::pow(s1, m - 2 * r) * std::pow(s2sq, r);
    };
    try {
        return quad::integrate2(f, sx, sy).value;
    } catch (const NonConvergent& e) {
        throw QuadratureFailure(std::string("moment: ") + e.what());
    }
}

int monomial_count(int d) {
    int c = 0;
    for (int m = 0; m <= d; ++m) c += m / 2 + 1;
    return c;
}

// ---------------- weighted Gram machinery ----------------

namespace {

struct UVRange {
    double ulo, uhi, vlo, vhi;
};

UVRange uv_range(const ProfileTriple& t) {
    return {0.5 * t.nu1(), 0.5 * (t.nu0() + t.nu1()), 0.0, t.nu0() * t.nu1()};
}

// exponent pairs (a, b) for u^a v^b with a + 2b <= d, enumerated as (m, r)
std::vector<std::pair<int, int>> basis_exponents(int d) {
    std::vector<std::pair<int, int>> e;
    for (int m = 0; m <= d; ++m)
        for (int r = 0; 2 * r <= m; ++r) e.push_back({m - 2 * r, r});
    return e;
}

// edge weight of the reduced kernels
double edge_weight(const ProfileTriple& t, double x1, double x2) {
    return 1.0 / (std::sqrt((x1 - t.nu1()) * (t.nu0() - x1)) *
                  std::sqrt(x2 * (t.nu1() - x2)));
}

// one weighted-quadrature pass accumulating Gram (and optionally a rhs
// against psi) for the given basis evaluator
template <class Basis>
void gram_pass(const ProfileTriple& t, int n, int dim, const Basis& basis,
               const std::function<double(double, double)>* psi,
               std::vector<double>& G, std::vector<double>& b) {
    const quad::GaussRule& rule = quad::gauss_rule(n);
    G.assign(dim * dim, 0.0);
    b.assign(dim, 0.0);
    const double nu0 = t.nu0(), nu1 = t.nu1();
    const double half = 0.25 * M_PI;
    std::vector<double> e(dim);
    for (int i = 0; i < n; ++i) {
        double psi1 = half * (rule.x[i] + 1.0);
        double s1 = std::sin(psi1);
        double x1 = nu1 + (nu0 - nu1) * s1 * s1;
        double w1 = rule.w[i] * half * (nu0 - nu1) * std::sin(2.0 * psi1);
        for (int j = 0; j < n; ++j) {
            double psi2 = half * (rule.x[j] + 1.0);
            double s2 = std::sin(psi2);
            double x2 = nu1 * s2 * s2;
            double w2 = rule.w[j] * half * nu1 * std::sin(2.0 * psi2);
            double w = w1 * w2 * edge_weight(t, x1, x2);
            double u = 0.5 * (x1 + x2), v = x1 * x2;
            basis(u, v, e);
            for (int a = 0; a < dim; ++a)
                for (int c = a; c < dim; ++c) G[a * dim + c] += w * e[a] * e[c];
            if (psi) {
                double pv = (*psi)(u, v);
                for (int a = 0; a < dim; ++a) b[a] += w * pv * e[a];
            }
        }
    }
    for (int a = 0; a < dim; ++a)
        for (int c = 0; c < a; ++c) G[a * dim + c] = G[c * dim + a];
}

// cyclic Jacobi eigenvalues of a symmetric matrix; extended precision keeps
// the smallest eigenvalue of the near-singular monomial Grams above the
// rounding floor
std::pair<double, double> sym_eig_minmax(const std::vector<double>& A0, int nn) {
    std::vector<long double> A(A0.begin(), A0.end());
    for (int sweep = 0; sweep < 100; ++sweep) {
        long double off = 0.0;
        for (int p = 0; p < nn; ++p)
            for (int q = p + 1; q < nn; ++q) off += A[p * nn + q] * A[p * nn + q];
        if (off < 1e-40L) break;
        for (int p = 0; p < nn; ++p) {
            for (int q = p + 1; q < nn; ++q) {
                long double apq = A[p * nn + q];
                if (fabsl(apq) < 1e-300L) continue;
                long double app = A[p * nn + p], aqq = A[q * nn + q];
                long double tau = (aqq - app) / (2.0L * apq);
                long double tt = (tau >= 0 ? 1.0L : -1.0L) /
                                 (fabsl(tau) + sqrtl(1.0L + tau * tau));
                long double cth = 1.0L / sqrtl(1.0L + tt * tt), sth = tt * cth;
                for (int k = 0; k < nn; ++k) {
                    long double akp = A[k * nn + p], akq = A[k * nn + q];
                    A[k * nn + p] = cth * akp - sth * akq;
                    A[k * nn + q] = sth * akp + cth * akq;
                }
                for (int k = 0; k < nn; ++k) {
                    long double apk = A[p * nn + k], aqk = A[q * nn + k];
                    A[p * nn + k] = cth * apk - sth * aqk;
                    A[q * nn + k] = sth * apk + cth * aqk;
                }
            }
        }
    }
    long double mn = A[0], mx = A[0];
    for (int i = 1; i < nn; ++i) {
        mn = std::min(mn, A[i * nn + i]);
        mx = std::max(mx, A[i * nn + i]);
    }
    return {double(mn), double(mx)};
}

// Cholesky solve of SPD G c = b
std::vector<double> spd_solve(std::vector<double> G, std::vector<double> b, int nn) {
    for (int i = 0; i < nn; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = G[i * nn + j];
            for (int k = 0; k < j; ++k) s -= G[i * nn + k] * G[j * nn + k];
            if (i == j) {
                if (s <= 0.0) throw SingularSystem("spd_solve: matrix not positive");
                G[i * nn + i] = std::sqrt(s);
            } else {
                G[i * nn + j] = s / G[j * nn + j];
            }
        }
    }
    for (int i = 0; i < nn; ++i) {
        double s = b[i];
        for (int k = 0; k < i; ++k) s -= G[i * nn + k] * b[k];
        b[i] = s / G[i * nn + i];
    }
    for (int i = nn - 1; i >= 0; --i) {
        double s = b[i];
        for (int k = i + 1; k < nn; ++k) s -= G[k * nn + i] * b[k];
        b[i] = s / G[i * nn + i];
    }
    return b;
}

} // namespace

RigidityCertificate rigidity_certificate(const ProfileTriple& t, int degree) {
    auto expo = basis_exponents(degree);
    int dim = int(expo.size());
    auto basis = [&](double u, double v, std::vector<double>& e) {
        for (int i = 0; i < dim; ++i)
            e[i] = std::pow(u, expo[i].first) * std::pow(v, expo[i].second);
    };
    std::vector<double> G, b;
    std::vector<double> Gp;
    int n = 96;
    gram_pass(t, n, dim, basis, nullptr, G, b);
    gram_pass(t, 2 * n, dim, basis, nullptr, Gp, b);
    G.swap(Gp);
    // normalise monomials to unit weighted norm
    std::vector<double> dscale(dim);
    for (int i = 0; i < dim; ++i) dscale[i] = 1.0 / std::sqrt(G[i * dim + i]);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) G[i * dim + j] *= dscale[i] * dscale[j];
    auto [mn, mx] = sym_eig_minmax(G, dim);
    RigidityCertificate rc;
    rc.degree = degree;
    rc.dim = dim;
    rc.min_sv = mn;
    rc.max_sv = mx;
    rc.ill_conditioned = (mn < 1e-12 * mx);
    return rc;
}

namespace {

// well-conditioned basis spanning {u^a v^b : a + 2b <= d}
void legendre_basis(const ProfileTriple& t, int degree, double u, double v,
                    const std::vector<std::pair<int, int>>& expo, std::vector<double>& e) {
    UVRange r = uv_range(t);
    double uh = (2.0 * u - (r.uhi + r.ulo)) / (r.uhi - r.ulo);
    double vh = (2.0 * v - (r.vhi + r.vlo)) / (r.vhi - r.vlo);
    auto Pu = legendre::legendre_P_all(degree, uh);
    auto Pv = legendre::legendre_P_all(degree / 2, vh);
    for (std::size_t i = 0; i < expo.size(); ++i)
        e[i] = Pu[expo[i].first] * Pv[expo[i].second];
}

} // namespace

std::vector<double> reconstruct_from_moments(
    const ProfileTriple& t, const std::function<double(double, double)>& psi, int degree) {
    auto expo = basis_exponents(degree);
    int dim = int(expo.size());
    auto basis = [&](double u, double v, std::vector<double>& e) {
        legendre_basis(t, degree, u, v, expo, e);
    };
    std::vector<double> G, b;
    gram_pass(t, 192, dim, basis, &psi, G, b);
    return spd_solve(G, b, dim);
}

double eval_reconstruction(const ProfileTriple& t, const std::vector<double>& coef,
                           int degree, double u, double v) {
    auto expo = basis_exponents(degree);
    std::vector<double> e(expo.size());
    legendre_basis(t, degree, u, v, expo, e);
    double s = 0.0;
    for (std::size_t i = 0; i < coef.size(); ++i) s += coef[i] * e[i];
    return s;
}

// ---------------- periodic orbits ----------------

double covector_distance(const ProfileTriple& t, const BoundaryCovector& xi,
                         const BoundaryCovector& eta) {
    if (xi.side != eta.side) return 1e9;
    double d1 = std::remainder(xi.theta1 - eta.theta1, t.omega1());
    double d2 = std::remainder(xi.theta2 - eta.theta2, t.omega2());
    return std::sqrt(d1 * d1 + d2 * d2 + (xi.p1 - eta.p1) * (xi.p1 - eta.p1) +
                     (xi.p2 - eta.p2) * (xi.p2 - eta.p2));
}

double periodic_orbit_mean(const ProfileTriple& t, const BoundaryFunction& K, MuChoice mu,
                           const BoundaryCovector& xi0, int m, double tol) {
    BoundaryCovector xi = xi0;
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
        acc += K.eval(xi.theta1, xi.theta2) * mu_of_covector(t, mu, xi);
        xi = dynamics::billiard_map(t, xi, tol);
    }
    if (covector_distance(t, xi, xi0) > 1e-6)
        throw NotPeriodic("periodic_orbit_mean: orbit does not close after m bounces");
    return acc / m;
}

TorusSpec find_rational_torus(const ProfileTriple& t, int p, int q, int Ndenom) {
    if (Ndenom < 1) throw OutOfRange("find_rational_torus: denominator must be >= 1");
    const double nu3 = t.nu3(), nu1 = t.nu1();
    double fp = double(p) / Ndenom - std::floor(double(p) / Ndenom);
    double fq = double(q) / Ndenom - std::floor(double(q) / Ndenom);

    struct Cand {
        double k1, k2, t1, t2, dist;
    };
    std::vector<Cand> cands;
    // linear grid over the case rectangle plus log-spaced kappa1 toward 0,
    // where the second frequency grows (slowly) without bound
    std::vector<double> k1grid;
    const int ng = 14;
    for (int i = 1; i < ng; ++i) k1grid.push_back(nu3 * (1.0 - double(i) / ng));
    for (double f : {3e-2, 1e-2, 3e-3}) k1grid.push_back(nu3 * f);
    for (double k1 : k1grid) {
        for (int j = 1; j < ng; ++j) {
            double k2 = nu1 * double(j) / ng; // in (0, nu1)
            try {
                auto om = freq::frequencies(t, k1, k2);
                double w1 = om.first / (2.0 * M_PI), w2 = om.second / (2.0 * M_PI);
                double t1 = fp + std::round(w1 - fp);
                double t2 = fq + std::round(w2 - fq);
                if (t1 <= 0.0 || t2 <= 0.0) continue; // keep positive frequencies
                double dist = std::hypot(w1 - t1, w2 - t2);
                cands.push_back({k1, k2, t1, t2, dist});
            } catch (const Error&) {
                continue;
            }
        }
    }
    std::sort(cands.begin(), cands.end(),
              [](const Cand& a, const Cand& b) { return a.dist < b.dist; });

    for (std::size_t ci = 0; ci < std::min<std::size_t>(cands.size(), 6); ++ci) {
        double k1 = cands[ci].k1, k2 = cands[ci].k2;
        double T1 = cands[ci].t1, T2 = cands[ci].t2;
        for (int it = 0; it < 40; ++it) {
            freq::ClosedForms cf = freq::closed_forms(t, k1, k2);
            double D = cf.D.v;
            double w1 = 0.5 * cf.A.v / D, w2 = 0.5 * cf.B.v / D; // Omega/(2 pi)
            double r1 = w1 - T1, r2 = w2 - T2;
            if (std::hypot(r1, r2) < 1e-10) {
                TorusSpec s = tori::make_spec(t, k1, k2);
                if (s.tag != CaseTag::A) break;
                return s;
            }
            // d(Omega/2pi)/dkappa = (1/2) (X_k D - X D_k)/D^2
            double j11 = 0.5 * (cf.A.d1 * D - cf.A.v * cf.D.d1) / (D * D);
            double j12 = 0.5 * (cf.A.d2 * D - cf.A.v * cf.D.d2) / (D * D);
            double j21 = 0.5 * (cf.B.d1 * D - cf.B.v * cf.D.d1) / (D * D);
            double j22 = 0.5 * (cf.B.d2 * D - cf.B.v * cf.D.d2) / (D * D);
            double det = j11 * j22 - j12 * j21;
            if (std::abs(det) < 1e-300) break;
            double dk1 = -(r1 * j22 - j12 * r2) / det;
            double dk2 = -(j11 * r2 - r1 * j21) / det;
            // damped step, stay inside the case-A rectangle
            double lam = 1.0;
            while (lam > 1e-4) {
                double n1 = k1 + lam * dk1, n2 = k2 + lam * dk2;
                if (n1 > 0.98 * nu3 && n1 < 0.02 * nu3 && n2 > 0.02 * nu1 &&
                    n2 < 0.98 * nu1) {
                    k1 = n1;
                    k2 = n2;
                    break;
                }
                lam *= 0.5;
            }
            if (lam <= 1e-4) break;
        }
    }
    throw NoRoot("find_rational_torus: no case-A torus with the requested rotation");
}

} // namespace lbt::radon
