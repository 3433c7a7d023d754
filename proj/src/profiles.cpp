#include "lbt/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

namespace lbt::profiles {

namespace {

constexpr int kChebBase = 128;
constexpr double kEdgeZone = 1e-6;       // relative width of the normal-form zone
constexpr double kEndpointGuard = 1e-14; // EndpointSingularity threshold (relative)

double clamp(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

} // namespace

bool ValidationReport::hard_ok() const {
    for (const auto& it : items)
        if (it.hard && !it.passed) return false;
    return true;
}

bool ValidationReport::all_ok() const {
    for (const auto& it : items)
        if (!it.passed) return false;
    return true;
}

std::vector<std::string> ValidationReport::warnings() const {
    std::vector<std::string> w;
    for (const auto& it : items)
        if (!it.hard && !it.passed) w.push_back(it.condition + ": " + it.detail);
    return w;
}

struct ProfileTriple::Caches {
    std::once_flag once[3];
    std::vector<double> cheb[3]; // Chebyshev coefficients of theta(t)
    std::once_flag edge_once;
    EdgeData edges[3][2]; // [branch-1][lower?0:1]
};

ProfileTriple::ProfileTriple(ProfileFunction phi1, ProfileFunction phi2,
                             ProfileFunction phi3, double omega1, double omega2, double N)
    : omega1_(omega1), omega2_(omega2), N_(N), caches_(std::make_shared<Caches>()) {
    p_[0] = std::move(phi1);
    p_[1] = std::move(phi2);
    p_[2] = std::move(phi3);
    if (!(omega1_ > 0 && omega2_ > 0 && N_ > 0))
        throw IncompatibleParameters("periods and N must be positive");
    nu1_ = p_[0].f(0.0);
    nu0_ = p_[0].f(0.25 * omega1_);
    nu3_ = p_[2].f(N_);
}

const ProfileFunction& ProfileTriple::fun(int k) const {
    if (k < 1 || k > 3) throw OutOfRange("profile index must be 1, 2 or 3");
    return p_[k - 1];
}

double ProfileTriple::phi(int k, double theta) const { return fun(k).f(theta); }
double ProfileTriple::dphi(int k, double theta) const { return fun(k).df(theta); }
double ProfileTriple::ddphi(int k, double theta) const { return fun(k).ddf(theta); }

double ProfileTriple::d4phi(int k, double theta) const {
    const double scale = (k == 3) ? N_ : (k == 1 ? omega1_ : omega2_);
    const auto& dd = fun(k).ddf;
    auto second = [&](double h) {
        return (dd(theta + h) - 2.0 * dd(theta) + dd(theta - h)) / (h * h);
    };
    double h = 1e-4 * scale;
    double c1 = second(2.0 * h), c2 = second(h);
    return (4.0 * c2 - c1) / 3.0;
}

std::pair<double, double> ProfileTriple::branch_range(int k) const {
    switch (k) {
        case 1: return {nu1_, nu0_};
        case 2: return {0.0, nu1_};
        case 3: return {nu3_, 0.0};
    }
    throw OutOfRange("branch index must be 1, 2 or 3");
}

double ProfileTriple::branch_theta_max(int k) const {
    switch (k) {
        case 1: return 0.25 * omega1_;
        case 2: return 0.25 * omega2_;
        case 3: return N_;
    }
    throw OutOfRange("branch index must be 1, 2 or 3");
}

namespace {

// theta near a critical endpoint c where phi'(c)=0:
//   min-type:  x - e = (a/2) u^2 + (b/24) u^4,  u = alpha s + beta s^3
//   max-type:  e - x = (a/2) u^2 - (b/24) u^4
// with s = sqrt(|x-e|), alpha = sqrt(2/a), beta = -+ b alpha^3/(24 a).
struct NormalForm {
    double alpha, beta;
};

NormalForm normal_form(double ddphi_c, double d4phi_c, bool max_type) {
    double a = std::abs(ddphi_c);
    double alpha = std::sqrt(2.0 / a);
    double beta = d4phi_c * alpha * alpha * alpha / (24.0 * a);
    if (!max_type) beta = -beta;
    return {alpha, beta};
}

} // namespace

double ProfileTriple::solve_branch(int k, double x) const {
    auto [lo, hi] = branch_range(k);
    const double range = hi - lo;
    const double L = branch_theta_max(k);
    if (x < lo - 1e-12 * range || x > hi + 1e-12 * range)
        throw OutOfRange("inverse_branch: value outside branch range");
    x = clamp(x, lo, hi);

    const auto& P = fun(k);
    const bool increasing = (k != 3); // phi3 decreases on [0,N]

    // theta-values of the two x-endpoints of the branch
    // k=1: lo at theta=0, hi at theta=omega1/4
    // k=2: lo at theta=0, hi at theta=omega2/4
    // k=3: lo (=nu3) at theta=N, hi (=0) at theta=0
    auto theta_of_end = [&](bool lower) {
        if (k == 3) return lower ? L : 0.0;
        return lower ? 0.0 : L;
    };

    if (x == lo) return theta_of_end(true);
    if (x == hi) return theta_of_end(false);

    // critical (phi'=0) ends: k=1,2 both; k=3 only the x=0 end
    auto near_edge_seed = [&](bool lower, double d) -> double {
        double tc = theta_of_end(lower);
        bool is_min_of_phi = (k != 3) && lower; // phi attains its min there
        bool max_type = !is_min_of_phi;
        NormalForm nf = normal_form(P.ddf(tc), d4phi(k, tc), max_type);
        double s = std::sqrt(d);
        double u = nf.alpha * s + nf.beta * s * s * s;
        // theta moves inward from the critical endpoint
        if (k == 3) return u;          // tc = 0, inward is +u
        return lower ? u : tc - u;     // k=1,2
    };

    const double edge_zone = kEdgeZone * range;
    double d_lo = x - lo, d_hi = hi - x;
    double t;
    if (k != 3 && d_lo < edge_zone) {
        t = near_edge_seed(true, d_lo); // min-type critical end
    } else if (d_hi < edge_zone) {
        t = near_edge_seed(false, d_hi); // max-type critical end (x=0 for k=3)
    } else if (k == 3 && d_lo < edge_zone) {
        // x -> nu3 is a regular end: linear seed from phi3'(N)
        t = clamp(L + (x - lo) / P.df(L), 0.0, L);
    } else {
        t = 0.5 * L;
    }

    // Newton with a maintained bracket
    double tlo = 0.0, thi = L;
    auto resid = [&](double th) { return P.f(th) - x; };
    const double xtol = 1e-15 * std::max(1.0, L);
    const double ftol = 1e-13 * std::max(1.0, range);
    for (int it = 0; it < 100; ++it) {
        double g = resid(t);
        if (std::abs(g) < ftol) break;
        bool g_pos = (g > 0);
        // for increasing branches g>0 means t too large
        if (g_pos == increasing) thi = std::min(thi, t);
        else tlo = std::max(tlo, t);
        double dp = P.df(t);
        double tn = t - g / dp;
        if (!(std::isfinite(tn)) || tn <= tlo || tn >= thi)
            tn = 0.5 * (tlo + thi);
        if (std::abs(tn - t) < xtol) {
            t = tn;
            break;
        }
        t = tn;
    }
    return clamp(t, 0.0, L);
}

void ProfileTriple::build_cache(int k) const {
    // Chebyshev interpolant of theta(t) where x = lo + (hi-lo) sin^2(t),
    // t in [0, pi/2]; the sqrt structure at critical ends makes theta(t)
    // smooth on the closed interval.
    auto [lo, hi] = branch_range(k);
    int n = kChebBase;
    std::vector<double> coef;
    for (int attempt = 0; attempt < 4; ++attempt) {
        std::vector<double> fv(n);
        for (int j = 0; j < n; ++j) {
            double u = std::cos(M_PI * (j + 0.5) / n); // first-kind node in [-1,1]
            double t = 0.25 * M_PI * (u + 1.0);
            double s = std::sin(t);
            double x = lo + (hi - lo) * s * s;
            fv[j] = solve_branch(k, x);
        }
        coef.assign(n, 0.0);
        for (int m = 0; m < n; ++m) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j)
                acc += fv[j] * std::cos(M_PI * m * (j + 0.5) / n);
            coef[m] = 2.0 * acc / n;
        }
        coef[0] *= 0.5;
        // converged when the tail is negligible
        double tail = 0.0, head = 0.0;
        for (int m = 0; m < n; ++m) {
            double a = std::abs(coef[m]);
            if (m >= n - 8) tail = std::max(tail, a);
            head = std::max(head, a);
        }
        if (tail < 1e-14 * std::max(head, 1.0)) break;
        n *= 2;
    }
    caches_->cheb[k - 1] = std::move(coef);
}

double ProfileTriple::cached_inverse(int k, double x) const {
    std::call_once(caches_->once[k - 1], [&] { build_cache(k); });
    const std::vector<double>& c = caches_->cheb[k - 1];
    auto [lo, hi] = branch_range(k);
    double r = clamp((x - lo) / (hi - lo), 0.0, 1.0);
    double t = std::asin(std::sqrt(r));
    double u = clamp(2.0 * t / (0.5 * M_PI) - 1.0, -1.0, 1.0);
    // Clenshaw
    double b1 = 0.0, b2 = 0.0;
    for (int m = int(c.size()) - 1; m >= 1; --m) {
        double b0 = 2.0 * u * b1 - b2 + c[m];
        b2 = b1;
        b1 = b0;
    }
    return c[0] + u * b1 - b2;
}

double ProfileTriple::inverse_branch(int k, double x) const {
    auto [lo, hi] = branch_range(k);
    const double range = hi - lo;
    if (x < lo - 1e-12 * range || x > hi + 1e-12 * range)
        throw OutOfRange("inverse_branch: value outside branch range");
    double d_lo = x - lo, d_hi = hi - x;
    if (std::min(d_lo, d_hi) < kEdgeZone * range)
        return solve_branch(k, clamp(x, lo, hi)); // normal-form path
    return cached_inverse(k, x);
}

EdgeData ProfileTriple::edge_data(int k, bool lower_end) const {
    std::call_once(caches_->edge_once, [&] {
        for (int kk = 1; kk <= 3; ++kk) {
            auto [lo, hi] = branch_range(kk);
            double L = branch_theta_max(kk);
            for (int side = 0; side < 2; ++side) {
                bool lower = (side == 0);
                EdgeData e;
                e.branch = kk;
                e.lower_end = lower;
                e.endpoint = lower ? lo : hi;
                if (kk == 3 && lower) {
                    // regular end at x = nu3 (theta = N): rho3 = -1/phi3'(N)
                    e.singular = false;
                    e.G0 = -1.0 / p_[2].df(L);
                    e.G1 = 0.0;
                } else {
                    double tc;
                    bool max_type;
                    if (kk == 3) {
                        tc = 0.0;
                        max_type = true;
                    } else {
                        tc = lower ? 0.0 : L;
                        max_type = !lower;
                    }
                    NormalForm nf =
                        normal_form(p_[kk - 1].ddf(tc), d4phi(kk, tc), max_type);
                    e.singular = true;
                    e.G0 = 0.5 * nf.alpha;
                    e.G1 = 1.5 * nf.beta;
                }
                caches_->edges[kk - 1][side] = e;
            }
        }
    });
    if (k < 1 || k > 3) throw OutOfRange("edge_data: branch index");
    return caches_->edges[k - 1][lower_end ? 0 : 1];
}

namespace {
constexpr double kUnderflowGuard = 1e-280;
}

double ProfileTriple::density(int k, double x) const {
    auto [lo, hi] = branch_range(k);
    const double range = hi - lo;
    double d_lo = x - lo, d_hi = hi - x;
    double d_sing = (k == 3) ? d_hi : std::min(d_lo, d_hi);
    if (d_sing < kEndpointGuard * std::max(1.0, range))
        throw EndpointSingularity("density: too close to a singular endpoint");
    return density_unguarded(k, x);
}

double ProfileTriple::density_unguarded(int k, double x) const {
    auto [lo, hi] = branch_range(k);
    const double range = hi - lo;
    double d_lo = x - lo, d_hi = hi - x;
    if (x <= lo - 1e-12 * range || x >= hi + 1e-12 * range)
        throw OutOfRange("density: value outside open branch interval");

    auto singular_value = [&](bool lower, double d) -> double {
        EdgeData e = edge_data(k, lower);
        d = std::max(d, kUnderflowGuard);
        return e.G0 / std::sqrt(d) + e.G1 * std::sqrt(d);
    };

    const double zone = kEdgeZone * range;
    if (d_lo < zone && !(k == 3)) return singular_value(true, d_lo);
    if (d_hi < zone) return singular_value(false, d_hi);
    if (k == 3 && d_lo < zone) {
        // regular end: direct formula is stable there
        double th = inverse_branch(k, x);
        return -1.0 / p_[2].df(th);
    }
    double th = inverse_branch(k, x);
    double dp = fun(k).df(th);
    return 1.0 / std::abs(dp);
}

double ProfileTriple::density_offset(int k, bool lower_end, double d) const {
    auto [lo, hi] = branch_range(k);
    const double range = hi - lo;
    bool singular_end = !(k == 3 && lower_end);
    if (singular_end && d < kEdgeZone * range) {
        EdgeData e = edge_data(k, lower_end);
        d = std::max(d, kUnderflowGuard);
        return e.G0 / std::sqrt(d) + e.G1 * std::sqrt(d);
    }
    return density_unguarded(k, lower_end ? lo + d : hi - d);
}

double ProfileTriple::density_deriv(int k, double x) const {
    auto [lo, hi] = branch_range(k);
    const double range = hi - lo;
    double d_lo = x - lo, d_hi = hi - x;
    const double zone = kEdgeZone * range;
    auto edge_deriv = [&](bool lower, double d) {
        EdgeData e = edge_data(k, lower);
        double dd_dx = lower ? 1.0 : -1.0;
        return (-0.5 * e.G0 * std::pow(d, -1.5) + 0.5 * e.G1 / std::sqrt(d)) * dd_dx;
    };
    if (k != 3 && d_lo < zone) return edge_deriv(true, d_lo);
    if (d_hi < zone) return edge_deriv(false, d_hi);
    double th = inverse_branch(k, x);
    double dp = fun(k).df(th), ddp = fun(k).ddf(th);
    // rho = 1/phi' (k=1,2) or -1/phi' (k=3); both give rho' = -phi''/phi'^3
    // up to the sign of the branch orientation
    if (k == 3) return ddp / (dp * dp * dp);
    return -ddp / (dp * dp * dp);
}

// ---------------- validation ----------------

namespace {

struct Checker {
    ValidationReport rep;
    void add(const std::string& cond, bool hard, bool passed, double resid,
             const std::string& detail = "") {
        rep.items.push_back({cond, hard, passed, resid, detail});
    }
};

} // namespace

ValidationReport ProfileTriple::validate(int order) const {
    Checker ck;
    const int n = 512;
    const double tol = 1e-9;

    auto reldiff = [](double a, double b) {
        double s = std::max({std::abs(a), std::abs(b), 1e-30});
        return std::abs(a - b) / s;
    };

    // (A1) evenness and periodicity
    for (int k = 1; k <= 2; ++k) {
        double om = (k == 1) ? omega1_ : omega2_;
        double r_even = 0.0, r_per = 0.0;
        for (int i = 0; i <= n; ++i) {
            double th = om * (double(i) / n - 0.5);
            r_even = std::max(r_even, std::abs(phi(k, th) - phi(k, -th)));
            r_per = std::max(r_per, std::abs(phi(k, th + om) - phi(k, th)));
        }
        ck.add("A1: phi" + std::to_string(k) + " even", true, r_even < tol, r_even);
        ck.add("A1: phi" + std::to_string(k) + " periodic", true, r_per < tol, r_per);
    }
    {
        double r_even = 0.0;
        for (int i = 0; i <= n; ++i) {
            double th = N_ * double(i) / n;
            r_even = std::max(r_even, std::abs(phi(3, th) - phi(3, -th)));
        }
        ck.add("A1: phi3 even", true, r_even < tol, r_even);
    }
    // (A1) phi2 half-period symmetry
    {
        double r = 0.0;
        for (int i = 0; i <= n; ++i) {
            double th = omega2_ * double(i) / n;
            r = std::max(r, std::abs(phi(2, th) - phi(2, 0.5 * omega2_ - th)));
        }
        ck.add("A1: phi2 half-symmetry", true, r < tol, r);
    }
    // (A1) sign ordering: phi2 >= 0 >= phi3 and the phi1/phi2 gap
    {
        double min2 = 1e300, max2 = -1e300, min1 = 1e300, max3 = -1e300;
        for (int i = 0; i <= n; ++i) {
            double t2 = omega2_ * double(i) / n;
            double v2 = phi(2, t2);
            min2 = std::min(min2, v2);
            max2 = std::max(max2, v2);
            double t1 = omega1_ * double(i) / n;
            min1 = std::min(min1, phi(1, t1));
            double t3 = N_ * double(i) / n;
            max3 = std::max(max3, phi(3, t3));
        }
        ck.add("A1: phi2 >= 0", true, min2 > -tol, std::min(min2, 0.0));
        ck.add("A1: phi3 <= 0", true, max3 < tol, std::max(max3, 0.0));
        double gap = min1 - max2;
        ck.add("A1: min phi1 >= max phi2", true, gap > -tol, gap,
               "min phi1 - max phi2");
        // contact only on the prescribed set
        double off1 = 1e300, off2 = 1e300;
        for (int i = 0; i <= n; ++i) {
            double t1 = omega1_ * double(i) / n;
            double d1 = std::abs(std::remainder(t1, 0.5 * omega1_));
            if (d1 > 0.02 * omega1_) off1 = std::min(off1, phi(1, t1) - nu1_);
            double t2 = omega2_ * double(i) / n;
            double d2 = std::abs(std::remainder(t2 - 0.25 * omega2_, 0.5 * omega2_));
            if (d2 > 0.02 * omega2_) off2 = std::min(off2, nu1_ - phi(2, t2));
        }
        ck.add("A1/A2: phi1 > nu1 off contact set", true, off1 > 0, off1);
        ck.add("A1/A2: phi2 < nu1 off contact set", true, off2 > 0, off2);
    }
    // (A2) critical values
    {
        double r1 = reldiff(phi(1, 0.0), phi(2, 0.25 * omega2_));
        ck.add("A2: min phi1 == max phi2 (= nu1)", true, r1 < tol, r1);
        double r2 = std::abs(phi(2, 0.0));
        ck.add("A2: min phi2 == 0", true, r2 < tol, r2);
        double r3 = std::abs(phi(3, 0.0));
        ck.add("A2: max phi3 == 0", true, r3 < tol, r3);
        ck.add("A2: nu1 > 0", true, nu1_ > tol, nu1_);
        ck.add("A2: nu3 < 0", true, nu3_ < -tol, nu3_);
        ck.add("A2: nu0 > nu1", true, nu0_ > nu1_ + tol, nu0_ - nu1_);
    }
    // (A4)
    {
        double r = 0.0;
        for (int i = 0; i <= n; ++i) {
            double th = omega1_ * double(i) / n;
            r = std::max(r, std::abs(phi(1, th) - phi(1, 0.5 * omega1_ - th)));
        }
        ck.add("A4: phi1(t) == phi1(omega1/2 - t)", true, r < tol, r);
    }
    // (A5) strict monotonicity on the open quarter-periods
    {
        double m1 = 1e300, m2 = 1e300, m3 = -1e300;
        for (int i = 1; i < n; ++i) {
            m1 = std::min(m1, dphi(1, 0.25 * omega1_ * double(i) / n));
            m2 = std::min(m2, dphi(2, 0.25 * omega2_ * double(i) / n));
            m3 = std::max(m3, dphi(3, N_ * double(i) / n));
        }
        m3 = std::max(m3, dphi(3, N_));
        ck.add("A5: phi1' > 0 on (0, omega1/4)", true, m1 > 0, m1);
        ck.add("A5: phi2' > 0 on (0, omega2/4)", true, m2 > 0, m2);
        ck.add("A5: phi3' < 0 on (0, N]", true, m3 < 0, m3);
    }
    // (A3)(1)
    {
        for (int k = 1; k <= 2; ++k) {
            double om = (k == 1) ? omega1_ : omega2_;
            double c0 = ddphi(k, 0.0), ch = ddphi(k, 0.5 * om);
            double r = reldiff(c0, ch);
            ck.add("A3(1): phi" + std::to_string(k) + "''(0) == phi''(omega/2)", true,
                   r < tol && c0 > 0, r);
        }
    }
    // (A3)(2) order 2 (hard)
    {
        double l1 = ddphi(1, 0.0), r1 = -ddphi(2, 0.25 * omega2_);
        double d1 = reldiff(l1, r1);
        ck.add("A3(2): phi1''(0) == -phi2''(omega2/4)", true, d1 < tol, d1);
        double l2 = ddphi(2, 0.0), r2 = -ddphi(3, 0.0);
        double d2 = reldiff(l2, r2);
        ck.add("A3(2): phi2''(0) == -phi3''(0)", true, d2 < tol, d2);
    }
    // (A3) order 4 (warnings)
    if (order >= 4) {
        double w_tol = 1e-4;
        double a = d4phi(1, 0.0), b = d4phi(2, 0.25 * omega2_);
        double r1 = std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
        ck.add("A3(2) order 4: phi1''''(0) == phi2''''(omega2/4)", false, r1 < w_tol, r1,
               "finite-difference check");
        double c = d4phi(2, 0.0), d = d4phi(3, 0.0);
        double r2 = std::abs(c - d) / std::max({std::abs(c), std::abs(d), 1.0});
        ck.add("A3(2) order 4: phi2''''(0) == phi3''''(0)", false, r2 < w_tol, r2,
               "finite-difference check");
        double e = d4phi(1, 0.0), f = d4phi(1, 0.5 * omega1_);
        double r3 = std::abs(e - f) / std::max({std::abs(e), std::abs(f), 1.0});
        ck.add("A3(1) order 4: phi1''''(0) == phi1''''(omega1/2)", false, r3 < w_tol, r3,
               "finite-difference check");
    }
    return ck.rep;
}

void ProfileTriple::ensure_valid(int order) const {
    ValidationReport rep = validate(order);
    if (rep.hard_ok()) return;
    // map the first failing hard condition onto the typed errors
    for (const auto& it : rep.items) {
        if (!it.hard || it.passed) continue;
        if (it.condition.find("min phi1 >= max phi2") != std::string::npos ||
            it.condition.find("off contact set") != std::string::npos)
            throw NonPositiveGap(it.condition);
    }
    for (const auto& it : rep.items) {
        if (!it.hard || it.passed) continue;
        if (it.condition.rfind("A5", 0) == 0) throw MonotonicityViolation(it.condition);
    }
    for (const auto& it : rep.items)
        if (it.hard && !it.passed) throw IncompatibleParameters(it.condition);
}

// ---------------- reference family ----------------

ProfileTriple make_trig_family(double nu0, double nu1, double nu3, double omega1,
                               double omega2, double N, TrigPhi3 mode,
                               std::string* warning) {
    if (!(nu0 > nu1 && nu1 > 0.0 && 0.0 > nu3))
        throw IncompatibleParameters("need nu0 > nu1 > 0 > nu3");
    double lhs = (nu0 - nu1) / (omega1 * omega1), rhs = nu1 / (omega2 * omega2);
    if (std::abs(lhs - rhs) > 1e-12 * std::max(lhs, rhs))
        throw IncompatibleParameters(
            "order-2 contact requires (nu0-nu1)/omega1^2 == nu1/omega2^2");

    double c_curv = nu1 * std::pow(2.0 * M_PI / omega2, 2.0);
    double c = (mode == TrigPhi3::MatchNu3) ? (-nu3 / (N * N)) : c_curv;
    if (mode == TrigPhi3::MatchNu3 && std::abs(c - c_curv) > 1e-12 * c_curv && warning)
        *warning = "order-2 phi2/phi3 contact condition fails for phi3(N)=nu3; "
                   "pass TrigPhi3::MatchCurvature to fix the curvature instead";

    double w1 = 2.0 * M_PI / omega1, w2 = 2.0 * M_PI / omega2;
    ProfileFunction f1{
        [=](double t) { double s = std::sin(w1 * t); return nu1 + (nu0 - nu1) * s * s; },
        [=](double t) { return (nu0 - nu1) * w1 * std::sin(2.0 * w1 * t); },
        [=](double t) { return 2.0 * (nu0 - nu1) * w1 * w1 * std::cos(2.0 * w1 * t); }};
    ProfileFunction f2{
        [=](double t) { double s = std::sin(w2 * t); return nu1 * s * s; },
        [=](double t) { return nu1 * w2 * std::sin(2.0 * w2 * t); },
        [=](double t) { return 2.0 * nu1 * w2 * w2 * std::cos(2.0 * w2 * t); }};
    ProfileFunction f3{[=](double t) { return -c * t * t; },
                       [=](double t) { return -2.0 * c * t; },
                       [=](double) { return -2.0 * c; }};
    return ProfileTriple(std::move(f1), std::move(f2), std::move(f3), omega1, omega2, N);
}

ProfileTriple make_cf1() {
    return make_trig_family(2.0, 1.0, -1.0, 2.0 * M_PI, 2.0 * M_PI, 1.0);
}

} // namespace lbt::profiles
