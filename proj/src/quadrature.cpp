#include "lbt/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace lbt::quad {

namespace {

GaussRule compute_rule(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre recurrence and derivative at x
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    return r;
}

std::mutex rule_mutex;
std::map<int, GaussRule> rule_cache;

double converge(const std::function<double(int)>& pass, int n0, double* err_out) {
    double prev = pass(n0);
    int n = n0;
    for (int d = 0; d < 4; ++d) {
        n *= 2;
        double cur = pass(n);
        double diff = std::abs(cur - prev);
        if (diff < std::max(1e-11, 1e-9 * std::abs(cur))) {
            if (err_out) *err_out = diff;
            return cur;
        }
        prev = cur;
    }
    throw NonConvergent("quadrature did not converge after 4 doublings");
}

} // namespace

const GaussRule& gauss_rule(int n) {
    std::lock_guard<std::mutex> lock(rule_mutex);
    auto it = rule_cache.find(n);
    if (it == rule_cache.end()) it = rule_cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

Result integrate(const std::function<double(double)>& f, const QuadratureSpec& spec) {
    if (!(spec.a < spec.b)) throw QuadratureFailure("integrate: empty interval");
    Result res;
    res.value = converge([&](int n) { return integrate_pass<double>(f, spec, n); },
                         std::max(4, spec.nodes), &res.error);
    return res;
}

Result integrate2(const std::function<double(double, double)>& f,
                  const QuadratureSpec& sx, const QuadratureSpec& sy) {
    auto pass = [&](int n) {
        return integrate_pass<double>(
            [&](double x) {
                return integrate_pass<double>([&](double y) { return f(x, y); }, sy, n);
            },
            sx, n);
    };
    Result res;
    res.value = converge(pass, std::max(4, std::min(sx.nodes, 48)), &res.error);
    return res;
}

namespace {

Result integrate_graded(const std::function<double(double)>& f, double a, double b,
                        double delta, Singularity at_a, Singularity at_b, bool from_left) {
    const double len = b - a;
    if (!(len > 0)) throw QuadratureFailure("graded: empty interval");
    delta = std::min(std::max(delta, 1e-300), len);
    // breakpoints measured from the graded end
    std::vector<double> cuts;
    cuts.push_back(0.0);
    for (double d = delta; d < 0.5 * len; d *= 2.0) cuts.push_back(d);
    cuts.push_back(len);

    auto pass = [&](int n) {
        double total = 0.0;
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            QuadratureSpec s;
            if (from_left) {
                s.a = a + cuts[k];
                s.b = a + cuts[k + 1];
                s.at_a = (k == 0) ? at_a : Singularity::None;
                s.at_b = (k + 2 == cuts.size()) ? at_b : Singularity::None;
            } else {
                s.a = b - cuts[k + 1];
                s.b = b - cuts[k];
                s.at_b = (k == 0) ? at_b : Singularity::None;
                s.at_a = (k + 2 == cuts.size()) ? at_a : Singularity::None;
            }
            // trig substitution everywhere: harmless on smooth panels and it
            // regularises the flagged ends
            total += integrate_pass<double>(f, s, n);
        }
        return total;
    };
    Result res;
    res.value = converge(pass, 48, &res.error);
    return res;
}

} // namespace

Result integrate_graded_left(const std::function<double(double)>& f, double a, double b,
                             double delta, Singularity at_a, Singularity at_b) {
    return integrate_graded(f, a, b, delta, at_a, at_b, true);
}

Result integrate_graded_right(const std::function<double(double)>& f, double a, double b,
                              double delta, Singularity at_a, Singularity at_b) {
    return integrate_graded(f, a, b, delta, at_a, at_b, false);
}

SqrtExpansionReport check_sqrt_expansion(const std::function<double(double, double)>& f,
                                         double a, const std::vector<double>& kappas) {
    SqrtExpansionReport rep;
    std::vector<double> lt, lr, ltd, lrd;
    for (double k : kappas) {
        QuadratureSpec s;
        s.a = a;
        s.b = k;
        s.at_b = Singularity::InverseSqrt;
        auto F = [&](double kk) {
            QuadratureSpec sk = s;
            sk.b = kk;
            return integrate([&](double x) { return f(x, kk) / std::sqrt(kk - x); }, sk).value;
        };
        double Fk = F(k);
        double lead = 2.0 * f(a, k) * std::sqrt(k - a);
        double resid = Fk - lead;
        rep.residuals.push_back(resid);
        if (std::abs(resid) > 1e-12) {
            lt.push_back(std::log(k - a));
            lr.push_back(std::log(std::abs(resid)));
        }
        // derivative form (b): F'(k) ~ f(a,k)/sqrt(k-a)
        double h = 1e-5 * (k - a);
        double Fp = (F(k + h) - F(k - h)) / (2.0 * h);
        double dres = Fp - f(a, k) / std::sqrt(k - a);
        if (std::abs(dres) > 1e-10) {
            ltd.push_back(std::log(k - a));
            lrd.push_back(std::log(std::abs(dres)));
        }
    }
    auto slope = [](const std::vector<double>& t, const std::vector<double>& y,
                    double* intercept) {
        if (t.size() < 2) {
            if (intercept) *intercept = 0.0;
            return 0.0;
        }
        double n = double(t.size()), st = 0, sy = 0, stt = 0, sty = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            st += t[i];
            sy += y[i];
            stt += t[i] * t[i];
            sty += t[i] * y[i];
        }
        double m = (n * sty - st * sy) / (n * stt - st * st);
        if (intercept) *intercept = (sy - m * st) / n;
        return m;
    };
    double logC = 0.0;
    rep.fitted_exponent = slope(lt, lr, &logC);
    rep.fitted_C = std::exp(logC);
    rep.deriv_exponent = slope(ltd, lrd, nullptr);
    return rep;
}

LogFitReport fit_log_coefficient(const std::vector<double>& alphas,
                                 const std::vector<double>& values) {
    double n = double(alphas.size()), st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        double t = std::log(std::sqrt(-alphas[i]));
        st += t;
        sy += values[i];
        stt += t * t;
        sty += t * values[i];
    }
    LogFitReport rep;
    rep.c = (n * sty - st * sy) / (n * stt - st * st);
    rep.d = (sy - rep.c * st) / n;
    return rep;
}

LogFitReport check_log_asymptotics(LogForm form, const std::function<double(double)>& F,
                                   double bound, const std::vector<double>& alphas) {
    std::vector<double> vals;
    vals.reserve(alphas.size());
    for (double alpha : alphas) {
        if (!(alpha < 0)) throw QuadratureFailure("log asymptotics: alpha must be negative");
        double r = std::sqrt(-alpha);
        double v = 0.0;
        if (form == LogForm::Upper) {
            // t = u^2: 2 int_0^sqrt(M) F(u)/sqrt(u^2 - alpha) du, steep near 0
            double U = std::sqrt(bound);
            v = 2.0 * integrate_graded_left(
                          [&](double u) { return F(u) / std::sqrt(u * u - alpha); }, 0.0, U,
                          r, Singularity::None, Singularity::None)
                          .value;
        } else {
            // t = -u^2: 2 int_r^sqrt(-m) F(u)/(sqrt(u-r) sqrt(u+r)) du
            double U = std::sqrt(-bound);
            v = 2.0 * integrate_graded_left(
                          [&](double u) { return F(u) / std::sqrt((u - r) * (u + r)); }, r, U,
                          r, Singularity::InverseSqrt, Singularity::None)
                          .value;
        }
        vals.push_back(v);
    }
    return fit_log_coefficient(alphas, vals);
}

} // namespace lbt::quad
