// Singular-integral engine: Gauss-Legendre rules combined with the
// x = a + (b-a) sin^2(psi) substitution that turns inverse-square-root
// endpoint weights into analytic integrands, plus graded panels for
// near-singular parameters and the asymptotic validators of the
// square-root and logarithmic edge expansions.
#ifndef LBT_QUADRATURE_HPP
#define LBT_QUADRATURE_HPP

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "lbt/errors.hpp"

namespace lbt::quad {

enum class Singularity { None, InverseSqrt };
enum class Substitution { None, Trig };

struct QuadratureSpec {
    double a = 0.0;
    double b = 1.0;
    Singularity at_a = Singularity::None;
    Singularity at_b = Singularity::None;
    int nodes = 64;
    Substitution sub = Substitution::Trig;
};

struct Result {
    double value = 0.0;
    double error = 0.0; // difference between the two finest passes
};

/// Gauss-Legendre nodes and weights on [-1,1]; cached and thread-safe.
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};
const GaussRule& gauss_rule(int n);

/// One fixed-resolution pass of the substituted rule. T may be double or a
/// dual-number type; the integrand receives the abscissa as plain double.
/// With the trig substitution x = a + (b-a) sin^2(psi), a double
/// inverse-sqrt weight turns the rule into classical Gauss-Chebyshev
/// (midpoint in psi, exact for polynomial-times-weight); otherwise
/// Gauss-Legendre nodes in psi keep spectral accuracy for smooth parts.
template <class T, class Fn>
T integrate_pass(Fn&& f, const QuadratureSpec& spec, int n) {
    const double a = spec.a, b = spec.b, len = b - a;
    T acc{};
    if (spec.sub == Substitution::Trig) {
        const double half = 0.25 * M_PI;
        const bool chebyshev = spec.at_a == Singularity::InverseSqrt &&
                               spec.at_b == Singularity::InverseSqrt;
        if (chebyshev) {
            const double dpsi = 2.0 * half / n;
            for (int i = 0; i < n; ++i) {
                double psi = half * (2.0 * i + 1.0) / n;
                double s = std::sin(psi), c = std::cos(psi);
                double x = a + len * s * s;
                acc = acc + f(x) * (dpsi * len * 2.0 * s * c);
            }
        } else {
            const GaussRule& rule = gauss_rule(n);
            for (int i = 0; i < n; ++i) {
                double psi = half * (rule.x[i] + 1.0);
                double s = std::sin(psi), c = std::cos(psi);
                double x = a + len * s * s;
                acc = acc + f(x) * (rule.w[i] * half * len * 2.0 * s * c);
            }
        }
    } else {
        const GaussRule& rule = gauss_rule(n);
        const double mid = 0.5 * (a + b), r = 0.5 * len;
        for (int i = 0; i < n; ++i)
            acc = acc + f(mid + r * rule.x[i]) * (rule.w[i] * r);
    }
    return acc;
}

/// Adaptive-by-doubling integration: converged when successive passes
/// differ by less than max(1e-11, 1e-9 |value|).
/// Throws NonConvergent after four doublings.
Result integrate(const std::function<double(double)>& f, const QuadratureSpec& spec);

/// Tensor-product version for the double integrals of the frequency and
/// Radon reductions. Doubles both directions together.
Result integrate2(const std::function<double(double, double)>& f,
                  const QuadratureSpec& sx, const QuadratureSpec& sy);

/// Integral with a cluster of algebraic singularities of width `delta` at
/// the left (or right) end: dyadic panels [a, a+delta, a+2 delta, ...]
/// resolve an integrable branch point at the endpoint together with a
/// second branch point at distance ~delta outside the interval.
Result integrate_graded_left(const std::function<double(double)>& f,
                             double a, double b, double delta,
                             Singularity at_a, Singularity at_b);
Result integrate_graded_right(const std::function<double(double)>& f,
                              double a, double b, double delta,
                              Singularity at_a, Singularity at_b);

// -------- asymptotic validators --------

/// F(k) = int_a^k f(x,k)/sqrt(k-x) dx against 2 f(a,k) sqrt(k-a).
struct SqrtExpansionReport {
    double fitted_exponent = 0.0; // log-log slope of the residual, ~1.5
    double fitted_C = 0.0;        // residual ~ C (k-a)^(3/2)
    double deriv_exponent = 0.0;  // slope of the F' residual, ~0.5
    std::vector<double> residuals;
};
SqrtExpansionReport check_sqrt_expansion(const std::function<double(double, double)>& f,
                                         double a, const std::vector<double>& kappas);

/// Log-singular edge forms. Upper: int_0^M F(sqrt t)/(sqrt t sqrt(t-alpha)) dt,
/// whose alpha->0- expansion is -2 F(0) log sqrt(-alpha) + O(1).
/// Lower: int_m^alpha F(sqrt(-t))/(sqrt(-t) sqrt(alpha-t)) dt,
/// which behaves as  -2 F(0) log sqrt(-alpha) + O(1) as well (the integral
/// is positive and divergent for positive F).
enum class LogForm { Upper, Lower };
struct LogFitReport {
    double c = 0.0; // fitted coefficient of log sqrt(-alpha)
    double d = 0.0; // fitted constant
};
LogFitReport check_log_asymptotics(LogForm form, const std::function<double(double)>& F,
                                   double bound, const std::vector<double>& alphas);

/// Least-squares fit y ~ c*log(sqrt(-alpha)) + d over the sample set.
LogFitReport fit_log_coefficient(const std::vector<double>& alphas,
                                 const std::vector<double>& values);

} // namespace lbt::quad

#endif
