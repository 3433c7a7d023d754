#include "lbt/legendre.hpp"

#include <cmath>
#include <stdexcept>

#include "lbt/errors.hpp"

namespace lbt::legendre {

SymmetricPoint SymmetricPoint::from_roots(double x1, double x2) {
    if (!(0.0 < x2 && x2 <= x1))
        throw IndexOutOfRange("SymmetricPoint requires 0 < x2 <= x1");
    return {0.5 * (x1 + x2), std::sqrt(x1 * x2)};
}

double legendre_P(int k, double z) {
    if (k < 0) throw IndexOutOfRange("legendre_P: negative order");
    if (k == 0) return 1.0;
    double p0 = 1.0, p1 = z;
    for (int j = 2; j <= k; ++j) {
        double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

std::vector<double> legendre_P_all(int k, double z) {
    std::vector<double> p(k + 1);
    p[0] = 1.0;
    if (k >= 1) p[1] = z;
    for (int j = 2; j <= k; ++j)
        p[j] = ((2.0 * j - 1.0) * z * p[j - 1] - (j - 1.0) * p[j - 2]) / j;
    return p;
}

double R_k(double x1, double x2, int k) {
    SymmetricPoint s = SymmetricPoint::from_roots(x1, x2);
    // pi s2^k P_k(s1/s2); s2^k can underflow-free pair with P_k growth,
    // accumulate the recurrence on the rescaled values s2^j P_j(s1/s2)
    if (k == 0) return M_PI;
    double q0 = 1.0;           // s2^0 P_0
    double q1 = s.s1;          // s2^1 P_1(s1/s2) = s1
    for (int j = 2; j <= k; ++j) {
        double q2 = ((2.0 * j - 1.0) * s.s1 * q1 - (j - 1.0) * s.s2 * s.s2 * q0) / j;
        q0 = q1;
        q1 = q2;
    }
    return M_PI * q1;
}

double inverse_sqrt_series_coeff(int j, double x1, double x2) {
    if (j < 1) throw IndexOutOfRange("inverse_sqrt_series_coeff: j >= 1 required");
    return -R_k(x1, x2, j - 1) / M_PI;
}

namespace {

// log of A_j = (2j-1)!!/j!; A_0 = 1
double log_A(int j) {
    double s = 0.0;
    for (int i = 1; i <= j; ++i) s += std::log((2.0 * i - 1.0) / i);
    return s;
}

double A_exact(int j) {
    double a = 1.0;
    for (int i = 1; i <= j; ++i) a *= (2.0 * i - 1.0) / i;
    return a;
}

} // namespace

double adams_coeff(int m, int k, int r) {
    if (m < 0 || k < 0 || 2 * k > m || r < 0 || 2 * r > m)
        throw IndexOutOfRange("adams_coeff: need 0 <= 2k <= m, 0 <= 2r <= m");
    if (k - r < 0 || m - k - r < 0) return 0.0; // A_j = 0 for j <= -1
    double ratio;
    if (m <= 15) {
        ratio = A_exact(k - r) * A_exact(r) * A_exact(m - k - r) / A_exact(m - r);
    } else {
        ratio = std::exp(log_A(k - r) + log_A(r) + log_A(m - k - r) - log_A(m - r));
    }
    return ratio * (2.0 * m - 4.0 * r + 1.0) / (2.0 * m - 2.0 * r + 1.0);
}

std::vector<double> monomial_in_legendre(int m) {
    if (m < 0) throw IndexOutOfRange("monomial_in_legendre: negative degree");
    // monomial coefficient rows of P_0..P_m
    std::vector<std::vector<double>> P(m + 1);
    P[0] = {1.0};
    if (m >= 1) P[1] = {0.0, 1.0};
    for (int j = 2; j <= m; ++j) {
        P[j].assign(j + 1, 0.0);
        for (int i = 0; i <= j - 1; ++i)
            P[j][i + 1] += (2.0 * j - 1.0) / j * P[j - 1][i];
        for (int i = 0; i <= j - 2; ++i)
            P[j][i] -= (j - 1.0) / j * P[j - 2][i];
    }
    // triangular elimination: peel off P_m, P_{m-2}, ...
    std::vector<double> rem(m + 1, 0.0);
    rem[m] = 1.0;
    std::vector<double> a;
    for (int k = m; k >= 0; k -= 2) {
        double c = rem[k] / P[k][k];
        a.push_back(c);
        for (int i = 0; i <= k; ++i) rem[i] -= c * P[k][i];
    }
    return a;
}

} // namespace lbt::legendre
