// Legendre polynomials, the R_k singular-kernel closed form, the Adams
// product-linearisation coefficients, and monomial <-> Legendre conversions.
#ifndef LBT_LEGENDRE_HPP
#define LBT_LEGENDRE_HPP

#include <vector>

namespace lbt::legendre {

/// Symmetric coordinates s1 = (x1+x2)/2, s2 = sqrt(x1 x2) for 0 < x2 <= x1.
/// x1 and x2 are recovered as the roots of x^2 - 2 s1 x + s2^2 = 0.
struct SymmetricPoint {
    double s1 = 0.0;
    double s2 = 0.0;
    static SymmetricPoint from_roots(double x1, double x2);
};

/// P_k(z) by the three-term recurrence; exact at z = 1.
double legendre_P(int k, double z);

/// All of P_0..P_k at z in one sweep.
std::vector<double> legendre_P_all(int k, double z);

/// R_k(x1,x2) = int_{x2}^{x1} z^k dz / sqrt((x1-z)(z-x2)) = pi s2^k P_k(s1/s2),
/// evaluated through the closed form.
double R_k(double x1, double x2, int k);

/// Coefficient Q_j of kappa^{-j} in the expansion of
/// 1/sqrt((x1-kappa)(x2-kappa)) for kappa -> -infinity:
/// Q_j = -s2^{j-1} P_{j-1}(s1/s2), j >= 1.
double inverse_sqrt_series_coeff(int j, double x1, double x2);

/// Adams linearisation coefficient c^m_{k,r} in
/// P_k P_{m-k} = sum_r c^m_{k,r} P_{m-2r}, with
/// c^m_{k,r} = (A_{k-r} A_r A_{m-k-r} / A_{m-r}) (2m-4r+1)/(2m-2r+1),
/// A_j = (2j-1)!!/j!  (A_0 = 1, A_j = 0 for j < 0).
/// Requires 0 <= 2k <= m and 0 <= r <= floor(m/2).
double adams_coeff(int m, int k, int r);

/// Coefficients a_r with z^m = sum_r a_r P_{m-2r}(z), r = 0..floor(m/2).
std::vector<double> monomial_in_legendre(int m);

} // namespace lbt::legendre

#endif
