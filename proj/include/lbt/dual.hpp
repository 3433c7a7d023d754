// Minimal forward-mode dual numbers carrying two partial derivatives,
// used to differentiate quadratures with respect to (kappa1, kappa2).
#ifndef LBT_DUAL_HPP
#define LBT_DUAL_HPP

#include <cmath>

namespace lbt {

struct Dual2 {
    double v = 0.0;  // value
    double d1 = 0.0; // d/d kappa1
    double d2 = 0.0; // d/d kappa2

    Dual2() = default;
    Dual2(double value) : v(value) {}
    Dual2(double value, double dk1, double dk2) : v(value), d1(dk1), d2(dk2) {}

    static Dual2 seed1(double value) { return {value, 1.0, 0.0}; }
    static Dual2 seed2(double value) { return {value, 0.0, 1.0}; }
};

inline Dual2 operator+(const Dual2& a, const Dual2& b) {
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
}
inline Dual2 operator-(const Dual2& a, const Dual2& b) {
    return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
}
inline Dual2 operator-(const Dual2& a) { return {-a.v, -a.d1, -a.d2}; }
inline Dual2 operator*(const Dual2& a, const Dual2& b) {
    return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + a.v * b.d2};
}
inline Dual2 operator/(const Dual2& a, const Dual2& b) {
    double inv = 1.0 / b.v;
    double q = a.v * inv;
    return {q, (a.d1 - q * b.d1) * inv, (a.d2 - q * b.d2) * inv};
}
inline Dual2 operator*(const Dual2& a, double s) { return {a.v * s, a.d1 * s, a.d2 * s}; }
inline Dual2 operator*(double s, const Dual2& a) { return a * s; }

inline Dual2 sqrt(const Dual2& a) {
    double r = std::sqrt(a.v);
    double h = 0.5 / r;
    return {r, a.d1 * h, a.d2 * h};
}

/// Compose with a scalar function given its value and derivative at a.v.
inline Dual2 compose(const Dual2& a, double f, double df) {
    return {f, df * a.d1, df * a.d2};
}

} // namespace lbt

#endif
