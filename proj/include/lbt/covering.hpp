// Cylinder geometry: the Z2+Z2 action, the branch set S = S1 u S2, the
// boundary symmetry group, metric/integral coefficient evaluation, and the
// pushforward smoothness probe in the branch-centered chart.
#ifndef LBT_COVERING_HPP
#define LBT_COVERING_HPP

#include <array>
#include <vector>

#include "lbt/profiles.hpp"

namespace lbt::covering {

using profiles::ProfileTriple;

struct CylinderPoint {
    double theta1 = 0.0; // mod omega1
    double theta2 = 0.0; // mod omega2
    double theta3 = 0.0; // in [-N, N]
};

enum class PointClass { Regular, S1Branch, S2Branch };

struct MetricCoeffs {
    double Pi1 = 0.0, Pi2 = 0.0, Pi3 = 0.0;
    double phi1 = 0.0, phi2 = 0.0, phi3 = 0.0;
};

/// Reduce a point to the fundamental ranges [0,omega1) x [0,omega2) x [-N,N].
CylinderPoint reduce(const ProfileTriple& t, CylinderPoint p);

/// Default branch-set tolerance: 1e-9 * min(omega1, omega2).
double branch_tolerance(const ProfileTriple& t);

/// S1: theta1 = 0 (mod omega1/2) and theta2 = omega2/4 (mod omega2/2);
/// S2: theta2 = 0 (mod omega2/2) and theta3 = 0.
PointClass classify_point(const ProfileTriple& t, const CylinderPoint& p, double tol);
PointClass classify_point(const ProfileTriple& t, const CylinderPoint& p);

/// Distance-like proximity measure to the branch set (coordinates).
double branch_distance(const ProfileTriple& t, const CylinderPoint& p);

/// Orbit under {id, s1, s2, s1 s2} with
/// s1: (t1,t2,t3) -> (-t1, omega2/2 - t2, t3), s2: (t1,t2,t3) -> (t1,-t2,-t3);
/// duplicates collapsed at fixed points.
std::vector<CylinderPoint> group_orbit(const ProfileTriple& t, const CylinderPoint& p);

/// Orbit of a boundary point under the 8-element group generated by
/// t1 -> -t1, t1 -> omega1/2 - t1, t2 -> -t2, t2 -> omega2/2 - t2.
std::vector<std::array<double, 2>> symmetry_orbit_boundary(const ProfileTriple& t,
                                                           double theta1, double theta2);

/// Pi_1 = (phi1-phi2)(phi1-phi3) etc.; all coefficients vanish on S.
MetricCoeffs metric_coeffs(const ProfileTriple& t, const CylinderPoint& p);

/// Quadratic-form coefficient triples of the first integrals:
/// I1: ((phi2+phi3) Pi1, (phi1+phi3) Pi2, (phi1+phi2) Pi3),
/// I2: ((phi2 phi3) Pi1, (phi1 phi3) Pi2, (phi1 phi2) Pi3).
/// The I2 triple follows the Stackel system, which fixes the distinct
/// middle/last coefficients.
std::array<double, 3> integral_coeffs_I1(const ProfileTriple& t, const CylinderPoint& p);
std::array<double, 3> integral_coeffs_I2(const ProfileTriple& t, const CylinderPoint& p);

/// Pushforward metric in the S1-centered chart y1 = x1^2 - x2^2, y2 = 2 x1 x2
/// around theta1 = 0, theta2 = omega2/4. At (x1,x2) = (0,0) returns the
/// radial limit g11 = g22 = (a1/4)(nu1 - phi3), g12 = 0 with a1 = phi1''(0)/2.
struct PushforwardProbe {
    double g11 = 0.0, g12 = 0.0, g22 = 0.0, g33 = 0.0;
    double A11 = 0.0, A12 = 0.0, A22 = 0.0, A33 = 0.0;
};
PushforwardProbe pushforward_probe(const ProfileTriple& t, double x1, double x2,
                                   double x3);

} // namespace lbt::covering

#endif
