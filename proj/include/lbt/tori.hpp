// Invariant-torus bookkeeping: root classification of P(t) = t^2 - h1 t + h2,
// torus parameterisation in the boundary cases (A) and (B), Leray densities
// and masses.
#ifndef LBT_TORI_HPP
#define LBT_TORI_HPP

#include <optional>
#include <utility>

#include "lbt/dynamics.hpp"
#include "lbt/profiles.hpp"

namespace lbt::tori {

using dynamics::BoundaryCovector;
using profiles::ProfileTriple;

enum class CaseTag { A, B, C, D, Degenerate };

struct TorusSpec {
    double k1 = 0.0, k2 = 0.0; // roots, k1 <= k2
    CaseTag tag = CaseTag::A;
    int eps1 = +1, eps2 = +1;
    int component = 1;

    double h1() const { return k1 + k2; }
    double h2() const { return k1 * k2; }
};

/// Real roots of t^2 - h1 t + h2 sorted ascending; empty when the
/// discriminant is negative (empty level set).
std::optional<std::pair<double, double>> roots_from_h(double h1, double h2);

/// Interior case tag; Degenerate when any defining inequality is within
/// 1e-12 of equality or the roots leave [nu3, nu0].
CaseTag classify_case(double k1, double k2, const ProfileTriple& t);

/// Classify and bundle; throws OutsideProjection for C/D when
/// require_boundary_case is set.
TorusSpec make_spec(const ProfileTriple& t, double k1, double k2, int eps1 = +1,
                    int eps2 = +1);

/// Projection region of the canonical component:
/// case A: |theta2| <= f2(k2) (theta2 reduced to [-omega2/2, omega2/2));
/// case B: theta1 in [f1(k2), omega1/2 - f1(k2)] (theta1 reduced mod omega1).
bool in_projection(const ProfileTriple& t, const TorusSpec& s, double theta1,
                   double theta2);

/// Point of the invariant torus over (theta1, theta2):
/// p1 = eps1 sqrt(P(phi1)), p2 = eps2 sqrt(-P(phi2)). Cases A and B only.
BoundaryCovector torus_point(const ProfileTriple& t, const TorusSpec& s, double theta1,
                             double theta2);

/// Leray density lambda_h = (phi1 - phi2)/(sqrt(P(phi1)) sqrt(-P(phi2))).
/// Throws TurningPointSingularity on the region edge.
double leray_density(const ProfileTriple& t, const TorusSpec& s, double theta1,
                     double theta2);

/// Total Leray mass of the torus (both eps2 resp. eps1 leaves), computed in
/// x-coordinates after the inverse-branch substitution.
double leray_mass(const ProfileTriple& t, const TorusSpec& s);

/// Same quantity by direct theta-space quadrature (independent route).
double leray_mass_theta(const ProfileTriple& t, const TorusSpec& s);

} // namespace lbt::tori

#endif
