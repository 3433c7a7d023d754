// Billiard flow on T*C and the induced billiard ball map on the coball
// bundle of the boundary torus. Adaptive Dormand-Prince 5(4) with dense
// output localises the boundary crossings.
#ifndef LBT_DYNAMICS_HPP
#define LBT_DYNAMICS_HPP

#include <array>
#include <functional>
#include <utility>

#include "lbt/covering.hpp"
#include "lbt/profiles.hpp"

namespace lbt::dynamics {

using profiles::ProfileTriple;

struct PhasePoint {
    double theta1 = 0.0, theta2 = 0.0, theta3 = 0.0;
    double p1 = 0.0, p2 = 0.0, p3 = 0.0;
};

/// Covector on the boundary torus theta3 = side*N with metric norm < 1.
struct BoundaryCovector {
    double theta1 = 0.0, theta2 = 0.0;
    double p1 = 0.0, p2 = 0.0;
    int side = +1; // +1: theta3 = N, -1: theta3 = -N
};

/// First integrals (no 1/2 in the Hamiltonian):
/// H = p1^2/Pi1 + p2^2/Pi2 + p3^2/Pi3, I1 and I2 with the Stackel triples.
/// Throws BranchSetEvaluation on the branch set.
std::array<double, 3> hamiltonian_values(const ProfileTriple& t, const PhasePoint& z);

/// Stackel residuals p1^2 - (phi1^2 H - phi1 I1 + I2) etc., for diagnostics.
std::array<double, 3> stackel_residuals(const ProfileTriple& t, const PhasePoint& z);

/// Boundary integrals of the billiard ball map on the unit-energy lift:
/// cI1 = (phi1+phi2) - (phi1-nu3) p1^2/Pi1 - (phi2-nu3) p2^2/Pi2,
/// cI2 = phi1 phi2 - phi2 (phi1-nu3) p1^2/Pi1 - phi1 (phi2-nu3) p2^2/Pi2.
std::array<double, 2> boundary_integrals(const ProfileTriple& t,
                                         const BoundaryCovector& xi);

/// Elastic reflection p3 -> -p3; requires |theta3| = N (relative 1e-9).
PhasePoint reflect(const ProfileTriple& t, const PhasePoint& z);

using StepObserver = std::function<void(double, const PhasePoint&)>;

struct FlowResult {
    PhasePoint state; // |theta3| = N on return
    double time = 0.0;
    int hit_side = +1;
};

/// Integrates Hamilton's equations until |theta3| = N (event localised to
/// 1e-12 * N). theta1, theta2 are NOT reduced mod omega so continuous lifts
/// can be accumulated by the observer (called at every accepted step).
/// Throws BranchProximity if the trajectory approaches the branch set and
/// StepFailure if the step control collapses.
FlowResult integrate_to_boundary(const ProfileTriple& t, const PhasePoint& z0,
                                 double tol = 1e-10, const StepObserver& obs = {});

/// Lift via p3 = -side sqrt(Pi3) sqrt(1 - p1^2/Pi1 - p2^2/Pi2), requires the
/// coball margin 1 - |xi|^2 > 1e-10 (GlancingRay otherwise).
PhasePoint lift_inward(const ProfileTriple& t, const BoundaryCovector& xi);

/// The billiard ball map B: lift, flow to the next boundary hit, reflect,
/// project back. theta1/theta2 of the result keep their continuous lift.
BoundaryCovector billiard_map(const ProfileTriple& t, const BoundaryCovector& xi,
                              double tol = 1e-10, const StepObserver& obs = {},
                              double* flight_time = nullptr);

struct ConservationReport {
    double driftH = 0.0, driftI1 = 0.0, driftI2 = 0.0;
    int bounces = 0;
};

/// Iterates the billiard map n times and tracks the worst relative drift of
/// (H, I1, I2) along the chain of full phase points.
ConservationReport conservation_report(const ProfileTriple& t, const BoundaryCovector& xi0,
                                       int n_bounces, double tol = 1e-10);

} // namespace lbt::dynamics

#endif
