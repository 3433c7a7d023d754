// Actions J1-J3 of the billiard flow, the frequency map of the billiard
// ball map (two independent routes: action-gradient solve and the closed
// double-integral forms), its Jacobian, the boundary-degenerate limit
// delta(kappa2), the boundary-geodesic rotation function, and empirical
// rotation vectors from winding averages.
#ifndef LBT_FREQUENCY_HPP
#define LBT_FREQUENCY_HPP

#include <array>
#include <utility>

#include "lbt/dual.hpp"
#include "lbt/profiles.hpp"
#include "lbt/tori.hpp"

namespace lbt::freq {

using profiles::ProfileTriple;
using tori::CaseTag;
using tori::TorusSpec;

struct FrequencyRecord {
    double k1 = 0.0, k2 = 0.0;
    CaseTag tag = CaseTag::A;
    double J1 = 0.0, J2 = 0.0, J3 = 0.0;
    std::array<std::array<double, 2>, 3> dJ{}; // dJ[k][i] = dJ_{k+1}/dkappa_{i+1}
    double Omega1 = 0.0, Omega2 = 0.0;
    double jac = 0.0;
};

/// Generalized actions (case A, and the derived case-B analogues):
/// J1 = (2/pi) int sqrt((x-k1)(x-k2)) rho1, J2 = (2/pi) int sqrt((x-k1)(k2-x)) rho2,
/// J3 = (1/pi) int_{nu3}^{k1} sqrt((k1-x)(k2-x)) rho3.
double action(const ProfileTriple& t, int k, double k1, double k2);

/// Same actions from the theta-space line integrals (test oracle).
double action_theta(const ProfileTriple& t, int k, double k1, double k2);

/// Differentiated quadratures for dJ_k/dkappa_i.
std::array<std::array<double, 2>, 3> action_grad(const ProfileTriple& t, double k1,
                                                 double k2);

/// Frequencies from the 2x2 linear system
/// [dJ1/dk dJ2/dk] Omega = -2 pi dJ3/dk. Throws SingularSystem.
std::pair<double, double> frequencies(const ProfileTriple& t, double k1, double k2);

/// The closed double-integral forms A, B, D with their kappa-gradients,
/// evaluated by dual-number tensor quadrature. Omega1 = pi A/D, Omega2 = pi B/D.
struct ClosedForms {
    Dual2 A, B, D;
};
ClosedForms closed_forms(const ProfileTriple& t, double k1, double k2);
std::pair<double, double> frequencies_closed(const ProfileTriple& t, double k1, double k2);

/// Jacobian of (k1,k2) -> (Omega1,Omega2):
/// pi^2 D^-4 det [A_k D - A D_k ; B_k D - B D_k].
double jacobian(const ProfileTriple& t, double k1, double k2);

/// pi^-2 D^2 jacobian — the normalisation whose kappa1 -> nu3 limit is
/// delta(kappa2). (The printed D^3 normalisation is off by one power of D
/// against the Jacobian formula; D^2 is the self-consistent choice.)
double normalized_jacobian(const ProfileTriple& t, double k1, double k2);

/// Boundary-limit functional
/// delta(k2) = 2 (rho3(nu3)/sqrt(k2-nu3))^2 E2(k2)^2 d/dk2 [E1(k2)/E2(k2)],
/// with E1 = int_{nu1}^{nu0} sqrt(x-nu3) rho1/sqrt(x-k2) dx and
/// E2 = int_0^{k2} sqrt(x-nu3) rho2/sqrt(k2-x) dx.
double delta_limit(const ProfileTriple& t, double k2);

/// Edge integrals E1, E2 above (exposed for the rotation-function tests).
double edge_integral_1(const ProfileTriple& t, double kappa);
double edge_integral_2(const ProfileTriple& t, double kappa);

/// Rotation function of the boundary geodesic flow: rho(k) = 2 E1(k)/E2(k).
double boundary_rotation(const ProfileTriple& t, double kappa);

/// Actions of the boundary geodesic flow on {l = 1, I = kappa}.
std::pair<double, double> boundary_actions(const ProfileTriple& t, double kappa);

struct EmpiricalRotation {
    double w1 = 0.0, w2 = 0.0; // cycles per bounce (least-squares slope)
    double w1_plain = 0.0, w2_plain = 0.0;
    int bounces = 0;
};

/// Winding averages over n billiard-map iterates started on the torus.
/// Case A: w1 = theta1 winding / omega1, w2 = (theta2,p2) libration cycles;
/// case B the roles are exchanged. Converges to Omega/(2 pi).
EmpiricalRotation empirical_rotation(const ProfileTriple& t, const TorusSpec& spec, int n,
                                     double tol = 1e-10, double theta1_start = 0.0,
                                     double theta2_start = 0.0);

FrequencyRecord record(const ProfileTriple& t, double k1, double k2);

} // namespace lbt::freq

#endif
