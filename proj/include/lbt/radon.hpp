// Radon transform of boundary functions over Liouville tori, the reduced
// x-coordinate integrals M_A..M_D, the Legendre moment system with its
// rigidity certificate, and periodic-orbit means on rational tori.
#ifndef LBT_RADON_HPP
#define LBT_RADON_HPP

#include <functional>
#include <string>
#include <vector>

#include "lbt/dynamics.hpp"
#include "lbt/frequency.hpp"
#include "lbt/profiles.hpp"
#include "lbt/tori.hpp"

namespace lbt::radon {

using dynamics::BoundaryCovector;
using profiles::ProfileTriple;
using tori::CaseTag;
using tori::TorusSpec;

enum class MuChoice { Unit, NormalIncidence };

/// Pullback of a boundary function to the covering torus T^2_N.
struct BoundaryFunction {
    std::function<double(double, double)> eval; // (theta1, theta2)
    bool g_invariant = false;
};

/// Max violation of the full boundary-symmetry-orbit invariance on a grid.
double g_invariance_residual(const ProfileTriple& t, const BoundaryFunction& K,
                             int grid = 24);

/// Named built-in test functions: "one", "trig" (G-invariant trigonometric
/// polynomial), "product", "codd" (G-odd).
BoundaryFunction kernel_by_name(const ProfileTriple& t, const std::string& name);

/// mu on an invariant torus in (theta1,theta2) coordinates. Unit -> 1;
/// NormalIncidence -> sqrt((phi1-nu3)(phi2-nu3)) / sqrt((k1-nu3)(k2-nu3)).
double mu_weight(const ProfileTriple& t, MuChoice mu, const TorusSpec& s, double theta1,
                 double theta2);

/// Pointwise mu of a boundary covector: sqrt(Pi3)/|p3| of the unit lift.
double mu_of_covector(const ProfileTriple& t, MuChoice mu, const BoundaryCovector& xi);

/// Normalised Radon transform (1/mass) int K mu lambda over the torus,
/// theta-space quadrature with the turning-point substitution.
double radon_torus(const ProfileTriple& t, const BoundaryFunction& K, MuChoice mu,
                   const TorusSpec& s);

/// Reduced kernel K1(x1,x2) = K(f1,f2) (x1-x2) W rho1 rho2 on the open
/// rectangle, where W = 1 (Unit) or sqrt((x1-nu3)(x2-nu3)) (the kappa-free
/// factor of the NormalIncidence weight).
struct ReducedKernel {
    std::function<double(double, double)> eval;
};
ReducedKernel reduce_kernel(const ProfileTriple& t, const BoundaryFunction& K,
                            MuChoice mu);

/// The case integrals M_A..M_D: double integral of kernel/(sqrt((x1-k1)(x2-k1))
/// sqrt(|x1-k2|(k2-x2)...)) over the case-appropriate rectangle.
double M_case(const ProfileTriple& t, CaseTag tag, const ReducedKernel& kernel, double k1,
              double k2);

/// Independent x-space route to the normalised Radon transform via M_case.
double radon_torus_xspace(const ProfileTriple& t, const BoundaryFunction& K, MuChoice mu,
                          const TorusSpec& s);

/// Moment int int K1 s1^{m-2r} s2^{2r} dx1 dx2 over the full rectangle.
double moment(const ProfileTriple& t, const ReducedKernel& kernel, int m, int r);

/// Number of monomials s1^{m-2r} s2^{2r} with m <= d.
int monomial_count(int d);

/// Gram certificate of the degree-d moment system in the weighted L^2
/// pairing with the edge weight of the reduced kernels
/// w = ((x1-nu1)(nu0-x1) x2 (nu1-x2))^{-1/2}. Monomials are normalised to
/// unit weighted norm; a positive minimum singular value certifies that
/// vanishing moments up to degree d kill the degree-d kernel component.
struct RigidityCertificate {
    int degree = 0;
    int dim = 0;
    double min_sv = 0.0;
    double max_sv = 0.0;
    bool ill_conditioned = false; // min < 1e-12 * max
};
RigidityCertificate rigidity_certificate(const ProfileTriple& t, int degree);

/// Polynomials in (u, v) = (s1, s2^2) of joint degree u^a v^b, a + 2b <= d.
struct PolyUV {
    int degree = 0;
    std::vector<double> coef; // indexed like the moment/basis enumeration
};

/// Weighted moments of a synthetic kernel psi(u,v) * w against the basis,
/// solved back through the Gram matrix; returns the reconstructed
/// coefficients (used by the moment-kill test).
std::vector<double> reconstruct_from_moments(const ProfileTriple& t,
                                             const std::function<double(double, double)>& psi,
                                             int degree);
/// Evaluates the reconstruction at (u, v).
double eval_reconstruction(const ProfileTriple& t, const std::vector<double>& coef,
                           int degree, double u, double v);

/// Mean of (K mu) along a (nearly) m-periodic billiard orbit.
/// Throws NotPeriodic when ||B^m xi0 - xi0|| > 1e-6.
double periodic_orbit_mean(const ProfileTriple& t, const BoundaryFunction& K, MuChoice mu,
                           const BoundaryCovector& xi0, int m, double tol = 1e-10);

/// Distance of xi and eta modulo the periods (orbit-closure metric).
double covector_distance(const ProfileTriple& t, const BoundaryCovector& xi,
                         const BoundaryCovector& eta);

/// Finds a case-A torus whose rotation vector satisfies
/// Omega/(2 pi) = (p/N + j1, q/N + j2) for some integers j1, j2, so that the
/// orbit closes after N bounces. Newton on the frequency map.
TorusSpec find_rational_torus(const ProfileTriple& t, int p, int q, int Ndenom);

} // namespace lbt::radon

#endif
