// Profile-function triple (phi1, phi2, phi3) of a Liouville billiard table
// of classical type: validation of the defining conditions, monotone inverse
// branches with square-root normal forms at the critical endpoints, and the
// edge densities rho_k = |f_k'|.
#ifndef LBT_PROFILES_HPP
#define LBT_PROFILES_HPP

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lbt/errors.hpp"

namespace lbt::profiles {

/// One profile function with analytic first and second derivatives.
/// Derivatives beyond two are obtained by Richardson finite differences.
struct ProfileFunction {
    std::function<double(double)> f;
    std::function<double(double)> df;
    std::function<double(double)> ddf;
};

struct ValidationItem {
    std::string condition;
    bool hard = false;
    bool passed = true;
    double residual = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationItem> items;
    bool hard_ok() const;
    bool all_ok() const;
    std::vector<std::string> warnings() const;
};

/// Density expansion data at one end of a branch interval.
/// At a singular end rho(x) = G0 d^{-1/2} + G1 d^{1/2} + O(d^{3/2}) where
/// d = |x - endpoint|; at a regular end G0 holds the finite value rho(e).
struct EdgeData {
    int branch = 1;
    double endpoint = 0.0;
    bool lower_end = true;
    bool singular = true;
    double G0 = 0.0;
    double G1 = 0.0;
};

class ProfileTriple {
public:
    ProfileTriple(ProfileFunction phi1, ProfileFunction phi2, ProfileFunction phi3,
                  double omega1, double omega2, double N);

    double omega1() const { return omega1_; }
    double omega2() const { return omega2_; }
    double halfwidth() const { return N_; }
    double nu0() const { return nu0_; }
    double nu1() const { return nu1_; }
    double nu3() const { return nu3_; }

    double phi(int k, double theta) const;
    double dphi(int k, double theta) const;
    double ddphi(int k, double theta) const;
    /// Fourth derivative by Richardson-extrapolated differences of ddphi.
    double d4phi(int k, double theta) const;

    /// Closed range of branch k: [nu1,nu0], [0,nu1], [nu3,0].
    std::pair<double, double> branch_range(int k) const;
    /// Length of the theta-interval of branch k (omega_k/4 or N).
    double branch_theta_max(int k) const;

    /// Inverse of phi_k restricted to its monotone branch. Newton with a
    /// bisection safeguard; near critical endpoints the square-root normal
    /// form seeded from second-derivative data keeps full precision.
    double inverse_branch(int k, double x) const;

    /// rho_1 = f1', rho_2 = f2', rho_3 = -f3' (all positive). Throws
    /// EndpointSingularity within 1e-14 of a singular endpoint; quadrature
    /// internals use the unguarded variant, which continues through the
    /// G/sqrt edge expansion arbitrarily close to the endpoint.
    double density(int k, double x) const;
    double density_unguarded(int k, double x) const;
    /// Density as a function of the exact distance d to the given branch
    /// end (avoids the cancellation of recomputing x - endpoint when a
    /// quadrature works in a square-root edge variable).
    double density_offset(int k, bool lower_end, double d) const;
    /// d rho_k / dx at interior x.
    double density_deriv(int k, double x) const;

    EdgeData edge_data(int k, bool lower_end) const;

    /// Checks (A1)-(A5); compatibility (A3) is hard through order 2 and a
    /// warning beyond. `order` bounds the highest derivative order tested.
    ValidationReport validate(int order = 2) const;
    /// Throws NonPositiveGap / MonotonicityViolation / IncompatibleParameters
    /// on hard failures.
    void ensure_valid(int order = 2) const;

private:
    struct Caches;
    ProfileFunction p_[3];
    double omega1_, omega2_, N_;
    double nu0_, nu1_, nu3_;
    std::shared_ptr<Caches> caches_;

    const ProfileFunction& fun(int k) const;
    double solve_branch(int k, double x) const; // uncached Newton solve
    void build_cache(int k) const;
    double cached_inverse(int k, double x) const;
};

enum class TrigPhi3 {
    MatchNu3,      // phi3(N) = nu3 exactly; warn if order-2 contact then fails
    MatchCurvature // phi3''(0) = -phi2''(0); table nu3 becomes -c N^2
};

/// Reference family phi1 = nu1 + (nu0-nu1) sin^2(2 pi t/omega1),
/// phi2 = nu1 sin^2(2 pi t/omega2), phi3 = -c t^2.
/// Throws IncompatibleParameters when the order-2 contact constraint
/// (nu0-nu1)/omega1^2 == nu1/omega2^2 is violated beyond 1e-12.
ProfileTriple make_trig_family(double nu0, double nu1, double nu3, double omega1,
                               double omega2, double N,
                               TrigPhi3 mode = TrigPhi3::MatchNu3,
                               std::string* warning = nullptr);

/// The canonical table: (nu0,nu1,nu3,omega1,omega2,N) = (2,1,-1,2pi,2pi,1),
/// i.e. phi1 = 1 + sin^2, phi2 = sin^2, phi3 = -t^2.
ProfileTriple make_cf1();

} // namespace lbt::profiles

#endif
