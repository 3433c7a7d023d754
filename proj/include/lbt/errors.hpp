// Exception types shared across the library.
#ifndef LBT_ERRORS_HPP
#define LBT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lbt {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// profiles
struct NonPositiveGap : Error { using Error::Error; };
struct MonotonicityViolation : Error { using Error::Error; };
struct IncompatibleParameters : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct EndpointSingularity : Error { using Error::Error; };

// dynamics
struct BranchSetEvaluation : Error { using Error::Error; };
struct BranchProximity : Error { using Error::Error; };
struct StepFailure : Error { using Error::Error; };
struct NotOnBoundary : Error { using Error::Error; };
struct GlancingRay : Error { using Error::Error; };

// tori
struct OutsideProjection : Error { using Error::Error; };
struct TurningPointSingularity : Error { using Error::Error; };

// quadrature
struct NonConvergent : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };

// legendre
struct IndexOutOfRange : Error { using Error::Error; };

// frequency / radon
struct SingularSystem : Error { using Error::Error; };
struct NoRoot : Error { using Error::Error; };
struct NotPeriodic : Error { using Error::Error; };

} // namespace lbt

#endif
