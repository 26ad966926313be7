#pragma once
#include <stdexcept>
#include <string>

namespace helixlab {

// Common base so the CLI can map any computational failure to one exit code.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error { using Error::Error; };       // vector/matrix size mismatch
struct OrderError : Error { using Error::Error; };           // derivative order out of range
struct DomainError : Error { using Error::Error; };          // parameter outside evaluable domain
struct UnsupportedOrder : Error { using Error::Error; };     // sampled tables beyond order 3
struct NullCurveError : Error { using Error::Error; };       // tangent null within tolerance
struct EmptyInput : Error { using Error::Error; };
struct DegenerateFrameError : Error { using Error::Error; }; // null frame vector in Gram-Schmidt
struct NotProperOrderError : Error { using Error::Error; };  // some curvature not positive
struct MissingHessian : Error { using Error::Error; };       // analytic field without Hessian callback
struct ParseError : Error { using Error::Error; };           // bad JSON / file / inline spec

} // namespace helixlab
