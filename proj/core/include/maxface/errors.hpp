#pragma once

#include <stdexcept>
#include <string>

namespace maxface {

// Base for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input fails a construction invariant (bad coefficients, metric condition, ...).
struct ValidationError : Error {
    using Error::Error;
};

// Bad CLI arguments / unknown gallery name / malformed description file.
struct UsageError : Error {
    using Error::Error;
};

struct NoRoots : Error {
    using Error::Error;
};

struct RootFindingFailure : Error {
    using Error::Error;
};

struct UndefinedOrder : Error {
    using Error::Error;
};

struct QuadratureFailure : Error {
    using Error::Error;
};

struct PathThroughSingularity : Error {
    using Error::Error;
};

struct BadSeed : Error {
    using Error::Error;
};

struct TracingStalled : Error {
    using Error::Error;
};

struct NotSingular : Error {
    using Error::Error;
};

struct InvalidDeformation : Error {
    using Error::Error;
};

struct PeriodConditionFailed : Error {
    using Error::Error;
};

struct InternalInconsistency : Error {
    using Error::Error;
};

struct BadPunctureGeometry : Error {
    using Error::Error;
};

struct EmptyGrid : Error {
    using Error::Error;
};

struct IOFailure : Error {
    using Error::Error;
};

}  // namespace maxface
