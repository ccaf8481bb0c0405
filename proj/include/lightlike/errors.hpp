#pragma once

#include <stdexcept>
#include <string>

namespace lightlike {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Expression front end.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at offset " + std::to_string(position) + ")"), pos(position) {}
    std::size_t pos;
};
struct EvalError : Error {
    using Error::Error;
};

// Jet arithmetic: a derivative was requested past the valid truncation order.
struct JetOrderError : Error {
    using Error::Error;
};

// Surface / frame construction.
struct NotImmersionError : Error {
    using Error::Error;
};
struct NotLightlikeError : Error {
    using Error::Error;
};
struct CoIsotropicError : Error {
    using Error::Error;
};
struct TransversalError : Error {
    using Error::Error;
};
struct PinError : Error {
    using Error::Error;
};

// Section analysis.
struct CoefficientUndefinedError : Error {
    using Error::Error;
};
struct HypothesisError : Error {
    using Error::Error;
};
struct TraceStallError : Error {
    using Error::Error;
};
struct StepError : Error {
    using Error::Error;
};

// Configuration files.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace lightlike
