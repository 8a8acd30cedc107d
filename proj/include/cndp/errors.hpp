#pragma once

#include <stdexcept>
#include <string>

namespace cndp {

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotStrictlyIncreasing : DomainError {
    using DomainError::DomainError;
};

struct NumericalFailure : DomainError {
    using DomainError::DomainError;
};

struct InfiniteLatency : DomainError {
    using DomainError::DomainError;
};

struct FlowInfeasible : DomainError {
    using DomainError::DomainError;
};

struct BadNode : DomainError {
    using DomainError::DomainError;
};

struct NoFinitePath : DomainError {
    int commodity;
    NoFinitePath(int k, const std::string& what) : DomainError(what), commodity(k) {}
};

struct WrongShape : DomainError {
    using DomainError::DomainError;
};

struct TooLarge : DomainError {
    using DomainError::DomainError;
};

struct ParseError : DomainError {
    using DomainError::DomainError;
};

}  // namespace cndp
