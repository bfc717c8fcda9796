#pragma once

#include <stdexcept>
#include <string>

namespace burgers {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DivisorTooSmall : Error {
    explicit DivisorTooSmall(const std::string& what) : Error(what) {}
};

struct OrderExceeded : Error {
    explicit OrderExceeded(const std::string& what) : Error(what) {}
};

struct OrderExhausted : Error {
    explicit OrderExhausted(const std::string& what) : Error(what) {}
};

struct NonPositiveSeed : Error {
    explicit NonPositiveSeed(const std::string& what) : Error(what) {}
};

struct PhiNonPositive : Error {
    explicit PhiNonPositive(const std::string& what) : Error(what) {}
};

struct CompatibilityViolated : Error {
    explicit CompatibilityViolated(const std::string& what) : Error(what) {}
};

struct QuadratureNonConvergent : Error {
    explicit QuadratureNonConvergent(const std::string& what) : Error(what) {}
};

struct NonPositiveResult : Error {
    explicit NonPositiveResult(const std::string& what) : Error(what) {}
};

struct KernelTruncationError : Error {
    explicit KernelTruncationError(const std::string& what) : Error(what) {}
};

struct CFLViolation : Error {
    explicit CFLViolation(const std::string& what) : Error(what) {}
};

struct NonFiniteState : Error {
    explicit NonFiniteState(const std::string& what) : Error(what) {}
};

struct ConfigInvalid : Error {
    explicit ConfigInvalid(const std::string& what) : Error(what) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace burgers
