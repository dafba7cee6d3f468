#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace codedmat {

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("inverse of zero in a prime field") {}
};

struct ShapeError : std::invalid_argument {
    explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

struct DuplicatePoint : std::invalid_argument {
    explicit DuplicatePoint(const std::string& what = "duplicate evaluation point")
        : std::invalid_argument(what) {}
};

struct EmptyInput : std::invalid_argument {
    explicit EmptyInput(const std::string& what = "empty input") : std::invalid_argument(what) {}
};

struct InvalidParameter : std::invalid_argument {
    explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

struct InsufficientWorkers : InvalidParameter {
    InsufficientWorkers(std::size_t needed, std::size_t got)
        : InvalidParameter("worker count " + std::to_string(got) +
                           " is below the recovery threshold " + std::to_string(needed)),
          needed(needed),
          got(got) {}
    std::size_t needed;
    std::size_t got;
};

/// Raised by a decoder that was handed fewer results than the recovery threshold.
struct RecoveryThresholdNotMet : std::runtime_error {
    RecoveryThresholdNotMet(std::size_t needed, std::size_t got)
        : std::runtime_error("decoder needs " + std::to_string(needed) +
                             " worker results, got " + std::to_string(got)),
          needed(needed),
          got(got) {}
    std::size_t needed;
    std::size_t got;
};

/// A decoded product that disagrees with the reference product. Must never happen.
struct CorrectnessViolation : std::logic_error {
    explicit CorrectnessViolation(const std::string& what) : std::logic_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace codedmat
