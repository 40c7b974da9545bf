#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hartmankit {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computation was asked for outside the physics it models (CLI exit code 3).
class PhysicsError : public Error {
public:
    using Error::Error;
};

class DomainError : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

/// E >= V0: the particle is not tunneling.
class AboveBarrierError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Angle (or frequency) leaves the gap propagating instead of evanescent.
class NotEvanescentError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Exactly at a branch point (e.g. the critical angle, kappa = 0).
class SingularityError : public DomainError {
public:
    using DomainError::DomainError;
};

class UnderResolvedGridError : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

class NarrowbandViolation : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

class CoverageError : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

class ClippedWindowError : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

class AmbiguousPeakError : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

class UnsupportedConfigurationError : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

/// Reference dataset missing or malformed.
class LoadError : public Error {
public:
    using Error::Error;
};

/// Bad config file or command line (CLI exit code 2). `line` is 1-based, 0 when not tied to a line.
class ConfigError : public Error {
public:
    ConfigError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    explicit ConfigError(const std::string& what) : ConfigError(0, what) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace hartmankit
