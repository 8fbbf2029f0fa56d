#pragma once

#include <stdexcept>
#include <string>

namespace gmsfem {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A configuration value violates a precondition (bad mesh ratio, M_on > M_off, ...).
struct InvalidConfigError : Error {
    explicit InvalidConfigError(const std::string& msg) : Error(msg) {}
};

/// An input value is outside the mathematical domain of an operation.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// A linear solve or factorization failed (non-SPD matrix, residual above contract).
struct SolverError : Error {
    explicit SolverError(const std::string& msg) : Error(msg) {}
};

/// File input/output failure.
struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

} // namespace gmsfem
