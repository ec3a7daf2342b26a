#pragma once

#include <stdexcept>
#include <string>

namespace su11 {

/// Runtime failure of the numerical engine: a computation left the supported
/// domain (ill-conditioned covariance, invalid state, exhausted resources).
/// Argument/precondition violations throw std::invalid_argument instead.
class EngineError : public std::runtime_error {
public:
    explicit EngineError(const std::string& what) : std::runtime_error(what) {}
};

/// The state handed to qfi_pure has a symplectic eigenvalue above 1/2; the
/// caller should use qfi_noisy.
class NotPureError : public EngineError {
public:
    explicit NotPureError(const std::string& what) : EngineError(what) {}
};

/// The intensity scan found no oscillation maximum within the allowed loops.
class PeriodNotResolvedError : public EngineError {
public:
    explicit PeriodNotResolvedError(const std::string& what) : EngineError(what) {}
};

/// A truncated Fock-space operation leaked more probability than tolerated.
class CutoffTooSmallError : public EngineError {
public:
    explicit CutoffTooSmallError(const std::string& what) : EngineError(what) {}
};

}  // namespace su11
