#pragma once

#include <stdexcept>
#include <string>

namespace charvar {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad input: parity, bounds, missing parameters. CLI exit code 2.
struct ValidationError : Error {
    using Error::Error;
};

// A mathematical claim failed to verify (refuted identity, failed
// certificate, inconsistent closed forms). CLI exit code 3.
struct VerificationFailure : Error {
    using Error::Error;
};

struct MissingVariable : ValidationError {
    using ValidationError::ValidationError;
};
struct UnknownVariable : ValidationError {
    using ValidationError::ValidationError;
};
struct ModulusMismatch : ValidationError {
    using ValidationError::ValidationError;
};
struct DivisionByZeroPoly : ValidationError {
    using ValidationError::ValidationError;
};
struct NotDivisible : Error {
    using Error::Error;
};
struct OverlappingGroups : ValidationError {
    using ValidationError::ValidationError;
};
struct EmptyFamily : ValidationError {
    using ValidationError::ValidationError;
};
struct NonHyperbolic : ValidationError {
    using ValidationError::ValidationError;
};
struct ExceptionalLocus : Error {
    using Error::Error;
};
struct ComplexityLimit : Error {
    using Error::Error;
};

struct IdentityFailure : VerificationFailure {
    IdentityFailure(const std::string& identity, long j)
        : VerificationFailure("identity '" + identity + "' fails at j=" + std::to_string(j)),
          identity(identity),
          j(j) {}
    std::string identity;
    long j;
};

struct IdentityRefuted : VerificationFailure {
    IdentityRefuted(const std::string& claim, const std::string& witness)
        : VerificationFailure("identity '" + claim + "' refuted; witness " + witness),
          claim(claim),
          witness(witness) {}
    std::string claim;
    std::string witness;
};

struct CertificateFailure : VerificationFailure {
    using VerificationFailure::VerificationFailure;
};
struct CountMismatch : VerificationFailure {
    using VerificationFailure::VerificationFailure;
};
struct FiberMismatch : VerificationFailure {
    using VerificationFailure::VerificationFailure;
};
struct ConsistencyFailure : VerificationFailure {
    using VerificationFailure::VerificationFailure;
};
struct SuspectSingularity : VerificationFailure {
    using VerificationFailure::VerificationFailure;
};
struct MismatchWithClosedForm : VerificationFailure {
    using VerificationFailure::VerificationFailure;
};

}  // namespace charvar
