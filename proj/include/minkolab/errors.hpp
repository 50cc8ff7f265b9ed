#pragma once

#include <stdexcept>
#include <string>

namespace minkolab {

// Base class for all domain-level failures; the CLI maps these to exit code 2.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateMeasure : DomainError {
    explicit DegenerateMeasure(const std::string& m) : DomainError("DegenerateMeasure: " + m) {}
};
struct MassMismatch : DomainError {
    explicit MassMismatch(const std::string& m) : DomainError("MassMismatch: " + m) {}
};
struct DimensionMismatch : DomainError {
    explicit DimensionMismatch(const std::string& m) : DomainError("DimensionMismatch: " + m) {}
};
struct UnboundedBody : DomainError {
    explicit UnboundedBody(const std::string& m) : DomainError("UnboundedBody: " + m) {}
};
struct EmptyBody : DomainError {
    explicit EmptyBody(const std::string& m) : DomainError("EmptyBody: " + m) {}
};
struct OriginOnSingularBoundary : DomainError {
    explicit OriginOnSingularBoundary(const std::string& m)
        : DomainError("OriginOnSingularBoundary: " + m) {}
};
struct OriginNotContained : DomainError {
    explicit OriginNotContained(const std::string& m) : DomainError("OriginNotContained: " + m) {}
};
struct ExcludedExponent : DomainError {
    explicit ExcludedExponent(const std::string& m) : DomainError("ExcludedExponent: " + m) {}
};
struct HemisphereConcentration : DomainError {
    explicit HemisphereConcentration(const std::string& m)
        : DomainError("HemisphereConcentration: " + m) {}
};
struct NoConvergence : DomainError {
    explicit NoConvergence(const std::string& m) : DomainError("NoConvergence: " + m) {}
};
struct InsufficientData : DomainError {
    explicit InsufficientData(const std::string& m) : DomainError("InsufficientData: " + m) {}
};
struct NormalizationRequired : DomainError {
    explicit NormalizationRequired(const std::string& m)
        : DomainError("NormalizationRequired: " + m) {}
};
struct InvalidMeasure : DomainError {
    explicit InvalidMeasure(const std::string& m) : DomainError("InvalidMeasure: " + m) {}
};
struct InvalidPolytope : DomainError {
    explicit InvalidPolytope(const std::string& m) : DomainError("InvalidPolytope: " + m) {}
};

// File / serialization problems; CLI exit code 1.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& m) : std::runtime_error("IoError: " + m) {}
};

}  // namespace minkolab
