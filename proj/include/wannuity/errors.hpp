#pragma once

#include <stdexcept>
#include <string>

namespace wannuity {

// Base for all numerical/model errors. `name()` is the stable identifier
// surfaced by the CLI on exit code 3.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

#define WANNUITY_DEFINE_ERROR(NAME)                                    \
    class NAME : public Error {                                        \
    public:                                                            \
        explicit NAME(const std::string& what) : Error(#NAME, what) {} \
    }

WANNUITY_DEFINE_ERROR(NotPositiveDefinite);
WANNUITY_DEFINE_ERROR(SingularMatrix);
WANNUITY_DEFINE_ERROR(SingularHorizon);
WANNUITY_DEFINE_ERROR(OutOfDomain);
WANNUITY_DEFINE_ERROR(DomainError);
WANNUITY_DEFINE_ERROR(NoConvergence);
WANNUITY_DEFINE_ERROR(BranchJump);
WANNUITY_DEFINE_ERROR(DampingOutOfDomain);
WANNUITY_DEFINE_ERROR(BracketFailure);
WANNUITY_DEFINE_ERROR(DegenerateVariance);
WANNUITY_DEFINE_ERROR(MixedEigenvalues);
WANNUITY_DEFINE_ERROR(InvalidParameter);

#undef WANNUITY_DEFINE_ERROR

// Configuration/input problems surfaced by the CLI on exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace wannuity
