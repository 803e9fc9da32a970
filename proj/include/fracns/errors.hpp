#pragma once

#include <stdexcept>
#include <string>

namespace fracns {

// Two fields (or a field and a sample array) that do not live on the same grid.
class GridMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An operator that is undefined at k = 0 was applied to a field with a nonzero mean.
class MeanZeroViolation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// kappa + rho/a <= 0 somewhere, or a nonpositive physical density.
class VacuumError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A ratio whose denominator vanishes (empty frequency block, zero field).
class UndefinedRatio : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A trajectory whose samples are not uniformly spaced in time.
class StrideMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Invalid run configuration. field() is the dot path of the offending entry.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

} // namespace fracns
