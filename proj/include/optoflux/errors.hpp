#pragma once

#include <stdexcept>
#include <string>

namespace optoflux {

// Parameters violate a type invariant (negative rate, non-positive ω_m, ...).
class InvalidParams : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Base for failures caused by the physics sitting on an undamped resonance.
class NumericalDegeneracy : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularMatrix : public NumericalDegeneracy {
public:
    using NumericalDegeneracy::NumericalDegeneracy;
};

class DegenerateBlock : public NumericalDegeneracy {
public:
    using NumericalDegeneracy::NumericalDegeneracy;
};

// Γ_A vanishes, so there is nothing to interfere against.
class ZeroCoupling : public NumericalDegeneracy {
public:
    using NumericalDegeneracy::NumericalDegeneracy;
};

class NoSolution : public NumericalDegeneracy {
public:
    using NumericalDegeneracy::NumericalDegeneracy;
};

// Scenario validation failure. key() names the offending config key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace optoflux
