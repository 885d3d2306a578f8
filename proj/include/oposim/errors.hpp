// errors.hpp — exception types shared across the library.

#pragma once

#include <stdexcept>
#include <string>

namespace oposim {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed arguments or broken type invariants (bad dimensions, labels, ranges).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Physics-domain errors -------------------------------------------------------

// sigma <= 1: the OPO does not oscillate.
class BelowThreshold : public Error {
public:
    explicit BelowThreshold(const std::string& msg) : Error(msg) {}
};

// sigma >= 4: the reflected pump vanishes / changes sign.
class PumpDepleted : public Error {
public:
    explicit PumpDepleted(const std::string& msg) : Error(msg) {}
};

// A cascaded stage ended up with sigma outside (1, 4).
class DerivedSigmaOutOfRange : public Error {
public:
    DerivedSigmaOutOfRange(std::size_t stage, double sigma, const std::string& msg)
        : Error(msg), stage_(stage), sigma_(sigma) {}
    DerivedSigmaOutOfRange(std::size_t stage, double sigma)
        : DerivedSigmaOutOfRange(stage, sigma,
                                 "chain: derived sigma " + std::to_string(sigma) +
                                     " at stage " + std::to_string(stage) +
                                     " outside the oscillating range (1, 4)") {}
    std::size_t stage() const noexcept { return stage_; }
    double sigma() const noexcept { return sigma_; }

private:
    std::size_t stage_;
    double sigma_;
};

// Linear-algebra errors -------------------------------------------------------

class NotPositiveSemidefinite : public Error {
public:
    explicit NotPositiveSemidefinite(const std::string& msg) : Error(msg) {}
};

class NotPositiveDefinite : public Error {
public:
    explicit NotPositiveDefinite(const std::string& msg) : Error(msg) {}
};

// Partition / report errors ---------------------------------------------------

class InvalidPartition : public Error {
public:
    explicit InvalidPartition(const std::string& msg) : Error(msg) {}
};

class InvalidLoss : public Error {
public:
    explicit InvalidLoss(const std::string& msg) : Error(msg) {}
};

class InvalidEigenvalue : public Error {
public:
    explicit InvalidEigenvalue(const std::string& msg) : Error(msg) {}
};

// Mismatched p/q labeling in a transfer map.
class LabelError : public Error {
public:
    explicit LabelError(const std::string& msg) : Error(msg) {}
};

// CLI / configuration ---------------------------------------------------------

// Invalid configuration; the message lists every offending key.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// True for errors meaning "the requested physics does not exist" as opposed to
// "the request itself was malformed"; the CLI maps these to a distinct exit code.
inline bool is_physics_error(const Error& e) noexcept {
    return dynamic_cast<const BelowThreshold*>(&e) != nullptr ||
           dynamic_cast<const PumpDepleted*>(&e) != nullptr ||
           dynamic_cast<const DerivedSigmaOutOfRange*>(&e) != nullptr;
}

} // namespace oposim
