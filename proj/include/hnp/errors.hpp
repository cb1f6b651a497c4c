#pragma once

#include <stdexcept>
#include <string>

namespace hnp {

// Invalid input to a mathematical operation (zero where nonzero is required,
// degenerate field, malformed residue, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Splitting data at a prime could not be certified and no override exists.
class UnsupportedPrime : public DomainError {
public:
    UnsupportedPrime(const std::string& prime, const std::string& why)
        : DomainError("unsupported prime " + prime + ": " + why), prime_(prime) {}
    const std::string& prime() const noexcept { return prime_; }

private:
    std::string prime_;
};

// Mutually inconsistent configuration (e.g. half-rule without -1 being local).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An internal consistency check failed; indicates a bug, not bad input.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace hnp
