#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace skyrelay {

// A physical quantity was asked for outside its domain (zero distance,
// zero speed, empty population, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A file or directory could not be read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A scenario document failed to parse or violates one or more invariants.
// Every violated field is listed in violations().
class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(std::vector<std::string> violations);

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

} // namespace skyrelay
