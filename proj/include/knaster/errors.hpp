#ifndef KNASTER_ERRORS_HPP
#define KNASTER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace knaster {

// Bad user input: unknown problem, malformed config, invalid flag combination.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// An evaluation left the admissible domain (simplex or cube).
struct DomainViolation : std::runtime_error {
    explicit DomainViolation(const std::string& what) : std::runtime_error(what) {}
};

// File could not be read or written.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace knaster

#endif
