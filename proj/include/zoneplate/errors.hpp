// errors.hpp - exception hierarchy shared by all modules
#ifndef ZONEPLATE_ERRORS_HPP
#define ZONEPLATE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zoneplate {

// Base class for all toolkit failures.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent configuration input (CLI exit code 2).
class config_error : public error {
public:
    explicit config_error(const std::string& msg) : error(msg) {}
};

// Domain validation failure: invalid order pair, range violation,
// inconsistent inputs between stages (CLI exit code 3).
class validation_error : public error {
public:
    explicit validation_error(const std::string& msg) : error(msg) {}
};

// Sampling resolution too coarse for the requested structure (CLI exit code 4).
class sampling_error : public error {
public:
    explicit sampling_error(const std::string& msg) : error(msg) {}
};

// Requested geometry needs zones below the printable feature size (CLI exit code 4).
class fabrication_error : public error {
public:
    explicit fabrication_error(const std::string& msg) : error(msg) {}
};

} // namespace zoneplate

#endif
