#pragma once

#include <stdexcept>
#include <string>

namespace symvar {

// Error categories map 1:1 onto CLI exit codes:
//   validation -> 2, capacity -> 3, accuracy -> 4.
struct error : std::runtime_error {
    explicit error(const std::string& msg, int code) : std::runtime_error(msg), exit_code(code) {}
    int exit_code;
};

struct validation_error : error {
    explicit validation_error(const std::string& msg) : error(msg, 2) {}
};

struct capacity_error : error {
    explicit capacity_error(const std::string& msg) : error(msg, 3) {}
};

struct accuracy_error : error {
    explicit accuracy_error(const std::string& msg) : error(msg, 4) {}
};

} // namespace symvar
