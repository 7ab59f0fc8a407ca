#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace cvm {

// Error taxonomy shared by the library and the CLI exit codes:
//   1 = I/O failure, 2 = usage/validation failure, 3 = numerical failure.
class EngineError : public std::runtime_error {
public:
    EngineError(std::string msg, int exit_code)
        : std::runtime_error(std::move(msg)), exit_code_(exit_code) {}

    int exit_code() const noexcept { return exit_code_; }

private:
    int exit_code_;
};

class IoError : public EngineError {
public:
    explicit IoError(std::string msg) : EngineError(std::move(msg), 1) {}
};

class ValidationError : public EngineError {
public:
    explicit ValidationError(std::string msg) : EngineError(std::move(msg), 2) {}
};

class NumericError : public EngineError {
public:
    explicit NumericError(std::string msg) : EngineError(std::move(msg), 3) {}
};

} // namespace cvm
