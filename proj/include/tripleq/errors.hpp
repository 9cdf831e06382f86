#pragma once

#include <stdexcept>
#include <string>

namespace tripleq {

enum class ErrorKind {
    Input,        // malformed data or violated precondition
    Precision,    // the requested digits are not available
    Consistency,  // two computations that must agree did not
};

// Every library failure carries a dotted code such as "padic.not_unit".
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string code, const std::string& message)
        : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

    ErrorKind kind() const { return kind_; }
    const std::string& code() const { return code_; }

private:
    ErrorKind kind_;
    std::string code_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string code, const std::string& message) {
    throw Error(kind, std::move(code), message);
}

}  // namespace tripleq
