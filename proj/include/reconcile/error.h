#pragma once

#include <stdexcept>
#include <string>

namespace reconcile {

// Every engine failure carries a stable machine-readable code
// (e.g. "UnknownAction") next to the human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string &message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string &code() const noexcept { return code_; }

private:
    std::string code_;
};

inline Error unknown_action(const std::string &name) {
    return Error("UnknownAction", "unknown action: " + name);
}

class SyntaxError : public Error {
public:
    SyntaxError(int line, int column, const std::string &message)
        : Error("SyntaxError", std::to_string(line) + ":" + std::to_string(column) +
                                   ": " + message),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace reconcile
