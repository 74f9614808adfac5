#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace dtmf {

// Library errors carry a stable machine-readable code ("ZeroMargin",
// "RankOutOfRange", ...) alongside the human-readable message. The CLI maps
// the code straight into its error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const char* code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace dtmf
