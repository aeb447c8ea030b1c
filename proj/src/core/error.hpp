#pragma once

#include <stdexcept>
#include <string>

#include "fracorbit.h"

namespace fo {

// Thrown by the core; the C shim translates code() into the ABI status.
class Error : public std::runtime_error {
public:
    Error(fo_status code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
    fo_status code() const noexcept { return code_; }

private:
    fo_status code_;
};

[[noreturn]] inline void fail(fo_status code, const std::string& msg) {
    throw Error(code, msg);
}

inline void require(bool cond, fo_status code, const std::string& msg) {
    if (!cond) fail(code, msg);
}

} // namespace fo
