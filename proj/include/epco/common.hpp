#pragma once

#include <stdexcept>
#include <string>

namespace epco {

/// Error type thrown on precondition violations and malformed input.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw error(msg); }

inline void require(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
}

} // namespace epco
