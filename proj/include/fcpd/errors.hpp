#pragma once

#include <stdexcept>
#include <string>

namespace fcpd {

// Invalid user-supplied data: malformed files, out-of-range parameters,
// degenerate inputs the pipeline cannot proceed on. The CLI maps this to
// exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A broken internal invariant. The CLI maps this to exit code 3.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool condition, const std::string& message) {
    if (!condition) throw InternalError(message);
}

}  // namespace fcpd
