#pragma once

#include <stdexcept>
#include <string>

namespace smoothlab {

enum class errc {
    domain = 1,
    range,
    load,
    io,
    invalid_argument,
    precision,
};

// Single exception type for the library; the code maps 1:1 onto sl_status.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace smoothlab
