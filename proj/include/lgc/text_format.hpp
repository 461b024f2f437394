#pragma once

#include <charconv>
#include <string>

namespace lgc {

/// Shortest round-trip decimal form; locale independent, so output is byte-stable.
inline std::string format_double(double value) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

}  // namespace lgc
