#pragma once

#include <cstdio>
#include <string>

namespace alphavortex::csv {

/// Format a double with 17 significant digits (round-trip exact).
inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace alphavortex::csv
