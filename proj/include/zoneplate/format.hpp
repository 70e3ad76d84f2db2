// format.hpp - deterministic numeric formatting for exports
#ifndef ZONEPLATE_FORMAT_HPP
#define ZONEPLATE_FORMAT_HPP

#include <cstdio>
#include <string>

namespace zoneplate {

// Formats with 9 significant digits ("%.9g") so identical runs produce
// byte-identical files. Negative zero collapses to "0".
inline std::string format_number(double value) {
    if (value == 0.0)
        return "0";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

} // namespace zoneplate

#endif
