#pragma once

#include <cstdlib>
#include <string>
#include <thread>

namespace wecomp {

/// Worker count for parallel enumeration: an explicit request wins, then the
/// WECOMP_THREADS environment variable, then hardware concurrency. Results do
/// not depend on the value, only wall time does.
inline unsigned resolve_threads(unsigned requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("WECOMP_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

}  // namespace wecomp
