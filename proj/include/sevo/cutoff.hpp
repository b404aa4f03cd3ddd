#pragma once

namespace sevo {

// Radial low-frequency cutoff: 1 on [0, 1/2], 0 on [1, inf), smoothstep between.
inline double cutoff_chi(double r) {
    if (r <= 0.5) return 1.0;
    if (r >= 1.0) return 0.0;
    const double s = 2.0 * (r - 0.5);
    return 1.0 - s * s * (3.0 - 2.0 * s);
}

enum class Zone { Low, High, All };

inline const char* to_string(Zone z) {
    switch (z) {
    case Zone::Low: return "low";
    case Zone::High: return "high";
    default: return "all";
    }
}

inline double zone_weight(Zone z, double r) {
    switch (z) {
    case Zone::Low: return cutoff_chi(r);
    case Zone::High: return 1.0 - cutoff_chi(r);
    default: return 1.0;
    }
}

} // namespace sevo
