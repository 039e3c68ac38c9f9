#pragma once

#include <cmath>
#include <ctime>
#include <string>

namespace weblens {

inline constexpr const char* kVersion = "0.1.0";

// Whole-second ISO-8601 UTC rendering of an epoch timestamp.
inline std::string iso8601_utc(double epoch_seconds) {
    const std::time_t t = std::time_t(std::floor(epoch_seconds));
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[40];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace weblens
