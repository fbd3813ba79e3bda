#pragma once

#include <cstdlib>
#include <iostream>
#include <string_view>

namespace mobrkhs::log {

enum class Level { off = 0, error = 1, info = 2, debug = 3 };

/// Level from MOB_RKHS_LOG (off|error|info|debug); defaults to error.
inline Level level() {
    static const Level cached = [] {
        const char* env = std::getenv("MOB_RKHS_LOG");
        if (env == nullptr) return Level::error;
        const std::string_view v(env);
        if (v == "off") return Level::off;
        if (v == "info") return Level::info;
        if (v == "debug") return Level::debug;
        return Level::error;
    }();
    return cached;
}

inline void info(std::string_view message) {
    if (level() >= Level::info) std::cerr << "[mob-rkhs] " << message << "\n";
}

inline void debug(std::string_view message) {
    if (level() >= Level::debug) std::cerr << "[mob-rkhs:debug] " << message << "\n";
}

inline void error(std::string_view message) {
    if (level() >= Level::error) std::cerr << "[mob-rkhs:error] " << message << "\n";
}

}  // namespace mobrkhs::log
