#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace poisson::cli {

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

/// Level from POISSON_REDUCE_LOG (error|warn|info|debug); default warn.
inline LogLevel& log_level() {
    static LogLevel level = [] {
        const char* env = std::getenv("POISSON_REDUCE_LOG");
        if (!env) return LogLevel::warn;
        if (std::strcmp(env, "error") == 0) return LogLevel::error;
        if (std::strcmp(env, "info") == 0) return LogLevel::info;
        if (std::strcmp(env, "debug") == 0) return LogLevel::debug;
        return LogLevel::warn;
    }();
    return level;
}

inline void log(LogLevel level, const std::string& msg) {
    if (level > log_level()) return;
    const char* tag[] = {"error", "warn", "info", "debug"};
    std::fprintf(stderr, "[%s] %s\n", tag[static_cast<int>(level)], msg.c_str());
}

} // namespace poisson::cli
