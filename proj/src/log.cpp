#include "josc/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

namespace josc::log {

namespace {

Level read_threshold() {
    const char* env = std::getenv("JACOBI_OSC_LOG");
    if (!env)
        return Level::error;
    const std::string v(env);
    if (v == "error")
        return Level::error;
    if (v == "info")
        return Level::info;
    if (v == "debug")
        return Level::debug;
    std::fprintf(stderr, "[jacobi-osc] ignoring unrecognized JACOBI_OSC_LOG=%s\n", env);
    return Level::error;
}

const char* tag(Level level) {
    switch (level) {
        case Level::error: return "error";
        case Level::info: return "info";
        case Level::debug: return "debug";
    }
    return "?";
}

}  // namespace

Level threshold() {
    static const Level t = read_threshold();
    return t;
}

bool enabled(Level level) { return static_cast<int>(level) <= static_cast<int>(threshold()); }

void write(Level level, std::string_view message) {
    if (!enabled(level))
        return;
    std::fprintf(stderr, "[jacobi-osc %s] %.*s\n", tag(level),
                 static_cast<int>(message.size()), message.data());
}

}  // namespace josc::log
