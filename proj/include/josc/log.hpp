#pragma once

#include <string_view>

namespace josc::log {

/// Verbosity is read once from JACOBI_OSC_LOG (error | info | debug);
/// unset or unrecognized values fall back to error.
enum class Level { error = 0, info = 1, debug = 2 };

Level threshold();
bool enabled(Level level);
void write(Level level, std::string_view message);

inline void error(std::string_view m) { write(Level::error, m); }
inline void info(std::string_view m) { write(Level::info, m); }
inline void debug(std::string_view m) { write(Level::debug, m); }

}  // namespace josc::log
