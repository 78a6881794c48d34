#pragma once

#include <functional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace ecograph::log {

/// Receives one serialized JSON line (no trailing newline).
using Sink = std::function<void(const std::string&)>;

/// Replaces the sink (default writes to stderr). Returns the previous one.
Sink set_sink(Sink sink);

/// {"level":..,"stage":..,"msg":..,<extra fields>}
void event(std::string_view level, std::string_view stage, std::string_view message,
           const nlohmann::ordered_json& extra = nlohmann::ordered_json::object());

inline void info(std::string_view stage, std::string_view message,
                 const nlohmann::ordered_json& extra = nlohmann::ordered_json::object()) {
    event("info", stage, message, extra);
}

inline void warn(std::string_view stage, std::string_view message,
                 const nlohmann::ordered_json& extra = nlohmann::ordered_json::object()) {
    event("warn", stage, message, extra);
}

} // namespace ecograph::log
