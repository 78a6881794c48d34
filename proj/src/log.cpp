#include "ecograph/log.hpp"

#include <iostream>
#include <mutex>

namespace ecograph::log {
namespace {

std::mutex& sink_mutex() {
    static std::mutex m;
    return m;
}

Sink& current_sink() {
    static Sink sink = [](const std::string& line) { std::cerr << line << '\n'; };
    return sink;
}

} // namespace

Sink set_sink(Sink sink) {
    std::lock_guard lock(sink_mutex());
    Sink previous = std::move(current_sink());
    current_sink() = std::move(sink);
    return previous;
}

void event(std::string_view level, std::string_view stage, std::string_view message,
           const nlohmann::ordered_json& extra) {
    nlohmann::ordered_json line;
    line["level"] = level;
    line["stage"] = stage;
    line["msg"] = message;
    for (const auto& item : extra.items()) line[item.key()] = item.value();
    const std::string text = line.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
    std::lock_guard lock(sink_mutex());
    if (current_sink()) current_sink()(text);
}

} // namespace ecograph::log
