#include "l3f/net/config.hpp"

#include "l3f/error.hpp"

#include <charconv>
#include <sstream>

namespace l3f::net {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

int parse_int(const std::string& key, const std::string& value) {
    int out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw ConfigError(key + ": expected an integer, got '" + value + "'");
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double out = std::stod(value, &used);
        if (used != value.size()) throw ConfigError("");
        return out;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    }
}

void ModelConfig::validate() const {
    if (s1_blocks < 0) throw ConfigError("s1_blocks must be >= 0");
    if (s2_blocks < 1) throw ConfigError("s2_blocks must be >= 1");
    if (channels < 2 || channels % 2 != 0) throw ConfigError("channels must be even and >= 2");
    if (transpose_channels < 1) throw ConfigError("transpose_channels must be >= 1");
    if (grid < 1) throw ConfigError("grid must be >= 1");
    if (hist_bins < 2) throw ConfigError("hist_bins must be >= 2");
}

bool ModelConfig::set(const std::string& key, const std::string& value) {
    int* field = nullptr;
    if (key == "s1_blocks") field = &s1_blocks;
    else if (key == "s2_blocks") field = &s2_blocks;
    else if (key == "channels") field = &channels;
    else if (key == "transpose_channels") field = &transpose_channels;
    else if (key == "grid") field = &grid;
    else if (key == "hist_bins") field = &hist_bins;
    if (!field) return false;
    *field = parse_int(key, value);
    return true;
}

std::map<std::string, std::string> ModelConfig::to_map() const {
    return {{"s1_blocks", std::to_string(s1_blocks)},
            {"s2_blocks", std::to_string(s2_blocks)},
            {"channels", std::to_string(channels)},
            {"transpose_channels", std::to_string(transpose_channels)},
            {"grid", std::to_string(grid)},
            {"hist_bins", std::to_string(hist_bins)}};
}

std::string ModelConfig::to_text() const {
    std::string out;
    for (const auto& [k, v] : to_map()) out += k + "=" + v + "\n";
    return out;
}

ModelConfig ModelConfig::from_text(const std::string& text) {
    ModelConfig cfg;
    for (const auto& [k, v] : parse_key_values(text))
        if (!cfg.set(k, v)) throw ConfigError("unknown model config key '" + k + "'");
    cfg.validate();
    return cfg;
}

} // namespace l3f::net
