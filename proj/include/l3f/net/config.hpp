#pragma once

#include <map>
#include <string>

namespace l3f::net {

struct ModelConfig {
    int s1_blocks = 4;          // M
    int s2_blocks = 6;          // N
    int channels = 128;         // C, split into C0 and J halves
    int transpose_channels = 128;
    int grid = 8;               // working grid is grid x grid views
    int hist_bins = 100;        // L

    int half_channels() const noexcept { return channels / 2; }
    int stacked_channels() const noexcept { return 3 * grid * grid; }

    // Throws ConfigError.
    void validate() const;

    // Returns false if `key` is not a ModelConfig field.
    bool set(const std::string& key, const std::string& value);
    std::map<std::string, std::string> to_map() const;

    std::string to_text() const;
    static ModelConfig from_text(const std::string& text);

    bool operator==(const ModelConfig&) const = default;
};

// "key=value" lines; blank lines and '#' comments are ignored.
std::map<std::string, std::string> parse_key_values(const std::string& text);
int parse_int(const std::string& key, const std::string& value);
double parse_double(const std::string& key, const std::string& value);

} // namespace l3f::net
