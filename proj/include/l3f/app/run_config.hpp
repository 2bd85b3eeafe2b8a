#pragma once
// Training run settings, read from a key=value file and overridden by flags.

#include "l3f/loss/contextual.hpp"
#include "l3f/loss/losses.hpp"
#include "l3f/net/config.hpp"
#include "l3f/nn/adam.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace l3f::app {

// Decimal unsigned seed; throws ConfigError naming `key` otherwise.
std::uint64_t parse_seed(const std::string& key, const std::string& value);

struct RunConfig {
    net::ModelConfig model;
    loss::LossWeights loss;
    loss::CxConfig cx;
    nn::AdamConfig adam;
    // When set, the learning rate follows a cosine from adam.learning_rate at
    // the first iteration down to lr_final at the last.
    std::optional<double> lr_final;
    int patch = 180;
    int views = 12;
    std::uint64_t iterations = 1000;
    std::optional<std::uint64_t> seed;
    std::filesystem::path manifest;
    std::string split = "train";
    std::filesystem::path checkpoint = "l3fnet.ckpt";
    std::filesystem::path init_checkpoint;
    std::filesystem::path loss_log = "loss.csv";
    std::uint64_t checkpoint_every = 0;
    bool use_hist = true;
    bool augment = true;

    // Throws ConfigError for unknown keys or malformed values.
    void set(const std::string& key, const std::string& value);
    void load_file(const std::filesystem::path& path);
    // Fills a missing seed from L3F_SEED, then checks ranges and that the
    // referenced inputs exist.
    void finalize();
    std::string to_text() const;
};

} // namespace l3f::app
