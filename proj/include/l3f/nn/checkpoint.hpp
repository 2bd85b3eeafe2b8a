#pragma once
// Versioned binary checkpoint of named parameter blocks.
//
// Layout (little-endian):
//   "L3FC" | u16 version=1 | u16 reserved=0
//   u32 manifest byte length | manifest text ("key=value" lines)
//   u32 block count | per block: u16 name length, name, u8 rank, u32 dims[rank], f32 payload

#include "l3f/nn/tensor.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace l3f::nn {

struct Checkpoint {
    // Ordered key/value pairs; keys may repeat.
    std::vector<std::pair<std::string, std::string>> manifest;
    std::vector<std::pair<std::string, Tensor<float>>> blocks;

    // First value for `key`, or nullptr.
    const std::string* find(const std::string& key) const;
    const Tensor<float>* block(const std::string& name) const;
};

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);
Checkpoint read_checkpoint(const std::filesystem::path& path);

} // namespace l3f::nn
