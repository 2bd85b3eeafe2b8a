#pragma once
// Dataset manifest (JSON):
//   {"entries": [{"gt": "scene.lf4", "divisors": [20, 50, 100],
//                 "noise": {"read": 0.002, "shot": 0.0002, "seed": 7},
//                 "split": "train"}]}
// Relative paths resolve against the manifest directory. With a noise seed the
// low-light realization of each (entry, divisor) is fixed; without one every
// sample draws fresh noise.

#include "l3f/lf/light_field.hpp"
#include "l3f/lf/views.hpp"
#include "l3f/nn/tensor.hpp"
#include "l3f/synth/augment.hpp"

#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace l3f::synth {

struct ManifestEntry {
    std::filesystem::path gt;
    std::vector<double> divisors;
    double read_noise = 0.0;
    double shot_noise = 0.0;
    std::optional<std::uint64_t> noise_seed;
    std::string split = "train";
};

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const std::vector<ManifestEntry>& entries);

struct DatasetItem {
    ManifestEntry entry;
    // Working grid plus ring.
    lf::LightField gt;
    // One fixed realization per divisor when the entry carries a noise seed.
    std::vector<lf::LightField> fixed_low;
};

struct Dataset {
    int grid = 8;
    std::vector<DatasetItem> items;
};

// Loads the entries of `split` (all when empty) and crops each to a
// grid x grid working grid plus ring.
Dataset load_dataset(const std::filesystem::path& manifest, int grid, const std::string& split = "train");
Dataset make_dataset(std::vector<ManifestEntry> entries, std::vector<lf::LightField> gts, int grid);

struct SampleConfig {
    int patch = 180;
    int views = 12;
    bool augment = true;
    int hist_bins = 100;
};

struct TrainingExample {
    std::size_t item = 0;
    double divisor = 1.0;
    lf::PatchWindow window;
    // Working grid plus ring, cropped to the patch window.
    lf::LightField low;
    lf::LightField gt;
    // Distinct working-grid views carrying the loss, min(views, grid^2) of them.
    std::vector<lf::ViewIndex> views;
    // Histogram of the whole low-light LF before patch extraction.
    nn::Tensor<float> hist;
    Augmentation augmentation;
};

TrainingExample sample_batch(const Dataset& dataset, const SampleConfig& config, std::mt19937_64& rng);

} // namespace l3f::synth
