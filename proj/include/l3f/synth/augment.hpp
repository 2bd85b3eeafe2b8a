#pragma once

#include "l3f/lf/light_field.hpp"
#include "l3f/nn/tensor.hpp"

#include <array>
#include <random>
#include <utility>

namespace l3f::synth {

struct Augmentation {
    bool flip_horizontal = false;
    bool flip_vertical = false;
    // Output channel c takes input channel permutation[c].
    std::array<int, 3> permutation{0, 1, 2};

    bool operator==(const Augmentation&) const = default;
};

// Fair coins for each flip and a uniform draw over the 6 channel orders.
Augmentation draw_augmentation(std::mt19937_64& rng);

int permutation_index(const std::array<int, 3>& permutation);

// Horizontal flips mirror x and the view column v; vertical flips mirror y and
// the view row u, so disparity signs stay coherent.
lf::LightField apply_augmentation(const lf::LightField& lf, const Augmentation& aug);

// Reorders the R | G | B blocks of a 3L histogram the same way.
nn::Tensor<float> apply_augmentation(const nn::Tensor<float>& hist, const Augmentation& aug);

std::pair<lf::LightField, lf::LightField> augment(const lf::LightField& low, const lf::LightField& gt,
                                                  std::mt19937_64& rng);

} // namespace l3f::synth
