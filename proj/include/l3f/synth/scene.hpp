#pragma once

#include "l3f/lf/light_field.hpp"

#include <cstdint>

namespace l3f::synth {

// Procedural textured plane seen from a U x V camera grid. View (u, v) samples
// the texture at (x + disparity * (v - vc), y + disparity * (u - uc)).
struct SceneSpec {
    int views = 5;
    int height = 64;
    int width = 64;
    double disparity = 0.5;
    int components = 24;
    std::uint64_t seed = 1;
};

lf::LightField generate_scene(const SceneSpec& spec);

// Single view of the same texture family, for image-level tests.
lf::Image generate_texture(int height, int width, std::uint64_t seed, int components = 24);

} // namespace l3f::synth
