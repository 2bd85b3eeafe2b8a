#pragma once

#include "l3f/lf/light_field.hpp"

#include <cstdint>

namespace l3f::synth {

struct LowLightSpec {
    double exposure_divisor = 20.0;
    double read_noise_sigma = 0.0;
    double shot_noise_scale = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
};

// y = clamp(x / d + n, 0, 1), n ~ N(0, shot * x / d + read^2), drawn in
// storage order from a generator seeded with spec.seed.
lf::LightField synth_lowlight(const lf::LightField& gt, const LowLightSpec& spec);

} // namespace l3f::synth
