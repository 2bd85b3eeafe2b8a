#include "l3f/synth/lowlight.hpp"

#include "l3f/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace l3f::synth {

void LowLightSpec::validate() const {
    if (!(exposure_divisor >= 1.0)) throw ConfigError("exposure divisor must be >= 1");
    if (!(read_noise_sigma >= 0.0) || !(shot_noise_scale >= 0.0)) throw ConfigError("noise parameters must be >= 0");
}

lf::LightField synth_lowlight(const lf::LightField& gt, const LowLightSpec& spec) {
    spec.validate();
    lf::LightField out = gt;
    const double read2 = spec.read_noise_sigma * spec.read_noise_sigma;
    const bool noisy = spec.read_noise_sigma > 0 || spec.shot_noise_scale > 0;
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (float& v : out.data()) {
        const double mean = static_cast<double>(v) / spec.exposure_divisor;
        double y = mean;
        if (noisy) y += std::sqrt(spec.shot_noise_scale * mean + read2) * normal(rng);
        v = static_cast<float>(std::clamp(y, 0.0, 1.0));
    }
    return out;
}

} // namespace l3f::synth
