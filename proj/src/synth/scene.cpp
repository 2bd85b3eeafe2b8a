#include "l3f/synth/scene.hpp"

#include "l3f/error.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace l3f::synth {
namespace {

struct Wave {
    double fx, fy, phase;
    std::array<double, 3> amp;
};

struct Disc {
    double cx, cy, r;
    std::array<double, 3> color;
};

class Texture {
public:
    Texture(int height, int width, std::uint64_t seed, int components) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int i = 0; i < components; ++i) {
            const double f = 0.03 + 0.27 * unit(rng), angle = 2 * std::numbers::pi * unit(rng);
            Wave w{f * std::cos(angle), f * std::sin(angle), 2 * std::numbers::pi * unit(rng), {}};
            for (double& a : w.amp) a = (unit(rng) - 0.5) * 0.6;
            waves_.push_back(w);
        }
        for (int i = 0; i < components / 3; ++i) {
            Disc d{unit(rng) * width, unit(rng) * height, 2.0 + unit(rng) * 0.15 * std::min(height, width), {}};
            for (double& c : d.color) c = (unit(rng) - 0.5) * 0.8;
            discs_.push_back(d);
        }
    }

    std::array<double, 3> at(double x, double y) const {
        std::array<double, 3> v{};
        for (const auto& w : waves_) {
            const double s = std::sin(2 * std::numbers::pi * (w.fx * x + w.fy * y) + w.phase);
            for (int c = 0; c < 3; ++c) v[c] += w.amp[c] * s;
        }
        for (const auto& d : discs_) {
            const double r = std::hypot(x - d.cx, y - d.cy);
            // Soft edge one pixel wide.
            const double inside = 1.0 / (1.0 + std::exp((r - d.r) * 4.0));
            for (int c = 0; c < 3; ++c) v[c] += d.color[c] * inside;
        }
        for (double& c : v) c = 0.5 + 0.42 * std::tanh(c);
        return v;
    }

private:
    std::vector<Wave> waves_;
    std::vector<Disc> discs_;
};

} // namespace

lf::LightField generate_scene(const SceneSpec& spec) {
    if (spec.views < 1 || spec.height < 1 || spec.width < 1) throw ConfigError("scene dimensions must be positive");
    const Texture tex(spec.height, spec.width, spec.seed, spec.components);
    lf::LightField lf(spec.views, spec.views, spec.height, spec.width);
    const double center = (spec.views - 1) / 2.0;
    for (int u = 0; u < spec.views; ++u)
        for (int v = 0; v < spec.views; ++v) {
            const double ox = spec.disparity * (v - center), oy = spec.disparity * (u - center);
            for (int y = 0; y < spec.height; ++y)
                for (int x = 0; x < spec.width; ++x) {
                    const auto rgb = tex.at(x + ox, y + oy);
                    for (int c = 0; c < 3; ++c) lf.at(u, v, c, y, x) = static_cast<float>(rgb[c]);
                }
        }
    return lf;
}

lf::Image generate_texture(int height, int width, std::uint64_t seed, int components) {
    const Texture tex(height, width, seed, components);
    lf::Image img(height, width);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            const auto rgb = tex.at(x, y);
            for (int c = 0; c < 3; ++c) img.at(c, y, x) = static_cast<float>(rgb[c]);
        }
    return img;
}

} // namespace l3f::synth
