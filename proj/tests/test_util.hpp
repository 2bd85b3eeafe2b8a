#pragma once

#include "l3f/lf/light_field.hpp"
#include "l3f/nn/tensor.hpp"

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>

namespace l3f::test {

inline lf::LightField random_lf(int u, int v, int h, int w, std::uint64_t seed, float lo = 0.0f, float hi = 1.0f) {
    lf::LightField out(u, v, h, w);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> d(lo, hi);
    for (float& x : out.data()) x = d(rng);
    return out;
}

// Removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("l3f_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

// Upper 1% point of the chi-square distribution.
inline double chi2_critical_99(int dof) {
    switch (dof) {
    case 1: return 6.6349;
    case 2: return 9.2103;
    case 3: return 11.3449;
    case 5: return 15.0863;
    case 7: return 18.4753;
    case 11: return 24.7250;
    case 23: return 41.6384;
    case 32: return 53.4858;
    }
    return -1.0;
}

// Nested-loop cross-correlation with zero padding. w: [k, k, Cin, Cout].
inline nn::Tensor<double> conv_reference(const nn::Tensor<double>& x, const nn::Tensor<double>& w,
                                         const nn::Tensor<double>& b, std::size_t stride, std::size_t pad) {
    const std::size_t H = x.dim(0), W = x.dim(1), Ci = x.dim(2), K = w.dim(0), Co = w.dim(3);
    const std::size_t Ho = (H + 2 * pad - K) / stride + 1, Wo = (W + 2 * pad - K) / stride + 1;
    nn::Tensor<double> y({Ho, Wo, Co});
    for (std::size_t oy = 0; oy < Ho; ++oy)
        for (std::size_t ox = 0; ox < Wo; ++ox)
            for (std::size_t co = 0; co < Co; ++co) {
                double acc = b[co];
                for (std::size_t ky = 0; ky < K; ++ky)
                    for (std::size_t kx = 0; kx < K; ++kx) {
                        const long iy = static_cast<long>(oy * stride + ky) - static_cast<long>(pad);
                        const long ix = static_cast<long>(ox * stride + kx) - static_cast<long>(pad);
                        if (iy < 0 || ix < 0 || iy >= static_cast<long>(H) || ix >= static_cast<long>(W)) continue;
                        for (std::size_t ci = 0; ci < Ci; ++ci)
                            acc += x.at(iy, ix, ci) * w[((ky * K + kx) * Ci + ci) * Co + co];
                    }
                y.at(oy, ox, co) = acc;
            }
    return y;
}

// Scatter-accumulate 2x2 stride-2 transposed convolution. w: [Cin, 2, 2, Cout].
inline nn::Tensor<double> tconv_reference(const nn::Tensor<double>& x, const nn::Tensor<double>& w,
                                          const nn::Tensor<double>& b) {
    const std::size_t H = x.dim(0), W = x.dim(1), Ci = x.dim(2), Co = w.dim(3);
    nn::Tensor<double> y({2 * H, 2 * W, Co});
    for (std::size_t yy = 0; yy < 2 * H; ++yy)
        for (std::size_t xx = 0; xx < 2 * W; ++xx)
            for (std::size_t co = 0; co < Co; ++co) y.at(yy, xx, co) = b[co];
    for (std::size_t i = 0; i < H; ++i)
        for (std::size_t j = 0; j < W; ++j)
            for (std::size_t ci = 0; ci < Ci; ++ci)
                for (std::size_t dy = 0; dy < 2; ++dy)
                    for (std::size_t dx = 0; dx < 2; ++dx)
                        for (std::size_t co = 0; co < Co; ++co)
                            y.at(2 * i + dy, 2 * j + dx, co) += x.at(i, j, ci) * w[((ci * 2 + dy) * 2 + dx) * Co + co];
    return y;
}

inline nn::Tensor<double> relu_reference(nn::Tensor<double> x) {
    for (double& v : x.data()) v = std::max(v, 0.0);
    return x;
}

} // namespace l3f::test
