#pragma once

#include "l3f/nn/ops.hpp"

#include <random>
#include <string>

namespace l3f::nn {

enum class LayerKind { conv, transposed_conv, fully_connected, resblock };

struct LayerSpec {
    LayerKind kind = LayerKind::conv;
    std::size_t kernel = 1;
    std::size_t stride = 1;
    std::size_t in_channels = 0;
    std::size_t out_channels = 0;
    std::size_t padding = 0;

    // "conv k=7 s=1 in=192 out=64 pad=3"
    std::string to_string() const;
    static LayerSpec parse(const std::string& text);
    void validate() const;

    bool operator==(const LayerSpec&) const = default;
};

const char* to_string(LayerKind kind) noexcept;

// Zero-mean normal with standard deviation gain / sqrt(fan_in).
template <typename T>
void init_fan_in(Parameter<T>& p, std::size_t fan_in, T gain, std::mt19937_64& rng);

template <typename T>
struct Conv2d {
    LayerSpec spec;
    Parameter<T> weight;
    Parameter<T> bias;

    Conv2d() = default;
    // "Same" zero padding: floor(kernel / 2).
    Conv2d(const std::string& name, std::size_t in, std::size_t out, std::size_t kernel, std::size_t stride);

    Var forward(Graph<T>& g, Var x);
    void init(std::mt19937_64& rng, T gain);
    ConvGeometry geometry() const { return {spec.kernel, spec.stride, spec.padding}; }

    template <typename F>
    void for_each_parameter(F&& f) {
        f(weight);
        f(bias);
    }
};

template <typename T>
struct TransposedConv2d {
    LayerSpec spec;
    Parameter<T> weight;
    Parameter<T> bias;

    TransposedConv2d() = default;
    TransposedConv2d(const std::string& name, std::size_t in, std::size_t out);

    Var forward(Graph<T>& g, Var x);
    void init(std::mt19937_64& rng, T gain);

    template <typename F>
    void for_each_parameter(F&& f) {
        f(weight);
        f(bias);
    }
};

template <typename T>
struct Dense {
    LayerSpec spec;
    Parameter<T> weight;
    Parameter<T> bias;

    Dense() = default;
    Dense(const std::string& name, std::size_t in, std::size_t out);

    Var forward(Graph<T>& g, Var x);
    void init(std::mt19937_64& rng, T gain);

    template <typename F>
    void for_each_parameter(F&& f) {
        f(weight);
        f(bias);
    }
};

// x + conv3x3(relu(conv3x3(x))), stride 1, padding 1, no normalization.
template <typename T>
struct ResBlock {
    LayerSpec spec;
    Conv2d<T> first;
    Conv2d<T> second;

    ResBlock() = default;
    ResBlock(const std::string& name, std::size_t channels);

    Var forward(Graph<T>& g, Var x);
    void init(std::mt19937_64& rng, T gain);

    template <typename F>
    void for_each_parameter(F&& f) {
        first.for_each_parameter(f);
        second.for_each_parameter(f);
    }
};

extern template struct Conv2d<float>;
extern template struct Conv2d<double>;
extern template struct TransposedConv2d<float>;
extern template struct TransposedConv2d<double>;
extern template struct Dense<float>;
extern template struct Dense<double>;
extern template struct ResBlock<float>;
extern template struct ResBlock<double>;

} // namespace l3f::nn
