#include "l3f/nn/layers.hpp"

#include "l3f/error.hpp"

#include <cmath>
#include <sstream>

namespace l3f::nn {

const char* to_string(LayerKind kind) noexcept {
    switch (kind) {
    case LayerKind::conv: return "conv";
    case LayerKind::transposed_conv: return "tconv";
    case LayerKind::fully_connected: return "fc";
    case LayerKind::resblock: return "resblock";
    }
    return "?";
}

std::string LayerSpec::to_string() const {
    std::ostringstream os;
    os << nn::to_string(kind) << " k=" << kernel << " s=" << stride << " in=" << in_channels
       << " out=" << out_channels << " pad=" << padding;
    return os.str();
}

LayerSpec LayerSpec::parse(const std::string& text) {
    std::istringstream is(text);
    std::string kind;
    is >> kind;
    LayerSpec spec;
    if (kind == "conv") spec.kind = LayerKind::conv;
    else if (kind == "tconv") spec.kind = LayerKind::transposed_conv;
    else if (kind == "fc") spec.kind = LayerKind::fully_connected;
    else if (kind == "resblock") spec.kind = LayerKind::resblock;
    else throw ConfigError("unknown layer kind '" + kind + "'");
    std::string field;
    while (is >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw ConfigError("malformed layer field '" + field + "'");
        const std::string key = field.substr(0, eq);
        const std::size_t value = std::stoul(field.substr(eq + 1));
        if (key == "k") spec.kernel = value;
        else if (key == "s") spec.stride = value;
        else if (key == "in") spec.in_channels = value;
        else if (key == "out") spec.out_channels = value;
        else if (key == "pad") spec.padding = value;
        else throw ConfigError("unknown layer field '" + key + "'");
    }
    spec.validate();
    return spec;
}

void LayerSpec::validate() const {
    if (kernel < 1) throw ConfigError("layer kernel must be >= 1");
    if (stride != 1 && stride != 2) throw ConfigError("layer stride must be 1 or 2");
    if (kind == LayerKind::transposed_conv && (kernel != 2 || stride != 2))
        throw ConfigError("transposed convolution supports only kernel 2, stride 2");
    if ((kind == LayerKind::conv || kind == LayerKind::resblock) && stride == 1 && padding != kernel / 2)
        throw ConfigError("stride-1 convolutions use same padding");
}

template <typename T>
void init_fan_in(Parameter<T>& p, std::size_t fan_in, T gain, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, static_cast<double>(gain) / std::sqrt(static_cast<double>(fan_in)));
    for (T& v : p.value.data()) v = static_cast<T>(normal(rng));
}

template <typename T>
Conv2d<T>::Conv2d(const std::string& name, std::size_t in, std::size_t out, std::size_t kernel, std::size_t stride)
    : spec{LayerKind::conv, kernel, stride, in, out, kernel / 2},
      weight(name + ".weight", {kernel, kernel, in, out}),
      bias(name + ".bias", {out}) {
    spec.validate();
    bias.is_weight = false;
}

template <typename T>
Var Conv2d<T>::forward(Graph<T>& g, Var x) {
    return conv2d(g, x, g.parameter(weight), g.parameter(bias), geometry());
}

template <typename T>
void Conv2d<T>::init(std::mt19937_64& rng, T gain) {
    init_fan_in(weight, spec.kernel * spec.kernel * spec.in_channels, gain, rng);
    bias.value.fill(T(0));
}

template <typename T>
TransposedConv2d<T>::TransposedConv2d(const std::string& name, std::size_t in, std::size_t out)
    : spec{LayerKind::transposed_conv, 2, 2, in, out, 0},
      weight(name + ".weight", {in, 2, 2, out}),
      bias(name + ".bias", {out}) {
    bias.is_weight = false;
}

template <typename T>
Var TransposedConv2d<T>::forward(Graph<T>& g, Var x) {
    return conv_transpose2x2(g, x, g.parameter(weight), g.parameter(bias));
}

template <typename T>
void TransposedConv2d<T>::init(std::mt19937_64& rng, T gain) {
    // Each output pixel sees one tap, so the fan-in is the input channel count.
    init_fan_in(weight, spec.in_channels, gain, rng);
    bias.value.fill(T(0));
}

template <typename T>
Dense<T>::Dense(const std::string& name, std::size_t in, std::size_t out)
    : spec{LayerKind::fully_connected, 1, 1, in, out, 0},
      weight(name + ".weight", {out, in}),
      bias(name + ".bias", {out}) {
    bias.is_weight = false;
}

template <typename T>
Var Dense<T>::forward(Graph<T>& g, Var x) {
    return dense(g, x, g.parameter(weight), g.parameter(bias));
}

template <typename T>
void Dense<T>::init(std::mt19937_64& rng, T gain) {
    init_fan_in(weight, spec.in_channels, gain, rng);
    bias.value.fill(T(0));
}

template <typename T>
ResBlock<T>::ResBlock(const std::string& name, std::size_t channels)
    : spec{LayerKind::resblock, 3, 1, channels, channels, 1},
      first(name + ".conv1", channels, channels, 3, 1),
      second(name + ".conv2", channels, channels, 3, 1) {}

template <typename T>
Var ResBlock<T>::forward(Graph<T>& g, Var x) {
    const Var inner = second.forward(g, relu(g, first.forward(g, x)));
    return add(g, x, inner);
}

template <typename T>
void ResBlock<T>::init(std::mt19937_64& rng, T gain) {
    first.init(rng, gain);
    second.init(rng, gain);
}

template void init_fan_in<float>(Parameter<float>&, std::size_t, float, std::mt19937_64&);
template void init_fan_in<double>(Parameter<double>&, std::size_t, double, std::mt19937_64&);
template struct Conv2d<float>;
template struct Conv2d<double>;
template struct TransposedConv2d<float>;
template struct TransposedConv2d<double>;
template struct Dense<float>;
template struct Dense<double>;
template struct ResBlock<float>;
template struct ResBlock<double>;

} // namespace l3f::nn
