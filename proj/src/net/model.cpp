#include "l3f/net/model.hpp"

#include "l3f/error.hpp"
#include "l3f/nn/ops.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace l3f::net {

using nn::Var;

template <typename T>
L3Fnet<T>::L3Fnet(ModelConfig config) : config_(config) {
    config_.validate();
    const std::size_t C = config_.channels, half = config_.half_channels();
    grb_head1 = nn::Conv2d<T>("grb.head1", config_.stacked_channels(), half, 7, 1);
    grb_head2 = nn::Conv2d<T>("grb.head2", half, C, 3, 2);
    for (int i = 0; i < config_.s1_blocks; ++i) grb_blocks.emplace_back("grb.block" + std::to_string(i), C);
    grb_tail = nn::Conv2d<T>("grb.tail", C, half, 1, 1);

    vrb_head1 = nn::Conv2d<T>("vrb.head1", 15, 15, 7, 1);
    vrb_head2 = nn::Conv2d<T>("vrb.head2", 15, half, 3, 2);
    for (int i = 0; i < config_.s2_blocks; ++i) vrb_blocks.emplace_back("vrb.block" + std::to_string(i), C);
    vrb_up = nn::TransposedConv2d<T>("vrb.up", C, config_.transpose_channels);
    vrb_out = nn::Conv2d<T>("vrb.out", config_.transpose_channels, 3, 3, 1);

    const std::size_t widths[] = {3 * static_cast<std::size_t>(config_.hist_bins), 200, 100, 50, 1};
    for (int i = 0; i < 4; ++i) hist_mlp.emplace_back("hist.fc" + std::to_string(i), widths[i], widths[i + 1]);
}

template <typename T>
void L3Fnet<T>::init(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const T relu_gain = static_cast<T>(std::sqrt(2.0));
    grb_head1.init(rng, relu_gain);
    grb_head2.init(rng, relu_gain);
    for (auto& b : grb_blocks) b.init(rng, T(1));
    grb_tail.init(rng, T(1));
    vrb_head1.init(rng, relu_gain);
    vrb_head2.init(rng, relu_gain);
    for (auto& b : vrb_blocks) b.init(rng, T(1));
    vrb_up.init(rng, relu_gain);
    vrb_out.weight.value.fill(T(0));
    vrb_out.bias.value.fill(T(0));
    for (std::size_t i = 0; i < hist_mlp.size(); ++i) hist_mlp[i].init(rng, i + 1 < hist_mlp.size() ? relu_gain : T(1));
}

template <typename T>
Var L3Fnet<T>::grb_forward(nn::Graph<T>& g, Var stacked) {
    const auto& s = g.value(stacked).shape();
    if (s.size() != 3 || s[2] != static_cast<std::size_t>(config_.stacked_channels()))
        throw PreconditionError("GRB expects H x W x " + std::to_string(config_.stacked_channels()) + ", got " +
                                nn::to_string(s));
    if (s[0] % 2 != 0 || s[1] % 2 != 0) throw PreconditionError("GRB needs even spatial extents, got " + nn::to_string(s));
    Var x = nn::relu(g, grb_head1.forward(g, stacked));
    x = nn::relu(g, grb_head2.forward(g, x));
    for (auto& b : grb_blocks) x = b.forward(g, x);
    return grb_tail.forward(g, x);
}

template <typename T>
Var L3Fnet<T>::vrb_forward(nn::Graph<T>& g, Var neighbors, Var latent, Var center) {
    const auto& ns = g.value(neighbors).shape();
    const auto& ls = g.value(latent).shape();
    const auto& cs = g.value(center).shape();
    if (ns.size() != 3 || ns[2] != 15) throw PreconditionError("VRB expects H x W x 15 neighbors, got " + nn::to_string(ns));
    if (ns[0] % 2 != 0 || ns[1] % 2 != 0) throw PreconditionError("VRB needs even spatial extents, got " + nn::to_string(ns));
    if (ls != nn::Shape{ns[0] / 2, ns[1] / 2, static_cast<std::size_t>(config_.half_channels())})
        throw PreconditionError("latent " + nn::to_string(ls) + " does not match neighbors " + nn::to_string(ns));
    if (cs != nn::Shape{ns[0], ns[1], 3}) throw PreconditionError("center view " + nn::to_string(cs) + " does not match");
    Var x = nn::relu(g, vrb_head1.forward(g, neighbors));
    x = nn::relu(g, vrb_head2.forward(g, x));
    x = nn::concat_channels(g, {x, latent});
    for (auto& b : vrb_blocks) x = b.forward(g, x);
    x = nn::relu(g, vrb_up.forward(g, x));
    x = vrb_out.forward(g, x);
    return nn::add(g, center, x);
}

template <typename T>
Var L3Fnet<T>::predict_gamma(nn::Graph<T>& g, Var hist) {
    if (g.value(hist).size() != 3 * static_cast<std::size_t>(config_.hist_bins))
        throw PreconditionError("histogram must hold " + std::to_string(3 * config_.hist_bins) + " entries");
    Var x = hist;
    for (std::size_t i = 0; i < hist_mlp.size(); ++i) {
        x = hist_mlp[i].forward(g, x);
        x = i + 1 < hist_mlp.size() ? nn::relu(g, x) : nn::softplus(g, x);
    }
    return x;
}

template <typename T>
std::vector<nn::Parameter<T>*> L3Fnet<T>::stage_parameters() {
    std::vector<nn::Parameter<T>*> out;
    const auto push = [&](nn::Parameter<T>& p) { out.push_back(&p); };
    grb_head1.for_each_parameter(push);
    grb_head2.for_each_parameter(push);
    for (auto& b : grb_blocks) b.for_each_parameter(push);
    grb_tail.for_each_parameter(push);
    vrb_head1.for_each_parameter(push);
    vrb_head2.for_each_parameter(push);
    for (auto& b : vrb_blocks) b.for_each_parameter(push);
    vrb_up.for_each_parameter(push);
    vrb_out.for_each_parameter(push);
    return out;
}

template <typename T>
std::vector<nn::Parameter<T>*> L3Fnet<T>::histogram_parameters() {
    std::vector<nn::Parameter<T>*> out;
    for (auto& fc : hist_mlp) fc.for_each_parameter([&](nn::Parameter<T>& p) { out.push_back(&p); });
    return out;
}

template <typename T>
std::vector<nn::Parameter<T>*> L3Fnet<T>::parameters() {
    auto out = stage_parameters();
    const auto hist = histogram_parameters();
    out.insert(out.end(), hist.begin(), hist.end());
    return out;
}

template <typename T>
std::size_t L3Fnet<T>::parameter_count() {
    std::size_t n = 0;
    for (auto* p : parameters()) n += p->value.size();
    return n;
}

template <typename T>
std::vector<std::pair<std::string, nn::LayerSpec>> L3Fnet<T>::layer_specs() const {
    std::vector<std::pair<std::string, nn::LayerSpec>> out;
    out.emplace_back("grb.head1", grb_head1.spec);
    out.emplace_back("grb.head2", grb_head2.spec);
    for (std::size_t i = 0; i < grb_blocks.size(); ++i) out.emplace_back("grb.block" + std::to_string(i), grb_blocks[i].spec);
    out.emplace_back("grb.tail", grb_tail.spec);
    out.emplace_back("vrb.head1", vrb_head1.spec);
    out.emplace_back("vrb.head2", vrb_head2.spec);
    for (std::size_t i = 0; i < vrb_blocks.size(); ++i) out.emplace_back("vrb.block" + std::to_string(i), vrb_blocks[i].spec);
    out.emplace_back("vrb.up", vrb_up.spec);
    out.emplace_back("vrb.out", vrb_out.spec);
    for (std::size_t i = 0; i < hist_mlp.size(); ++i) out.emplace_back("hist.fc" + std::to_string(i), hist_mlp[i].spec);
    return out;
}

template <typename T>
nn::Checkpoint L3Fnet<T>::to_checkpoint() {
    nn::Checkpoint ck;
    ck.manifest.emplace_back("format", "l3fnet");
    for (const auto& [k, v] : config_.to_map()) ck.manifest.emplace_back("model." + k, v);
    for (const auto& [name, spec] : layer_specs()) ck.manifest.emplace_back("layer." + name, spec.to_string());
    for (auto* p : parameters()) ck.blocks.emplace_back(p->name, p->value.template cast<float>());
    return ck;
}

template <typename T>
L3Fnet<T> L3Fnet<T>::from_checkpoint(const nn::Checkpoint& ck) {
    ModelConfig cfg;
    for (const auto& [k, v] : ck.manifest)
        if (k.rfind("model.", 0) == 0 && !cfg.set(k.substr(6), v)) throw ConfigError("unknown checkpoint key '" + k + "'");
    L3Fnet model(cfg);
    for (const auto& [name, spec] : model.layer_specs()) {
        const std::string* stored = ck.find("layer." + name);
        if (stored && nn::LayerSpec::parse(*stored) != spec)
            throw ConfigError("checkpoint layer " + name + " is '" + *stored + "', model expects '" + spec.to_string() + "'");
    }
    for (auto* p : model.parameters()) {
        const nn::Tensor<float>* block = ck.block(p->name);
        if (!block) throw ConfigError("checkpoint lacks parameter block " + p->name);
        if (block->shape() != p->value.shape())
            throw ConfigError("parameter " + p->name + " has shape " + nn::to_string(block->shape()) + ", expected " +
                              nn::to_string(p->value.shape()));
        p->value = block->template cast<T>();
    }
    return model;
}

template <typename T>
void L3Fnet<T>::save(const std::filesystem::path& path) {
    nn::write_checkpoint(path, to_checkpoint());
}

template <typename T>
L3Fnet<T> L3Fnet<T>::load(const std::filesystem::path& path) {
    return from_checkpoint(nn::read_checkpoint(path));
}

template class L3Fnet<float>;
template class L3Fnet<double>;

} // namespace l3f::net
