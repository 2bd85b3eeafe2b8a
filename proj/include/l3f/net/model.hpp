#pragma once
// Two-stage restoration network.
//
// Stage I (GRB) encodes the stacked working grid into a half-resolution latent:
//   conv7 s1 -> C/2, ReLU, conv3 s2 -> C, ReLU, M resblocks, conv1 -> C/2.
// Stage II (VRB) restores one view from its 5-view neighbor stack:
//   conv7 s1 -> 15, ReLU, conv3 s2 -> C/2, ReLU, concat latent, N resblocks,
//   transpose 2x2 s2 -> CT, ReLU, conv3 -> 3, plus the center view.
// The histogram MLP maps a 3L histogram to gamma through 200, 100, 50 hidden
// units (ReLU) and a softplus output.

#include "l3f/net/config.hpp"
#include "l3f/nn/checkpoint.hpp"
#include "l3f/nn/layers.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace l3f::net {

template <typename T>
class L3Fnet {
public:
    explicit L3Fnet(ModelConfig config = {});

    L3Fnet(const L3Fnet&) = delete;
    L3Fnet& operator=(const L3Fnet&) = delete;
    L3Fnet(L3Fnet&&) = default;
    L3Fnet& operator=(L3Fnet&&) = default;

    const ModelConfig& config() const noexcept { return config_; }

    // Fan-in normal initialization; the VRB output conv is zeroed so the
    // untrained network passes the center view through unchanged.
    void init(std::uint64_t seed);

    // stacked: H x W x 3*grid^2 with H, W even -> H/2 x W/2 x C/2.
    nn::Var grb_forward(nn::Graph<T>& g, nn::Var stacked);
    // neighbors: H x W x 15, latent: H/2 x W/2 x C/2, center: H x W x 3.
    nn::Var vrb_forward(nn::Graph<T>& g, nn::Var neighbors, nn::Var latent, nn::Var center);
    // hist: [3L] -> scalar gamma > 0.
    nn::Var predict_gamma(nn::Graph<T>& g, nn::Var hist);

    std::vector<nn::Parameter<T>*> parameters();
    std::vector<nn::Parameter<T>*> stage_parameters();
    std::vector<nn::Parameter<T>*> histogram_parameters();
    std::vector<std::pair<std::string, nn::LayerSpec>> layer_specs() const;
    std::size_t parameter_count();

    template <typename U>
    L3Fnet<U> cast();

    nn::Checkpoint to_checkpoint();
    static L3Fnet from_checkpoint(const nn::Checkpoint& checkpoint);
    void save(const std::filesystem::path& path);
    static L3Fnet load(const std::filesystem::path& path);

    nn::Conv2d<T> grb_head1, grb_head2, grb_tail;
    std::vector<nn::ResBlock<T>> grb_blocks;
    nn::Conv2d<T> vrb_head1, vrb_head2, vrb_out;
    std::vector<nn::ResBlock<T>> vrb_blocks;
    nn::TransposedConv2d<T> vrb_up;
    std::vector<nn::Dense<T>> hist_mlp;

private:
    ModelConfig config_;
};

template <typename T>
template <typename U>
L3Fnet<U> L3Fnet<T>::cast() {
    L3Fnet<U> out(config_);
    const auto src = parameters();
    const auto dst = out.parameters();
    for (std::size_t i = 0; i < src.size(); ++i) *dst[i] = src[i]->template cast<U>();
    return out;
}

extern template class L3Fnet<float>;
extern template class L3Fnet<double>;

} // namespace l3f::net
