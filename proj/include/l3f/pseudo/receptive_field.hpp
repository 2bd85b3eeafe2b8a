#pragma once

#include "l3f/lf/light_field.hpp"
#include "l3f/net/model.hpp"
#include "l3f/nn/layers.hpp"

#include <functional>

namespace l3f::pseudo {

// Extents and strides in source-image pixels.
struct ReceptiveField {
    int extent_y = 0;
    int extent_x = 0;
    int stride_y = 0;
    int stride_x = 0;
    // The measured support touched the probe image border, so the true field
    // may be larger.
    bool lower_bound = false;
};

// A k x k, stride-s layer applied to pseudo-LF views sees (k*B) x (k*B)
// source pixels and moves by s*B.
ReceptiveField analytic_receptive_field(int block, int kernel, int stride);

// Maps an H x W x 3 source image variable to an output map h x w x c.
using ProbeNetwork = std::function<nn::Var(nn::Graph<float>&, nn::Var source)>;

// Gradient-impulse probe: the support of |d(sum of channels at the output
// center pixel) / d source| above `threshold`. Strides come from repeating the
// probe one output pixel down and one to the right.
ReceptiveField measure_receptive_field(const ProbeNetwork& network, int height, int width, std::uint64_t seed = 1,
                                       double threshold = 1e-8);

// One convolution over the stacked B x B pseudo-LF views.
ProbeNetwork conv_probe_network(nn::Conv2d<float>& conv, int height, int width, int block);

// Full restoration of view `at` of the pseudo-LF of an H x W source.
// model.config().grid must equal `block`.
ProbeNetwork model_probe_network(net::L3Fnet<float>& model, int height, int width, int block, lf::ViewIndex at);

} // namespace l3f::pseudo
