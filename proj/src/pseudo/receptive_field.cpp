#include "l3f/pseudo/receptive_field.hpp"

#include "l3f/error.hpp"
#include "l3f/pseudo/pseudo_lf.hpp"

#include <cmath>
#include <random>

namespace l3f::pseudo {

ReceptiveField analytic_receptive_field(int block, int kernel, int stride) {
    if (block < 1 || kernel < 1 || stride < 1) throw PreconditionError("receptive field arguments must be positive");
    return {kernel * block, kernel * block, stride * block, stride * block, false};
}

namespace {

struct Box {
    int y0, y1, x0, x1;
};

Box support(const nn::Tensor<float>& grad, int height, int width, double threshold) {
    Box b{height, -1, width, -1};
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            for (int c = 0; c < 3; ++c)
                if (std::abs(grad.at(y, x, c)) > threshold) {
                    b.y0 = std::min(b.y0, y);
                    b.y1 = std::max(b.y1, y);
                    b.x0 = std::min(b.x0, x);
                    b.x1 = std::max(b.x1, x);
                }
    if (b.y1 < 0) throw NumericError("receptive-field probe found no gradient above threshold");
    return b;
}

nn::Var pixel_objective(nn::Graph<float>& g, nn::Var out, std::size_t y, std::size_t x) {
    const nn::Shape s = g.value(out).shape();
    std::vector<std::pair<nn::Var, float>> terms;
    for (std::size_t c = 0; c < s[2]; ++c) terms.emplace_back(nn::element(g, out, (y * s[1] + x) * s[2] + c), 1.0f);
    return nn::weighted_sum(g, terms);
}

} // namespace

ReceptiveField measure_receptive_field(const ProbeNetwork& network, int height, int width, std::uint64_t seed,
                                       double threshold) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> unit(0.0f, 1.0f);
    nn::Tensor<float> image({static_cast<std::size_t>(height), static_cast<std::size_t>(width), 3});
    for (float& v : image.data()) v = unit(rng);

    nn::Graph<float> g;
    const nn::Var source = g.variable(std::move(image));
    const nn::Var out = network(g, source);
    const nn::Shape s = g.value(out).shape();
    if (s.size() != 3 || s[0] < 2 || s[1] < 2) throw PreconditionError("probe output must be at least 2x2, got " + nn::to_string(s));
    const std::size_t cy = s[0] / 2 - 1, cx = s[1] / 2 - 1;

    const auto probe = [&](std::size_t y, std::size_t x) {
        g.backward(pixel_objective(g, out, y, x));
        return support(g.grad(source), height, width, threshold);
    };
    const Box center = probe(cy, cx);
    const Box right = probe(cy, cx + 1);
    const Box down = probe(cy + 1, cx);

    ReceptiveField rf;
    rf.extent_y = center.y1 - center.y0 + 1;
    rf.extent_x = center.x1 - center.x0 + 1;
    rf.stride_y = down.y0 - center.y0;
    rf.stride_x = right.x0 - center.x0;
    for (const Box& b : {center, right, down})
        if (b.y0 == 0 || b.x0 == 0 || b.y1 == height - 1 || b.x1 == width - 1) rf.lower_bound = true;
    return rf;
}

ProbeNetwork conv_probe_network(nn::Conv2d<float>& conv, int height, int width, int block) {
    const nn::IndexMap map = stacked_index_map(height, width, block);
    const std::size_t h = height / block, w = width / block, c = 3 * static_cast<std::size_t>(block) * block;
    if (conv.spec.in_channels != c) throw PreconditionError("probe conv must take " + std::to_string(c) + " channels");
    return [&conv, map, h, w, c](nn::Graph<float>& g, nn::Var source) {
        return conv.forward(g, nn::gather(g, source, map, {h, w, c}));
    };
}

ProbeNetwork model_probe_network(net::L3Fnet<float>& model, int height, int width, int block, lf::ViewIndex at) {
    if (model.config().grid != block) throw PreconditionError("model grid must equal the pseudo-LF block size");
    const nn::IndexMap stacked = stacked_index_map(height, width, block);
    const nn::IndexMap neighbors = neighbor_index_map(height, width, block, at);
    const nn::IndexMap center = view_index_map(height, width, block, at);
    const std::size_t h = height / block, w = width / block, c = 3 * static_cast<std::size_t>(block) * block;
    return [&model, stacked, neighbors, center, h, w, c](nn::Graph<float>& g, nn::Var source) {
        const nn::Var latent = model.grb_forward(g, nn::gather(g, source, stacked, {h, w, c}));
        return model.vrb_forward(g, nn::gather(g, source, neighbors, {h, w, 15}), latent,
                                 nn::gather(g, source, center, {h, w, 3}));
    };
}

} // namespace l3f::pseudo
