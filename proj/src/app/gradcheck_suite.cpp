#include "l3f/app/gradcheck_suite.hpp"

#include "l3f/loss/contextual.hpp"
#include "l3f/loss/losses.hpp"
#include "l3f/net/model.hpp"
#include "l3f/nn/layers.hpp"

#include <random>

namespace l3f::app {
namespace {

using nn::Graph;
using nn::Parameter;
using nn::Tensor;
using nn::Var;

Tensor<double> random_tensor(nn::Shape shape, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
    Tensor<double> t(std::move(shape));
    std::uniform_real_distribution<double> dist(lo, hi);
    for (double& v : t.data()) v = dist(rng);
    return t;
}

// Weighted sum of outputs against fixed random coefficients.
Var project(Graph<double>& g, Var x, const Tensor<double>& coeff) {
    const Var c = g.constant(coeff);
    return nn::l1_mean(g, x, c);
}

nn::GradcheckReport check_layer(std::vector<Parameter<double>*> params, const nn::Fragment& fragment,
                                const nn::GradcheckOptions& opts) {
    return nn::gradcheck(fragment, params, opts);
}

} // namespace

std::vector<std::pair<std::string, nn::GradcheckReport>> run_gradcheck_suite(const GradcheckSuiteOptions& o) {
    std::mt19937_64 rng(o.seed);
    nn::GradcheckOptions opts;
    opts.max_entries_per_block = o.max_entries_per_block;
    opts.seed = o.seed;
    std::vector<std::pair<std::string, nn::GradcheckReport>> out;

    {
        nn::Conv2d<double> conv("conv", 3, 4, 3, 1);
        conv.init(rng, 1.0);
        conv.bias.value = random_tensor({4}, rng);
        Parameter<double> input("input", {6, 6, 3});
        input.value = random_tensor({6, 6, 3}, rng);
        const auto coeff = random_tensor({6, 6, 4}, rng, -3, 3);
        out.emplace_back("conv", check_layer({&conv.weight, &conv.bias, &input}, [&](Graph<double>& g) {
            return project(g, conv.forward(g, g.parameter(input)), coeff);
        }, opts));
    }
    {
        nn::Conv2d<double> conv("conv_s2", 3, 4, 3, 2);
        conv.init(rng, 1.0);
        conv.bias.value = random_tensor({4}, rng);
        Parameter<double> input("input", {6, 6, 3});
        input.value = random_tensor({6, 6, 3}, rng);
        const auto coeff = random_tensor({3, 3, 4}, rng, -3, 3);
        out.emplace_back("conv_stride2", check_layer({&conv.weight, &conv.bias, &input}, [&](Graph<double>& g) {
            return project(g, conv.forward(g, g.parameter(input)), coeff);
        }, opts));
    }
    {
        nn::TransposedConv2d<double> up("tconv", 3, 2);
        up.init(rng, 1.0);
        up.bias.value = random_tensor({2}, rng);
        Parameter<double> input("input", {3, 3, 3});
        input.value = random_tensor({3, 3, 3}, rng);
        const auto coeff = random_tensor({6, 6, 2}, rng, -3, 3);
        out.emplace_back("transposed_conv", check_layer({&up.weight, &up.bias, &input}, [&](Graph<double>& g) {
            return project(g, up.forward(g, g.parameter(input)), coeff);
        }, opts));
    }
    {
        nn::Dense<double> fc("fc", 7, 5);
        fc.init(rng, 1.0);
        fc.bias.value = random_tensor({5}, rng);
        Parameter<double> input("input", {7});
        input.value = random_tensor({7}, rng);
        out.emplace_back("fully_connected", check_layer({&fc.weight, &fc.bias, &input}, [&](Graph<double>& g) {
            return nn::softplus(g, nn::sum_abs(g, fc.forward(g, g.parameter(input))));
        }, opts));
    }
    {
        nn::ResBlock<double> block("res", 4);
        block.init(rng, 1.0);
        block.first.bias.value = random_tensor({4}, rng, -0.2, 0.2);
        Parameter<double> input("input", {5, 5, 4});
        input.value = random_tensor({5, 5, 4}, rng);
        const auto coeff = random_tensor({5, 5, 4}, rng, -3, 3);
        std::vector<Parameter<double>*> params;
        block.for_each_parameter([&](Parameter<double>& p) { params.push_back(&p); });
        params.push_back(&input);
        out.emplace_back("resblock", check_layer(params, [&](Graph<double>& g) {
            return project(g, block.forward(g, g.parameter(input)), coeff);
        }, opts));
    }
    {
        net::ModelConfig cfg;
        cfg.channels = o.channels;
        cfg.s1_blocks = o.s1_blocks;
        cfg.s2_blocks = o.s2_blocks;
        cfg.transpose_channels = o.transpose_channels;
        cfg.grid = o.grid;
        cfg.hist_bins = o.hist_bins;
        net::L3Fnet<double> model(cfg);
        model.init(o.seed);
        // A zero output conv would hide every upstream gradient.
        model.vrb_out.init(rng, 1.0);
        model.vrb_out.bias.value = random_tensor({3}, rng, -0.1, 0.1);

        const std::size_t P = o.patch, views = static_cast<std::size_t>(o.grid) * o.grid;
        const auto low_stack = random_tensor({P, P, 3 * views}, rng, 0.0, 0.1);
        std::vector<Tensor<double>> neighbors, centers, targets;
        for (std::size_t k = 0; k < views; ++k) {
            neighbors.push_back(random_tensor({P, P, 15}, rng, 0.0, 0.1));
            Tensor<double> c({P, P, 3});
            for (std::size_t i = 0; i < P * P; ++i)
                for (std::size_t ch = 0; ch < 3; ++ch) c[i * 3 + ch] = neighbors.back()[i * 15 + ch];
            centers.push_back(c);
            targets.push_back(random_tensor({P, P, 3}, rng, 0.0, 1.0));
        }
        auto hist = random_tensor({3 * static_cast<std::size_t>(o.hist_bins)}, rng, 0.0, 1.0);
        loss::CxConfig cx;
        cx.grid_stride = 3;
        cx.out_stride = 2;
        const auto params = model.parameters();
        out.emplace_back("l3fnet", nn::gradcheck([&](Graph<double>& g) {
            const Var gamma = model.predict_gamma(g, g.constant(hist));
            const Var latent = model.grb_forward(g, nn::scale(g, g.constant(low_stack), gamma));
            std::vector<Var> outs, gts;
            std::vector<std::pair<Var, double>> cx_terms;
            for (std::size_t k = 0; k < views; ++k) {
                outs.push_back(model.vrb_forward(g, nn::scale(g, g.constant(neighbors[k]), gamma), latent,
                                                 nn::scale(g, g.constant(centers[k]), gamma)));
                gts.push_back(g.constant(targets[k]));
                cx_terms.emplace_back(loss::contextual_loss(g, outs.back(), gts.back(), cx), 1.0 / views);
            }
            return nn::weighted_sum<double>(g, {{loss::l1_loss(g, outs, gts), 5.0},
                                                {nn::weighted_sum(g, cx_terms), 0.1},
                                                {loss::param_l1_penalty<double>(g, params), 1e-3}});
        }, params, opts));
    }
    return out;
}

} // namespace l3f::app
