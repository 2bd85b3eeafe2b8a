#include "l3f/net/restore.hpp"

#include "l3f/error.hpp"
#include "l3f/lf/views.hpp"
#include "l3f/net/histogram.hpp"
#include "l3f/nn/ops.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace l3f::net {

double predict_gamma(L3Fnet<float>& model, const lf::LightField& lf) {
    nn::Graph<float> g(false);
    const nn::Var h = g.constant(rgb_histogram<float>(lf, model.config().hist_bins));
    return g.value(model.predict_gamma(g, h))[0];
}

RestoreResult restore_lf(L3Fnet<float>& model, const lf::LightField& lf_low, const RestoreOptions& options) {
    const int n = model.config().grid;
    if (lf_low.views_u() != n + 2 || lf_low.views_v() != n + 2)
        throw PreconditionError("model expects a " + std::to_string(n) + "x" + std::to_string(n) +
                                " working grid plus ring (" + std::to_string(n + 2) + "x" + std::to_string(n + 2) +
                                " views), input has " + std::to_string(lf_low.views_u()) + "x" +
                                std::to_string(lf_low.views_v()));
    RestoreResult result;
    result.views = options.views;
    if (result.views.empty())
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) result.views.push_back({u, v});
    for (const auto& at : result.views)
        if (at.u < 0 || at.v < 0 || at.u >= n || at.v >= n)
            throw PreconditionError("view (" + std::to_string(at.u) + "," + std::to_string(at.v) + ") outside the " +
                                    std::to_string(n) + "x" + std::to_string(n) + " working grid");

    lf::LightField input = lf_low;
    if (options.use_hist) {
        result.gamma = predict_gamma(model, lf_low);
        input = amplify(lf_low, result.gamma);
    }

    nn::Tensor<float> latent;
    {
        nn::Graph<float> g(false);
        latent = g.value(model.grb_forward(g, g.constant(lf::stack_views<float>(lf::strip_ring(input, 1)))));
    }

    std::vector<nn::Tensor<float>> outputs(result.views.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
        try {
            for (std::size_t i = next++; i < outputs.size(); i = next++) {
                const lf::ViewIndex at = result.views[i];
                nn::Graph<float> g(false);
                const nn::Var nb = g.constant(lf::neighbor_stack<float>(input, at, 1));
                const nn::Var center = g.constant(lf::view_tensor<float>(input, at.u + 1, at.v + 1));
                outputs[i] = g.value(model.vrb_forward(g, nb, g.constant(latent), center));
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    const int workers = std::max(1, std::min<int>(options.workers, static_cast<int>(outputs.size())));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    const bool full = options.views.empty();
    result.lf = full ? lf::LightField(n, n, lf_low.height(), lf_low.width())
                     : lf::LightField(1, static_cast<int>(outputs.size()), lf_low.height(), lf_low.width());
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        const lf::Image img = lf::tensor_to_image(outputs[i]);
        if (full) result.lf.set_view(result.views[i].u, result.views[i].v, img);
        else result.lf.set_view(0, static_cast<int>(i), img);
    }
    return result;
}

} // namespace l3f::net
