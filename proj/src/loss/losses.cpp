#include "l3f/loss/losses.hpp"

#include "l3f/error.hpp"

#include <cmath>

namespace l3f::loss {

void LossWeights::validate() const {
    if (alpha1 < 0 || alpha1_after_switch < 0 || alpha2 < 0 || lambda < 0)
        throw ConfigError("loss weights must be non-negative");
}

Alphas loss_schedule(std::uint64_t iter, const LossWeights& w) {
    return {iter < w.switch_iter ? w.alpha1 : w.alpha1_after_switch, w.alpha2};
}

template <typename T>
nn::Var l1_loss(nn::Graph<T>& g, const std::vector<nn::Var>& out, const std::vector<nn::Var>& gt) {
    if (out.empty() || out.size() != gt.size()) throw PreconditionError("l1_loss needs matching non-empty view lists");
    std::size_t total = 0;
    for (const auto& v : out) total += g.value(v).size();
    std::vector<std::pair<nn::Var, T>> terms;
    for (std::size_t k = 0; k < out.size(); ++k)
        terms.emplace_back(nn::l1_mean(g, out[k], gt[k]), static_cast<T>(g.value(out[k]).size()) / static_cast<T>(total));
    return nn::weighted_sum(g, terms);
}

template <typename T>
nn::Var param_l1_penalty(nn::Graph<T>& g, std::span<nn::Parameter<T>* const> params) {
    std::vector<std::pair<nn::Var, T>> terms;
    for (auto* p : params)
        if (p->is_weight) terms.emplace_back(nn::sum_abs(g, g.parameter(*p)), T(1));
    return nn::weighted_sum(g, terms);
}

template <typename T>
double param_l1_penalty_value(std::span<nn::Parameter<T>* const> params) {
    double acc = 0;
    for (auto* p : params)
        if (p->is_weight)
            for (T v : p->value.data()) acc += std::abs(static_cast<double>(v));
    return acc;
}

template nn::Var l1_loss<float>(nn::Graph<float>&, const std::vector<nn::Var>&, const std::vector<nn::Var>&);
template nn::Var l1_loss<double>(nn::Graph<double>&, const std::vector<nn::Var>&, const std::vector<nn::Var>&);
template nn::Var param_l1_penalty<float>(nn::Graph<float>&, std::span<nn::Parameter<float>* const>);
template nn::Var param_l1_penalty<double>(nn::Graph<double>&, std::span<nn::Parameter<double>* const>);
template double param_l1_penalty_value<float>(std::span<nn::Parameter<float>* const>);
template double param_l1_penalty_value<double>(std::span<nn::Parameter<double>* const>);

} // namespace l3f::loss
