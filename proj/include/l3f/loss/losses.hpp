#pragma once

#include "l3f/nn/ops.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace l3f::loss {

struct LossWeights {
    double alpha1 = 5.0;
    double alpha1_after_switch = 1.0;
    double alpha2 = 0.1;
    double lambda = 1e-6;
    std::uint64_t switch_iter = 20000;

    void validate() const;
};

struct Alphas {
    double alpha1 = 0;
    double alpha2 = 0;
    bool operator==(const Alphas&) const = default;
};

// (alpha1, alpha2) before switch_iter, (alpha1_after_switch, alpha2) from it on.
Alphas loss_schedule(std::uint64_t iter, const LossWeights& weights);

// Mean absolute deviation over every element of all K views.
template <typename T>
nn::Var l1_loss(nn::Graph<T>& g, const std::vector<nn::Var>& out, const std::vector<nn::Var>& gt);

// Sum of |w| over weight parameters; biases are skipped.
template <typename T>
nn::Var param_l1_penalty(nn::Graph<T>& g, std::span<nn::Parameter<T>* const> params);

template <typename T>
double param_l1_penalty_value(std::span<nn::Parameter<T>* const> params);

} // namespace l3f::loss
