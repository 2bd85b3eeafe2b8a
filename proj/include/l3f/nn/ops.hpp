#pragma once
// Differentiable operations recorded on a Graph. Image tensors are H x W x C.

#include "l3f/nn/graph.hpp"

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace l3f::nn {

struct ConvGeometry {
    std::size_t kernel = 3;
    std::size_t stride = 1;
    std::size_t padding = 1;
};

std::size_t conv_output_extent(std::size_t extent, const ConvGeometry& geo);

// Cross-correlation. weight: [k, k, Cin, Cout], bias: [Cout].
template <typename T>
Var conv2d(Graph<T>& g, Var x, Var weight, Var bias, const ConvGeometry& geo);

// Kernel 2, stride 2: every output pixel receives exactly one tap.
// weight: [Cin, 2, 2, Cout], bias: [Cout]. Output is 2h x 2w x Cout.
template <typename T>
Var conv_transpose2x2(Graph<T>& g, Var x, Var weight, Var bias);

// y = W x + b with weight [m, n], x [n].
template <typename T>
Var dense(Graph<T>& g, Var x, Var weight, Var bias);

template <typename T>
Var relu(Graph<T>& g, Var x);

template <typename T>
Var softplus(Graph<T>& g, Var x);

template <typename T>
Var add(Graph<T>& g, Var a, Var b);

// s must hold a single element.
template <typename T>
Var scale(Graph<T>& g, Var x, Var s);

template <typename T>
Var concat_channels(Graph<T>& g, const std::vector<Var>& parts);

using IndexMap = std::shared_ptr<const std::vector<std::uint32_t>>;

// out.flat[i] = x.flat[(*indices)[i]]; the gradient scatters back.
template <typename T>
Var gather(Graph<T>& g, Var x, IndexMap indices, Shape shape);

template <typename T>
Var sum_abs(Graph<T>& g, Var x);

// Mean absolute difference over all elements.
template <typename T>
Var l1_mean(Graph<T>& g, Var out, Var target);

// sum_k coeff_k * term_k over scalar terms.
template <typename T>
Var weighted_sum(Graph<T>& g, const std::vector<std::pair<Var, T>>& terms);

// Picks element `index` of x as a scalar.
template <typename T>
Var element(Graph<T>& g, Var x, std::size_t index);

} // namespace l3f::nn
