#pragma once
// Contextual loss between two H x W x 3 images.
//
// Features are raw patch x patch RGB vectors: target patches on a
// grid_stride lattice, output patches at every position. Both sets are
// centered on the target mean and L2-normalized. With d_ij = 1 - cos(x_i, y_j),
//   d~_ij  = d_ij / (min_k d_ik + epsilon)
//   w_ij   = exp((1 - d~_ij) / bandwidth)
//   CX_ij  = w_ij / sum_k w_ik
//   loss   = -log(mean_j max_i CX_ij)
// The target is treated as a constant.

#include "l3f/nn/ops.hpp"

namespace l3f::loss {

struct CxConfig {
    int patch = 5;
    int grid_stride = 4;
    // Stride of the output feature lattice.
    int out_stride = 1;
    double bandwidth = 0.5;
    double epsilon = 1e-5;

    void validate() const;
};

template <typename T>
nn::Var contextual_loss(nn::Graph<T>& g, nn::Var out, nn::Var gt, const CxConfig& config = {});

double contextual_loss_value(const nn::Tensor<float>& out, const nn::Tensor<float>& gt, const CxConfig& config = {});

} // namespace l3f::loss
