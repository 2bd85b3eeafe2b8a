#pragma once

#include "l3f/lf/light_field.hpp"
#include "l3f/nn/tensor.hpp"

namespace l3f::net {

// Per-channel L-bin histogram over every view, each channel normalized to
// sum 1, laid out R | G | B. Sample x falls into bin min(floor(x * L), L - 1).
template <typename T = float>
nn::Tensor<T> rgb_histogram(const lf::LightField& lf, int bins);

// gamma * lf, without clamping.
lf::LightField amplify(const lf::LightField& lf, double gamma);

// lf ^ gamma elementwise.
lf::LightField gamma_correct(const lf::LightField& lf, double gamma);

} // namespace l3f::net
