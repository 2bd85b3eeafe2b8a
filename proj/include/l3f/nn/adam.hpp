#pragma once

#include "l3f/nn/tensor.hpp"

#include <cstdint>
#include <span>

namespace l3f::nn {

struct AdamConfig {
    double learning_rate = 1e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

// One bias-corrected Adam update at step t (t >= 1) using each parameter's
// accumulated gradient. Throws NumericError, leaving every parameter
// untouched, if any gradient is not finite.
template <typename T>
void adam_step(std::span<Parameter<T>* const> params, const AdamConfig& config, std::uint64_t t);

template <typename T>
class Adam {
public:
    explicit Adam(AdamConfig config = {}) : config_(config) {}

    void step(std::span<Parameter<T>* const> params) {
        adam_step(params, config_, step_ + 1);
        ++step_;
    }

    std::uint64_t steps() const noexcept { return step_; }
    void set_steps(std::uint64_t t) noexcept { step_ = t; }
    const AdamConfig& config() const noexcept { return config_; }
    void set_learning_rate(double lr) noexcept { config_.learning_rate = lr; }

private:
    AdamConfig config_;
    std::uint64_t step_ = 0;
};

} // namespace l3f::nn
