#include "l3f/nn/adam.hpp"

#include "l3f/error.hpp"
#include "l3f/nn/kernels.hpp"

#include <cmath>

namespace l3f::nn {

template <typename T>
void adam_step(std::span<Parameter<T>* const> params, const AdamConfig& config, std::uint64_t t) {
    if (t < 1) throw PreconditionError("adam: step counter starts at 1");
    for (const Parameter<T>* p : params) {
        for (T gv : p->grad.data()) {
            if (!std::isfinite(gv)) throw NumericError("adam: non-finite gradient in " + p->name);
        }
    }
    const double td = static_cast<double>(t);
    kernels::AdamArgs<T> args;
    args.lr = static_cast<T>(config.learning_rate);
    args.beta1 = static_cast<T>(config.beta1);
    args.beta2 = static_cast<T>(config.beta2);
    args.eps = static_cast<T>(config.epsilon);
    args.correction1 = static_cast<T>(1.0 / (1.0 - std::pow(config.beta1, td)));
    args.correction2 = static_cast<T>(1.0 / (1.0 - std::pow(config.beta2, td)));
    for (Parameter<T>* p : params) {
        if (p->moment1.size() != p->value.size()) p->moment1 = Tensor<T>(p->value.shape());
        if (p->moment2.size() != p->value.size()) p->moment2 = Tensor<T>(p->value.shape());
        args.n = p->value.size();
        args.param = p->value.ptr();
        args.grad = p->grad.ptr();
        args.m = p->moment1.ptr();
        args.v = p->moment2.ptr();
        kernels::adam_update(args);
    }
}

template void adam_step<float>(std::span<Parameter<float>* const>, const AdamConfig&, std::uint64_t);
template void adam_step<double>(std::span<Parameter<double>* const>, const AdamConfig&, std::uint64_t);

} // namespace l3f::nn
