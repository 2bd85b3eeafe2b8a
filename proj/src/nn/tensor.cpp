#include "l3f/nn/tensor.hpp"

#include "l3f/error.hpp"

#include <algorithm>

namespace l3f::nn {

std::size_t element_count(const Shape& shape) noexcept {
    std::size_t n = 1;
    for (std::size_t d : shape) n *= d;
    return n;
}

std::string to_string(const Shape& shape) {
    std::string s = "[";
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (i) s += "x";
        s += std::to_string(shape[i]);
    }
    return s + "]";
}

template <typename T>
Tensor<T>::Tensor(Shape shape, T fill) : shape_(std::move(shape)), data_(element_count(shape_), fill) {}

template <typename T>
Tensor<T>::Tensor(Shape shape, std::vector<T> data) : shape_(std::move(shape)), data_(std::move(data)) {
    if (data_.size() != element_count(shape_)) {
        throw PreconditionError("tensor data length " + std::to_string(data_.size()) + " does not match shape " +
                                to_string(shape_));
    }
}

template <typename T>
void Tensor<T>::fill(T value) {
    std::fill(data_.begin(), data_.end(), value);
}

template <typename T>
void Tensor<T>::reshape(Shape shape) {
    if (element_count(shape) != data_.size()) {
        throw PreconditionError("cannot reshape " + to_string(shape_) + " to " + to_string(shape));
    }
    shape_ = std::move(shape);
}

template <typename T>
Parameter<T>::Parameter(std::string name_, Shape shape)
    : name(std::move(name_)), value(shape), grad(shape), moment1(shape), moment2(shape) {}

template <typename T>
void Parameter<T>::zero_grad() {
    grad.fill(T(0));
}

template class Tensor<float>;
template class Tensor<double>;
template struct Parameter<float>;
template struct Parameter<double>;

} // namespace l3f::nn
