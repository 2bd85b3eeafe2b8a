#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace l3f::nn {

using Shape = std::vector<std::size_t>;

std::size_t element_count(const Shape& shape) noexcept;
std::string to_string(const Shape& shape);

// Dense row-major array. Image-like tensors are H x W x C (channels last).
template <typename T>
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(Shape shape, T fill = T(0));
    Tensor(Shape shape, std::vector<T> data);

    const Shape& shape() const noexcept { return shape_; }
    std::size_t rank() const noexcept { return shape_.size(); }
    std::size_t dim(std::size_t axis) const { return shape_.at(axis); }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    T* ptr() noexcept { return data_.data(); }
    const T* ptr() const noexcept { return data_.data(); }
    std::span<T> data() noexcept { return data_; }
    std::span<const T> data() const noexcept { return data_; }
    std::vector<T>& storage() noexcept { return data_; }

    T& operator[](std::size_t i) noexcept { return data_[i]; }
    const T& operator[](std::size_t i) const noexcept { return data_[i]; }

    // HWC accessors for rank-3 tensors.
    T& at(std::size_t y, std::size_t x, std::size_t c) noexcept { return data_[(y * shape_[1] + x) * shape_[2] + c]; }
    const T& at(std::size_t y, std::size_t x, std::size_t c) const noexcept {
        return data_[(y * shape_[1] + x) * shape_[2] + c];
    }

    void fill(T value);
    void reshape(Shape shape);

    template <typename U>
    Tensor<U> cast() const {
        Tensor<U> out(shape_);
        for (std::size_t i = 0; i < data_.size(); ++i) out[i] = static_cast<U>(data_[i]);
        return out;
    }

    bool operator==(const Tensor& other) const = default;

private:
    Shape shape_;
    std::vector<T> data_;
};

// Trainable block: value, accumulated gradient and the two Adam moments share one shape.
template <typename T>
struct Parameter {
    Parameter() = default;
    Parameter(std::string name, Shape shape);

    std::string name;
    Tensor<T> value;
    Tensor<T> grad;
    Tensor<T> moment1;
    Tensor<T> moment2;
    // Weights take part in the L1 parameter penalty; biases do not.
    bool is_weight = true;

    void zero_grad();

    template <typename U>
    Parameter<U> cast() const {
        Parameter<U> out;
        out.name = name;
        out.value = value.template cast<U>();
        out.grad = grad.template cast<U>();
        out.moment1 = moment1.template cast<U>();
        out.moment2 = moment2.template cast<U>();
        out.is_weight = is_weight;
        return out;
    }
};

extern template class Tensor<float>;
extern template class Tensor<double>;
extern template struct Parameter<float>;
extern template struct Parameter<double>;

} // namespace l3f::nn
