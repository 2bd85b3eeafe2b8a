#pragma once
// Tape-based reverse-mode differentiation.
//
// Nodes are appended in evaluation order, so the tape is already topologically
// sorted and backward() is a single reverse sweep. Gradients of intermediate
// nodes are recomputed on every backward() call, while gradients of bound
// Parameters accumulate: calling backward() twice without zero_grad() doubles
// them.

#include "l3f/nn/tensor.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace l3f::nn {

struct Var {
    static constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::size_t id = none;
    bool valid() const noexcept { return id != none; }
};

template <typename T>
class Graph {
public:
    using BackwardFn = std::function<void(Graph&, Var self)>;

    // With record_backward = false no closures are kept and nothing requires grad
    // (inference mode).
    explicit Graph(bool record_backward = true) : recording_(record_backward) {}

    Var constant(Tensor<T> value);
    Var variable(Tensor<T> value);
    Var parameter(Parameter<T>& p);

    const Tensor<T>& value(Var v) const;
    bool requires_grad(Var v) const;
    bool recording() const noexcept { return recording_; }
    std::size_t size() const noexcept { return nodes_.size(); }

    // Gradient of a node after backward(); zero-filled if the node was not reached.
    Tensor<T> grad(Var v) const;

    // For op implementations.
    Var record(Tensor<T> value, const std::vector<Var>& inputs, BackwardFn fn);
    const Tensor<T>& out_grad(Var self) const;
    // Accumulation buffer for an input, or nullptr if it does not require grad.
    Tensor<T>* grad_buffer(Var v);

    void backward(Var root);

    // Ops with non-differentiable points (ReLU, abs, max/min selections) fold
    // their branch choices in here; gradcheck compares signatures to drop
    // finite-difference probes that straddle a kink.
    void mix_branch(std::uint64_t bits) noexcept;
    std::uint64_t branch_signature() const noexcept { return signature_; }

private:
    struct Node {
        Tensor<T> value;
        Parameter<T>* param = nullptr;
        Tensor<T> grad;
        bool requires_grad = false;
        bool has_grad = false;
        BackwardFn backward;
    };

    const Node& node(Var v) const;
    Node& node(Var v);

    std::vector<Node> nodes_;
    bool recording_;
    std::uint64_t signature_ = 1469598103934665603ull;
};

extern template class Graph<float>;
extern template class Graph<double>;

} // namespace l3f::nn
