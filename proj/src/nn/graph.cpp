#include "l3f/nn/graph.hpp"

#include "l3f/error.hpp"
#include "l3f/nn/kernels.hpp"

namespace l3f::nn {

template <typename T>
const typename Graph<T>::Node& Graph<T>::node(Var v) const {
    if (v.id >= nodes_.size()) throw PreconditionError("graph: invalid variable");
    return nodes_[v.id];
}

template <typename T>
typename Graph<T>::Node& Graph<T>::node(Var v) {
    if (v.id >= nodes_.size()) throw PreconditionError("graph: invalid variable");
    return nodes_[v.id];
}

template <typename T>
Var Graph<T>::constant(Tensor<T> value) {
    Node n;
    n.value = std::move(value);
    nodes_.push_back(std::move(n));
    return Var{nodes_.size() - 1};
}

template <typename T>
Var Graph<T>::variable(Tensor<T> value) {
    Node n;
    n.value = std::move(value);
    n.requires_grad = recording_;
    nodes_.push_back(std::move(n));
    return Var{nodes_.size() - 1};
}

template <typename T>
Var Graph<T>::parameter(Parameter<T>& p) {
    if (recording_ && p.grad.shape() != p.value.shape()) p.grad = Tensor<T>(p.value.shape());
    Node n;
    n.param = &p;
    n.requires_grad = recording_;
    nodes_.push_back(std::move(n));
    return Var{nodes_.size() - 1};
}

template <typename T>
const Tensor<T>& Graph<T>::value(Var v) const {
    const Node& n = node(v);
    return n.param != nullptr ? n.param->value : n.value;
}

template <typename T>
bool Graph<T>::requires_grad(Var v) const {
    return node(v).requires_grad;
}

template <typename T>
Tensor<T> Graph<T>::grad(Var v) const {
    const Node& n = node(v);
    if (n.has_grad) return n.grad;
    return Tensor<T>(value(v).shape());
}

template <typename T>
Var Graph<T>::record(Tensor<T> value, const std::vector<Var>& inputs, BackwardFn fn) {
    Node n;
    n.value = std::move(value);
    if (recording_) {
        for (Var in : inputs) n.requires_grad = n.requires_grad || node(in).requires_grad;
        if (n.requires_grad) n.backward = std::move(fn);
    }
    nodes_.push_back(std::move(n));
    return Var{nodes_.size() - 1};
}

template <typename T>
const Tensor<T>& Graph<T>::out_grad(Var self) const {
    return node(self).grad;
}

template <typename T>
Tensor<T>* Graph<T>::grad_buffer(Var v) {
    Node& n = node(v);
    if (!n.requires_grad) return nullptr;
    if (!n.has_grad) {
        n.grad = Tensor<T>(value(v).shape());
        n.has_grad = true;
    }
    return &n.grad;
}

template <typename T>
void Graph<T>::backward(Var root) {
    if (!recording_) throw PreconditionError("backward on a graph built without recording");
    if (value(root).size() != 1) {
        throw PreconditionError("backward root must be a scalar, got shape " + to_string(value(root).shape()));
    }
    for (Node& n : nodes_) {
        n.has_grad = false;
        n.grad = Tensor<T>();
    }
    if (!node(root).requires_grad) return;
    grad_buffer(root)->fill(T(1));

    for (std::size_t id = root.id + 1; id-- > 0;) {
        Node& n = nodes_[id];
        if (!n.has_grad) continue;
        if (n.backward) {
            n.backward(*this, Var{id});
        } else if (n.param != nullptr) {
            kernels::axpy(n.grad.size(), T(1), n.grad.ptr(), n.param->grad.ptr());
        }
    }
}

template <typename T>
void Graph<T>::mix_branch(std::uint64_t bits) noexcept {
    signature_ ^= bits + 0x9e3779b97f4a7c15ull + (signature_ << 6) + (signature_ >> 2);
    signature_ *= 1099511628211ull;
}

template class Graph<float>;
template class Graph<double>;

} // namespace l3f::nn
